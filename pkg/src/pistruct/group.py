"""Permutation groups with deterministic base/strong-generating-set data.

All groups here are small (the corpus tops out at order 12180), so the
engine favours reproducibility and verifiability over asymptotics:
the base is chosen smallest-moved-point-first, transversals are rebuilt
by breadth-first search in a fixed order, and every oracle-style
operation fails loudly with :class:`CapExceeded` past its cap instead of
approximating.
"""

from __future__ import annotations

import math
from collections import deque
from random import Random
from typing import Iterable, Sequence

from .perm import Perm

DEFAULT_ENUMERATION_CAP = 2_000_000
DEFAULT_COSET_CAP = 100_000


class GroupError(Exception):
    pass


class DegreeMismatch(GroupError):
    pass


class CapExceeded(GroupError):
    """A deliberate resource limit was hit; callers degrade or abort."""


class NotNormal(GroupError):
    pass


class NotAProduct(GroupError):
    pass


class SearchExhausted(GroupError):
    """A search with a guaranteed hit came up empty: an engine bug."""


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}


class PermGroup:
    """Group generated by permutations of a common degree.

    The stabiliser chain is completed at construction time (deterministic
    Schreier-Sims); afterwards the instance is never mutated, apart from a
    private memo dict used by higher layers.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator of degree {g.degree} in group of degree {degree}"
                )
        self.degree = degree
        self.generators = gens
        self._levels: list[_Level] = []
        self._cache: dict = {}
        nontrivial = [g for g in gens if not g.is_identity()]
        if nontrivial:
            base_point = min(min(g.moved_points()) for g in nontrivial)
            level = _Level(base_point)
            level.gens.extend(nontrivial)
            self._levels.append(level)
            self._close()
        self._order = math.prod(len(lv.transversal) for lv in self._levels) if self._levels else 1

    # -- stabiliser chain internals -------------------------------------

    def _effective_gens(self, i: int) -> list[Perm]:
        out: list[Perm] = []
        for level in self._levels[i:]:
            out.extend(level.gens)
        return out

    def _rebuild_transversal(self, i: int) -> None:
        level = self._levels[i]
        gens = self._effective_gens(i)
        trans = {level.point: Perm.identity(self.degree)}
        queue = deque([level.point])
        while queue:
            p = queue.popleft()
            up = trans[p]
            for g in gens:
                q = g(p)
                if q not in trans:
                    trans[q] = up * g
                    queue.append(q)
        level.transversal = trans

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self._levels)):
            level = self._levels[i]
            u = level.transversal.get(g(level.point))
            if u is None:
                return g, i
            g = g * ~u
        return g, len(self._levels)

    def _close(self) -> None:
        # Fixed point of: every Schreier generator of every level sifts to
        # the identity through the deeper chain. Each added residue strictly
        # enlarges some level's group, so the outer loop terminates.
        while True:
            added = False
            i = 0
            while i < len(self._levels):
                self._rebuild_transversal(i)
                level = self._levels[i]
                gens = self._effective_gens(i)
                for p in sorted(level.transversal):
                    up = level.transversal[p]
                    for s in gens:
                        sg = up * s * ~level.transversal[s(p)]
                        if sg.is_identity():
                            continue
                        residue, j = self._sift(sg, i + 1)
                        if residue.is_identity():
                            continue
                        if j == len(self._levels):
                            self._levels.append(_Level(min(residue.moved_points())))
                        self._levels[j].gens.append(residue)
                        added = True
                i += 1
            if not added:
                return

    # -- public API ------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.point for level in self._levels)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def __contains__(self, p: Perm) -> bool:
        if not isinstance(p, Perm) or p.degree != self.degree:
            return False
        residue, _ = self._sift(p)
        return residue.is_identity()

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"<group of order {self.order} on {self.degree} points: {gens}>"

    def is_trivial(self) -> bool:
        return self._order == 1

    def is_abelian(self) -> bool:
        key = "is_abelian"
        if key not in self._cache:
            gens = self.generators
            self._cache[key] = all(
                g * h == h * g for i, g in enumerate(gens) for h in gens[i + 1 :]
            )
        return self._cache[key]

    def elements(self, cap: int | None = None) -> list[Perm]:
        """Every element exactly once, in a deterministic order."""
        cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
        if self._order > cap:
            raise CapExceeded(f"group order {self._order} exceeds cap {cap}")
        cached = self._cache.get("elements")
        if cached is None:
            elems = [Perm.identity(self.degree)]
            for level in reversed(self._levels):
                us = [level.transversal[p] for p in sorted(level.transversal)]
                elems = [e * u for e in elems for u in us]
            cached = elems
            self._cache["elements"] = cached
        return cached

    def element_set(self, cap: int | None = None) -> frozenset[tuple[int, ...]]:
        cached = self._cache.get("element_set")
        if cached is None:
            cached = frozenset(p.images for p in self.elements(cap))
            self._cache["element_set"] = cached
        return cached

    def random_element(self, rng: Random) -> Perm:
        g = Perm.identity(self.degree)
        for level in reversed(self._levels):
            pts = sorted(level.transversal)
            g = g * level.transversal[pts[rng.randrange(len(pts))]]
        return g

    def subgroup(self, generators: Iterable[Perm]) -> "Subgroup":
        return Subgroup(self, generators)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (), _checked=True)

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.generators, _checked=True)

    @staticmethod
    def generated_by(degree: int, candidates: Iterable[Perm]) -> "PermGroup":
        """Group generated by ``candidates`` with a reduced generator list.

        Skips candidates already generated so far, which keeps generator
        lists short when whole element sets are fed in (intersections,
        centralisers).
        """
        picked: list[Perm] = []
        acc = PermGroup(degree, ())
        for g in candidates:
            if not g.is_identity() and g not in acc:
                picked.append(g)
                acc = PermGroup(degree, picked)
        return acc


class Subgroup(PermGroup):
    """A group together with the ambient group it lives in."""

    def __init__(self, ambient: PermGroup, generators: Iterable[Perm] = (), _checked: bool = False):
        gens = tuple(generators)
        if not _checked:
            for g in gens:
                if g not in ambient:
                    raise GroupError(f"generator {g} lies outside the ambient group")
        super().__init__(ambient.degree, gens)
        self.ambient = ambient
        if ambient.order % self.order != 0:
            raise GroupError("subgroup order does not divide ambient order")

    def in_ambient(self, ambient: PermGroup, _checked: bool = True) -> "Subgroup":
        """The same mathematical subgroup re-rooted under another ambient."""
        return Subgroup(ambient, self.generators, _checked=_checked)


def _ambient_of(H: PermGroup) -> PermGroup:
    return H.ambient if isinstance(H, Subgroup) else H


def group_from_generators(degree: int, gens: Sequence[Perm]) -> PermGroup:
    return PermGroup(degree, gens)


def elements(G: PermGroup, cap: int | None = None) -> list[Perm]:
    return G.elements(cap)


def conjugate_subgroup(H: PermGroup, g: Perm, ambient: PermGroup | None = None) -> Subgroup:
    amb = ambient if ambient is not None else _ambient_of(H)
    return Subgroup(amb, tuple(x ** g for x in H.generators), _checked=True)


def intersect(H: PermGroup, K: PermGroup, cap: int | None = None) -> Subgroup:
    """Exact intersection by filtering the smaller group's elements."""
    if H.degree != K.degree:
        raise DegreeMismatch("intersection of groups of different degree")
    small, large = (H, K) if H.order <= K.order else (K, H)
    picked = [x for x in small.elements(cap) if x in large]
    inner = PermGroup.generated_by(H.degree, picked)
    return Subgroup(_ambient_of(H), inner.generators, _checked=True)


def centraliser(G: PermGroup, S: Iterable[Perm], cap: int | None = None) -> Subgroup:
    elems = G.elements(cap)
    gens = tuple(S)
    picked = [g for g in elems if all(g * s == s * g for s in gens)]
    inner = PermGroup.generated_by(G.degree, picked)
    return Subgroup(G, inner.generators, _checked=True)


def normaliser(G: PermGroup, H: PermGroup, cap: int | None = None) -> Subgroup:
    elems = G.elements(cap)
    hg = H.generators
    picked = [g for g in elems if all((h ** g) in H for h in hg)]
    inner = PermGroup.generated_by(G.degree, picked)
    return Subgroup(G, inner.generators, _checked=True)


def centre(G: PermGroup, cap: int | None = None) -> Subgroup:
    key = "centre"
    if key not in G._cache:
        G._cache[key] = centraliser(G, G.generators, cap)
    return G._cache[key]


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    return all((x ** g) in N for x in N.generators for g in G.generators)


class QuotientMap:
    """Faithful action of G on the right cosets of a normal subgroup.

    Since the kernel is normal, the image acts regularly on the cosets, so
    every image element has a canonical section (the representative of the
    image of the identity coset).
    """

    def __init__(self, source: PermGroup, kernel: Subgroup,
                 coset_cap: int | None = None, cap: int | None = None):
        coset_cap = DEFAULT_COSET_CAP if coset_cap is None else coset_cap
        if not is_normal(source, kernel):
            raise NotNormal("kernel is not normal in the source group")
        index = source.order // kernel.order
        if index > coset_cap:
            raise CapExceeded(f"{index} cosets exceed the coset cap {coset_cap}")
        self.source = source
        self.kernel = kernel
        kernel_elems = kernel.elements(cap)

        reps: list[Perm] = [source.identity()]
        coset_of: dict[tuple[int, ...], int] = {
            (n * reps[0]).images: 0 for n in kernel_elems
        }
        queue = deque([0])
        gens = source.generators
        while queue:
            i = queue.popleft()
            rep = reps[i]
            for g in gens:
                y = rep * g
                if y.images not in coset_of:
                    j = len(reps)
                    reps.append(y)
                    for n in kernel_elems:
                        coset_of[(n * y).images] = j
                    queue.append(j)
        if len(reps) != index:
            raise GroupError("coset enumeration disagrees with the index")
        self.reps = reps
        self._coset_of = coset_of
        image_gens = tuple(self.forward(g) for g in gens)
        self.image = PermGroup(index, image_gens) if index > 1 else PermGroup(1, ())
        if self.image.order != index:
            raise GroupError("quotient image is not regular on cosets")

    def forward(self, x: Perm) -> Perm:
        co = self._coset_of
        return Perm(co[(rep * x).images] + 1 for rep in self.reps)

    def section(self, y: Perm) -> Perm:
        """An element of the source mapping to ``y`` (regularity makes it canonical)."""
        return self.reps[y(1) - 1]

    def image_subgroup(self, S: PermGroup) -> Subgroup:
        return Subgroup(self.image, tuple(self.forward(g) for g in S.generators), _checked=True)

    def preimage_subgroup(self, T: PermGroup) -> Subgroup:
        gens = tuple(self.kernel.generators) + tuple(self.section(t) for t in T.generators)
        sub = Subgroup(self.source, gens, _checked=True)
        if sub.order != T.order * self.kernel.order:
            raise GroupError("preimage order mismatch")
        return sub


def quotient(G: PermGroup, N: Subgroup, coset_cap: int | None = None,
             cap: int | None = None) -> QuotientMap:
    return QuotientMap(G, N, coset_cap=coset_cap, cap=cap)


def multiplicative_order(k: int, n: int) -> int:
    if math.gcd(k, n) != 1:
        raise ValueError(f"{k} is not a unit modulo {n}")
    value = k % n
    order = 1
    while value != 1:
        value = (value * k) % n
        order += 1
    return order


def direct_product(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """External direct product acting on the disjoint union of the point sets."""
    d1, d2 = G1.degree, G2.degree
    degree = d1 + d2
    rest = tuple(range(d1 + 1, degree + 1))
    gens = [Perm(g.images + rest) for g in G1.generators]
    left = tuple(range(1, d1 + 1))
    gens += [Perm(left + tuple(v + d1 for v in g.images)) for g in G2.generators]
    return PermGroup(degree, gens)


def semidirect_by_power_map(n: int, k: int) -> PermGroup:
    """The group <z -> z+1, z -> k*z> on Z_n, realised on points 1..n.

    Point p stands for the residue p-1, so the shift is an n-cycle and the
    power map fixes point 1. The order is n * multiplicative_order(k, n).
    """
    if math.gcd(k, n) != 1:
        raise ValueError(f"multiplier {k} is not coprime to {n}")
    ord_k = multiplicative_order(k, n)
    shift = Perm((z + 1) % n + 1 for z in range(n))
    mult = Perm((z * k) % n + 1 for z in range(n))
    G = PermGroup(n, (shift, mult))
    if G.order != n * ord_k:
        raise GroupError("semidirect construction self-check failed")
    return G


def wreath_natural(G1: PermGroup, m: int) -> PermGroup:
    """Natural wreath product: m disjoint copies of G1 plus a cyclic block rotation."""
    if m < 2:
        raise ValueError("wreath product needs at least 2 blocks")
    d = G1.degree
    degree = d * m
    gens = []
    tail = tuple(range(d + 1, degree + 1))
    for g in G1.generators:
        gens.append(Perm(g.images + tail))
    rotation = Perm((p - 1 + d) % degree + 1 for p in range(1, degree + 1))
    gens.append(rotation)
    G = PermGroup(degree, gens)
    if G.order != G1.order ** m * m:
        raise GroupError("wreath construction self-check failed")
    return G
