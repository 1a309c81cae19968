"""Conjugacy classes, normal structure and structural predicates.

Everything here is exact and enumeration-backed: the corpus groups have
order at most 12180, so filtered enumeration beats backtrack search on
correctness-per-line. Operations cache their results on the group's
private memo dict, keyed by arguments, which keeps repeated theorem
checks on one group cheap.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .perm import Perm
from .group import (
    CapExceeded,
    PermGroup,
    Subgroup,
    _ambient_of,
    centraliser,
    centre,
    conjugate_subgroup,
    intersect,
    is_normal,
    normaliser,
    quotient,
)

DEFAULT_SUBGROUP_SEARCH_CAP = 20_000
DEFAULT_STRIP_CAP = 5_000


@dataclass(frozen=True)
class ConjClass:
    representative: Perm
    size: int
    centraliser_order: int


@dataclass
class ChiefSeries:
    chain: list[Subgroup]
    factors: list[dict]


def _cached(G: PermGroup, key, builder):
    if key not in G._cache:
        G._cache[key] = builder()
    return G._cache[key]


def conjugacy_classes(G: PermGroup, cap: int | None = None) -> list[ConjClass]:
    """All conjugacy classes, representatives in sorted element order."""

    def build():
        elems = sorted(G.elements(cap))
        index: dict[tuple[int, ...], int] = {}
        classes: list[ConjClass] = []
        gens = G.generators
        for e in elems:
            if e.images in index:
                continue
            k = len(classes)
            orbit = [e]
            index[e.images] = k
            frontier = [e]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = x ** g
                    if y.images not in index:
                        index[y.images] = k
                        orbit.append(y)
                        frontier.append(y)
            classes.append(ConjClass(e, len(orbit), G.order // len(orbit)))
        G._cache["class_index"] = index
        return classes

    return _cached(G, "conjugacy_classes", build)


def class_size(G: PermGroup, x: Perm, cap: int | None = None) -> int:
    index = G._cache.get("class_index")
    if index is None:
        conjugacy_classes(G, cap)
        index = G._cache["class_index"]
    return conjugacy_classes(G, cap)[index[x.images]].size


def class_size_map(G: PermGroup, cap: int | None = None) -> dict[tuple[int, ...], int]:
    def build():
        classes = conjugacy_classes(G, cap)
        index = G._cache["class_index"]
        return {images: classes[k].size for images, k in index.items()}

    return _cached(G, "class_size_map", build)


def normal_closure(G: PermGroup, S: Iterable[Perm]) -> Subgroup:
    gens = [s for s in S if not s.is_identity()]
    K = PermGroup.generated_by(G.degree, gens)
    while True:
        new = []
        for k in K.generators:
            for g in G.generators:
                c = k ** g
                if c not in K:
                    new.append(c)
        if not new:
            break
        K = PermGroup.generated_by(G.degree, list(K.generators) + new)
    return Subgroup(G, K.generators, _checked=True)


def core(G: PermGroup, H: PermGroup, cap: int | None = None) -> Subgroup:
    """Largest normal subgroup of G inside H (fixed point of K -> K n K^g)."""
    K: PermGroup = H
    while True:
        changed = False
        for g in G.generators:
            Kg = PermGroup(G.degree, tuple(x ** g for x in K.generators))
            if all(x in K for x in Kg.generators):
                continue
            K = intersect(K, Kg, cap)
            changed = True
        if not changed:
            return Subgroup(G, K.generators, _checked=True)


def class_closure(G: PermGroup, rep: Perm) -> Subgroup:
    """Cached normal closure of a single element's conjugacy class."""
    return _cached(G, ("class_closure", rep.images), lambda: normal_closure(G, [rep]))


def minimal_normal_overgroups(G: PermGroup, N: Subgroup,
                              cap: int | None = None) -> list[Subgroup]:
    """Normal subgroups M > N of G with nothing normal strictly between.

    These are the preimages of the minimal normal subgroups of G/N, found
    without constructing the quotient: every such M equals N<x^G> for each
    x in M outside N.
    """
    candidates: list[Subgroup] = []
    seen: set[frozenset] = set()
    nset = N.element_set(cap)
    for cls in conjugacy_classes(G, cap):
        rep = cls.representative
        if rep.images in nset:
            continue
        closure = class_closure(G, rep)
        joined = PermGroup.generated_by(G.degree, N.generators + closure.generators)
        M = Subgroup(G, joined.generators, _checked=True)
        key = M.element_set(cap)
        if key not in seen:
            seen.add(key)
            candidates.append(M)
    minimal = []
    for M in candidates:
        mset = M.element_set(cap)
        if not any(
            K.order < M.order and K.element_set(cap) <= mset for K in candidates
        ):
            minimal.append(M)
    minimal.sort(key=lambda M: (M.order, sorted(M.element_set(cap))))
    return minimal


def minimal_normal_subgroups(G: PermGroup, cap: int | None = None) -> list[Subgroup]:
    def build():
        if G.order == 1:
            return []
        return minimal_normal_overgroups(G, G.trivial_subgroup(), cap)

    return _cached(G, "minimal_normal_subgroups", build)


def chief_series(G: PermGroup, cap: int | None = None) -> ChiefSeries:
    """Deterministic chief series: repeatedly adjoin the least minimal
    normal overgroup (smallest order, then least element print)."""

    def build():
        chain = [G.trivial_subgroup()]
        factors: list[dict] = []
        while chain[-1].order < G.order:
            N = chain[-1]
            M = minimal_normal_overgroups(G, N, cap)[0]
            factors.append({"order": M.order // N.order})
            chain.append(M)
        return ChiefSeries(chain, factors)

    return _cached(G, "chief_series", build)


def cyclic_generator_reps(G: PermGroup, cap: int | None = None) -> list[Perm]:
    """The least generator of each nontrivial cyclic subgroup, sorted.

    Joining with any element equals joining with the representative of the
    cyclic subgroup it generates, so subgroup searches may extend by these
    alone.
    """

    def build():
        reps: list[Perm] = []
        skip: set[tuple[int, ...]] = set()
        for x in sorted(G.elements(cap)):
            if x.is_identity() or x.images in skip:
                continue
            reps.append(x)
            o = x.order()
            y = x
            for k in range(1, o):
                if math.gcd(k, o) == 1:
                    skip.add(y.images)
                y = y * x
        return reps

    return _cached(G, "cyclic_generator_reps", build)


def covers(U: PermGroup, V: PermGroup, W: PermGroup, cap: int | None = None) -> bool:
    """Whether U covers the section V/W, i.e. W(U n V) = V."""
    if not is_normal(V, W):
        raise ValueError("W is not normal in V")
    I = intersect(U, V, cap)
    WI = intersect(W, I, cap)
    return W.order * I.order == V.order * WI.order


def derived_subgroup(G: PermGroup) -> Subgroup:
    def build():
        comms = []
        gens = G.generators
        for a in gens:
            for b in gens:
                comms.append((~a) * (~b) * a * b)
        return normal_closure(G, comms)

    return _cached(G, "derived_subgroup", build)


def is_soluble(G: PermGroup) -> bool:
    def build():
        H: PermGroup = G
        while H.order > 1:
            D = derived_subgroup(H)
            if D.order == H.order:
                return False
            H = D
        return True

    return _cached(G, "is_soluble", build)


def sylow_subgroup(G: PermGroup, p: int, cap: int | None = None) -> Subgroup:
    """A Sylow p-subgroup by greedy normaliser growth.

    A proper p-subgroup always has a p-element in its normaliser outside
    itself, so the greedy phase is complete; the exhaustive fallback stays
    as a safety net and never returns a non-Sylow group.
    """

    def build():
        target = _p_part(G.order, p)
        if target == 1:
            return G.trivial_subgroup()
        seed = None
        for cls in conjugacy_classes(G, cap):
            o = cls.representative.order()
            if o % p == 0:
                while o % p == 0:
                    o //= p
                seed = cls.representative ** o
                break
        P = Subgroup(G, (seed,), _checked=True)
        while P.order < target:
            N = normaliser(G, P, cap)
            grown = False
            for y in sorted(N.elements(cap)):
                oy = y.order()
                if oy != 1 and _is_power_of(oy, p) and y not in P:
                    P = Subgroup(G, tuple(P.generators) + (y,), _checked=True)
                    grown = True
                    break
            if not grown:
                P = _exhaustive_p_search(G, p, target, cap)
                break
        if P.order != target:
            raise CapExceeded("sylow search failed to reach the p-part")
        return P

    return _cached(G, ("sylow", p), build)


def _exhaustive_p_search(G: PermGroup, p: int, target: int, cap: int | None) -> Subgroup:
    p_elements = [
        x for x in cyclic_generator_reps(G, cap) if _is_power_of(x.order(), p)
    ]
    frontier: list[Subgroup] = [G.trivial_subgroup()]
    seen = {frozenset()}
    while frontier:
        S = frontier.pop()
        for x in p_elements:
            if x in S:
                continue
            T = Subgroup(G, tuple(S.generators) + (x,), _checked=True)
            if not _is_power_of(T.order, p):
                continue
            key = T.element_set(cap)
            if key in seen:
                continue
            seen.add(key)
            if T.order == target:
                return T
            frontier.append(T)
    raise CapExceeded("exhaustive p-subgroup search exhausted")


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def o_p(G: PermGroup, p: int, cap: int | None = None) -> Subgroup:
    return core(G, sylow_subgroup(G, p, cap), cap)


def fitting_subgroup(G: PermGroup, cap: int | None = None) -> Subgroup:
    def build():
        gens: list[Perm] = []
        n = G.order
        for p in _prime_divisors(n):
            gens.extend(o_p(G, p, cap).generators)
        inner = PermGroup.generated_by(G.degree, gens)
        return Subgroup(G, inner.generators, _checked=True)

    return _cached(G, "fitting", build)


def socle(G: PermGroup, cap: int | None = None) -> Subgroup:
    gens: list[Perm] = []
    for M in minimal_normal_subgroups(G, cap):
        gens.extend(M.generators)
    inner = PermGroup.generated_by(G.degree, gens)
    return Subgroup(G, inner.generators, _checked=True)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def characteristic_subgroup(G: PermGroup, which: str, p: int | None = None,
                            cap: int | None = None) -> Subgroup:
    if which == "center":
        return centre(G, cap)
    if which == "derived":
        return derived_subgroup(G)
    if which == "fitting":
        return fitting_subgroup(G, cap)
    if which == "O_p":
        if p is None:
            raise ValueError("O_p needs a prime")
        return o_p(G, p, cap)
    if which == "socle":
        return socle(G, cap)
    raise ValueError(f"unknown selector {which!r}")


def is_p_nilpotent(G: PermGroup, p: int, cap: int | None = None) -> bool:
    """Whether the p'-elements form a (normal) subgroup of p'-order."""
    target = G.order // _p_part(G.order, p)
    if target == G.order:
        return True
    pprime = [x for x in G.elements(cap) if x.order() % p != 0]
    if len(pprime) != target:
        return False
    K = PermGroup.generated_by(G.degree, pprime)
    return K.order == target


def is_frobenius_with(G: PermGroup, K: PermGroup, H: PermGroup,
                      cap: int | None = None) -> bool:
    """G = K x| H with nontrivial K, H and H acting fixed-point-freely on K."""
    if K.order == 1 or H.order == 1:
        return False
    if not is_normal(G, K):
        return False
    if intersect(K, H, cap).order != 1:
        return False
    if K.order * H.order != G.order:
        return False
    identity = G.identity()
    for h in H.elements(cap):
        if h.is_identity():
            continue
        for k in K.elements(cap):
            if k.is_identity():
                continue
            if k ** h == k:
                return False
    return True


def frobenius_decomposition(G: PermGroup, cap: int | None = None):
    """First (K, H) with G Frobenius over kernel K, or None; deterministic."""
    for K in normal_subgroups(G, cap=cap):
        if K.order == 1 or K.order == G.order:
            continue
        target = G.order // K.order
        H = _complement_search(G, K, target, cap)
        if H is not None and is_frobenius_with(G, K, H, cap):
            return K, H
    return None


def _complement_search(G: PermGroup, K: PermGroup, target: int,
                       cap: int | None,
                       max_count: int = DEFAULT_SUBGROUP_SEARCH_CAP) -> Subgroup | None:
    """A subgroup H with |H| = target and H n K = 1, by ordered BFS."""
    reps = cyclic_generator_reps(G, cap)
    kset = K.element_set(cap)
    frontier = deque([G.trivial_subgroup()])
    seen = {frozenset()}
    while frontier:
        S = frontier.popleft()
        if len(seen) > max_count:
            raise CapExceeded("complement search exceeded the subgroup cap")
        sset = S.element_set(cap)
        for x in reps:
            if x.images in sset or x.images in kset:
                continue
            T = Subgroup(G, tuple(S.generators) + (x,), _checked=True)
            if target % T.order != 0:
                continue
            if intersect(T, K, cap).order != 1:
                continue
            key = T.element_set(cap)
            if key in seen:
                continue
            seen.add(key)
            if T.order == target:
                return T
            frontier.append(T)
    return None


def normal_subgroups(G: PermGroup, cap: int | None = None,
                     max_count: int = DEFAULT_SUBGROUP_SEARCH_CAP) -> list[Subgroup]:
    """Every normal subgroup, as closures of unions of conjugacy classes."""

    def build():
        reps = [c.representative for c in conjugacy_classes(G, cap)
                if not c.representative.is_identity()]
        found: dict[frozenset, Subgroup] = {}
        triv = G.trivial_subgroup()
        found[triv.element_set(cap)] = triv
        queue = [triv]
        while queue:
            N = queue.pop(0)
            if len(found) > max_count:
                raise CapExceeded("normal subgroup enumeration exceeded the cap")
            for r in reps:
                if r in N:
                    continue
                M = normal_closure(G, tuple(N.generators) + (r,))
                key = M.element_set(cap)
                if key not in found:
                    found[key] = M
                    queue.append(M)
        out = sorted(found.values(), key=lambda M: (M.order, sorted(M.element_set(cap))))
        return out

    return _cached(G, "normal_subgroups", build)


def all_subgroups(G: PermGroup, cap: int | None = None,
                  max_count: int = DEFAULT_SUBGROUP_SEARCH_CAP) -> list[Subgroup]:
    """Every subgroup, by closing under joins with cyclic representatives."""

    def build():
        reps = cyclic_generator_reps(G, cap)
        triv = G.trivial_subgroup()
        found: dict[frozenset, Subgroup] = {triv.element_set(cap): triv}
        queue = deque([triv])
        while queue:
            S = queue.popleft()
            if len(found) > max_count:
                raise CapExceeded("subgroup enumeration exceeded the cap")
            sset = S.element_set(cap)
            for x in reps:
                if x.images in sset:
                    continue
                T = Subgroup(G, tuple(S.generators) + (x,), _checked=True)
                key = T.element_set(cap)
                if key not in found:
                    found[key] = T
                    queue.append(T)
        return sorted(found.values(), key=lambda M: (M.order, sorted(M.element_set(cap))))

    return _cached(G, "all_subgroups", build)


def is_subnormal(H: PermGroup, G: PermGroup, cap: int | None = None) -> bool:
    """Subnormality via the descending normal-closure series."""
    K: PermGroup = G
    while True:
        Kn = normal_closure(K, H.generators)
        if Kn.order == K.order:
            break
        K = Kn
    return K.order == H.order and all(g in K for g in H.generators)


def strip_abelian_direct_factors(G: PermGroup, cap: int | None = None,
                                 search_cap: int = DEFAULT_STRIP_CAP):
    """A pair (D, Y) with G = D x Y, D abelian of maximal order.

    An abelian direct factor is central, so D ranges over subgroups of the
    centre and Y over normal subgroups.
    """
    if G.order > search_cap:
        raise CapExceeded(f"group order {G.order} exceeds the strip cap {search_cap}")

    def build():
        Z = centre(G, cap)
        if Z.order == 1:
            return G.trivial_subgroup(), G.whole_subgroup()
        z_subs = all_subgroups(Z, cap)
        normals = normal_subgroups(G, cap)
        best = None
        for D0 in z_subs:
            D = Subgroup(G, D0.generators, _checked=True)
            for Y in normals:
                if D.order * Y.order != G.order:
                    continue
                if intersect(D, Y, cap).order != 1:
                    continue
                key = (D.order, sorted(D.element_set(cap)), sorted(Y.element_set(cap)))
                if best is None or key[0] > best[0][0] or (key[0] == best[0][0] and key < best[0]):
                    best = (key, D, Y)
        if best is None:
            return G.trivial_subgroup(), G.whole_subgroup()
        return best[1], best[2]

    return _cached(G, "strip_abelian", build)


def is_nilpotent(G: PermGroup, cap: int | None = None) -> bool:
    return all(
        is_normal(G, sylow_subgroup(G, p, cap)) for p in _prime_divisors(G.order)
    )
