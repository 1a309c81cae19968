"""Sets of primes and everything built on them.

pi-numbers, pi-elements, the largest normal pi-subgroup, the upper
pi-series and pi-length, pi-separability, Hall subgroups and their
conjugates, and pi-decomposability. Hall subgroups are found by the
standard radical/quotient induction with a seeded random complement
search before the exhaustive fallback; "none found" is a proven
nonexistence (the fallback enumerates every subgroup generated by
pi-elements), while a blown cap raises :class:`CapExceeded`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random
from typing import Iterable

from .perm import Perm
from .group import (
    CapExceeded,
    PermGroup,
    Subgroup,
    intersect,
    quotient,
)
from .structure import (
    _prime_divisors,
    class_closure,
    conjugacy_classes,
    _cached,
)

_COMPLEMENT_ATTEMPTS = 40
_COMPLEMENT_STEPS = 60
_SUBGROUP_VISIT_CAP = 200_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@dataclass(frozen=True)
class PiSet:
    """A finite ascending set of primes."""

    primes: tuple[int, ...]

    def __init__(self, primes: Iterable[int]):
        ps = tuple(sorted(set(primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def parse(cls, text: str) -> "PiSet":
        return cls(int(tok) for tok in text.split(",") if tok.strip())

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.primes) + "}"

    def is_pi_number(self, n: int) -> bool:
        if n < 1:
            raise ValueError("pi-numbers are positive")
        return all(p in self.primes for p in _prime_divisors(n))

    def is_pi_prime_number(self, n: int) -> bool:
        if n < 1:
            raise ValueError("pi-numbers are positive")
        return not any(p in self.primes for p in _prime_divisors(n))

    def pi_part(self, n: int) -> int:
        out = 1
        for p in self.primes:
            while n % p == 0:
                out *= p
                n //= p
        return out

    def complement_for(self, n: int) -> "PiSet":
        """The primes of n outside this set (pi' relative to n)."""
        return PiSet(p for p in _prime_divisors(n) if p not in self.primes)


def is_pi_number(n: int, pi: PiSet) -> bool:
    return pi.is_pi_number(n)


def pi_part(n: int, pi: PiSet) -> int:
    return pi.pi_part(n)


def is_pi_element(x: Perm, pi: PiSet) -> bool:
    return pi.is_pi_number(x.order())


def pi_elements(G: PermGroup, pi: PiSet, prime_power_only: bool = False,
                cap: int | None = None) -> list[Perm]:
    out = []
    for x in G.elements(cap):
        o = x.order()
        if not pi.is_pi_number(o):
            continue
        if prime_power_only and len(_prime_divisors(o)) > 1:
            continue
        out.append(x)
    return out


def _is_prime_power(n: int) -> bool:
    """Prime powers including 1 (class sizes of central elements qualify)."""
    return len(_prime_divisors(n)) <= 1


def o_pi(G: PermGroup, pi: PiSet, cap: int | None = None) -> Subgroup:
    """The largest normal pi-subgroup: join of the pi-group class closures."""

    def build():
        gens: list[Perm] = []
        for cls in conjugacy_classes(G, cap):
            rep = cls.representative
            if rep.is_identity() or not pi.is_pi_number(rep.order()):
                continue
            N = class_closure(G, rep)
            if pi.is_pi_number(N.order):
                gens.extend(N.generators)
        inner = PermGroup.generated_by(G.degree, gens)
        return Subgroup(G, inner.generators, _checked=True)

    return _cached(G, ("o_pi", pi.primes), build)


def o_pi_prime(G: PermGroup, pi: PiSet, cap: int | None = None) -> Subgroup:
    return o_pi(G, pi.complement_for(G.order), cap)


@dataclass
class PiSeries:
    chain: list[Subgroup]
    labels: list[str]
    pi_length: int
    reaches_g: bool


def upper_pi_series(G: PermGroup, pi: PiSet, cap: int | None = None) -> PiSeries:
    """Alternating O_pi' / O_pi pullbacks, starting with O_pi'."""

    def build():
        chain = [G.trivial_subgroup()]
        labels: list[str] = []
        want_pi = False
        stalled = 0
        while chain[-1].order < G.order and stalled < 2:
            N = chain[-1]
            if N.order == 1:
                radical = o_pi(G, pi, cap) if want_pi else o_pi_prime(G, pi, cap)
                M = radical
            else:
                q = quotient(G, N, cap=cap)
                radical = (o_pi(q.image, pi, cap) if want_pi
                           else o_pi_prime(q.image, pi, cap))
                M = q.preimage_subgroup(radical)
            labels.append("pi" if want_pi else "pi'")
            stalled = stalled + 1 if M.order == N.order else 0
            chain.append(M)
            want_pi = not want_pi
        reaches = chain[-1].order == G.order
        length = sum(
            1
            for i, lab in enumerate(labels)
            if lab == "pi" and chain[i + 1].order > chain[i].order
        )
        return PiSeries(chain, labels, length, reaches)

    return _cached(G, ("upper_pi_series", pi.primes), build)


def is_pi_separable(G: PermGroup, pi: PiSet, cap: int | None = None) -> bool:
    return upper_pi_series(G, pi, cap).reaches_g


def pi_length(G: PermGroup, pi: PiSet, cap: int | None = None) -> int:
    series = upper_pi_series(G, pi, cap)
    if not series.reaches_g:
        raise ValueError("pi-length is defined only for pi-separable groups")
    return series.pi_length


def is_pi_decomposable(G: PermGroup, pi: PiSet, cap: int | None = None) -> bool:
    return o_pi(G, pi, cap).order * o_pi_prime(G, pi, cap).order == G.order


def hall_subgroup(G: PermGroup, pi: PiSet, cap: int | None = None) -> Subgroup | None:
    """A Hall pi-subgroup, or None when provably none exists."""

    key = ("hall", pi.primes)
    if key in G._cache:
        return G._cache[key]
    target = pi.pi_part(G.order)
    if target == 1:
        result: Subgroup | None = G.trivial_subgroup()
    elif target == G.order:
        result = G.whole_subgroup()
    else:
        opp = o_pi_prime(G, pi, cap)
        if opp.order > 1:
            q = quotient(G, opp, cap=cap)
            hbar = hall_subgroup(q.image, pi, cap)
            if hbar is None:
                result = None
            else:
                htilde = q.preimage_subgroup(hbar)
                result = _complement_in(htilde, G, pi, target, cap)
        else:
            op = o_pi(G, pi, cap)
            if op.order > 1:
                q = quotient(G, op, cap=cap)
                hbar = hall_subgroup(q.image, pi, cap)
                result = None if hbar is None else q.preimage_subgroup(hbar)
            else:
                result = _exhaustive_pi_search(G, pi, target, cap)
    if result is not None and (not isinstance(result, Subgroup) or result.ambient is not G):
        result = Subgroup(G, result.generators, _checked=True)
    G._cache[key] = result
    return result


def _pi_power_part(x: Perm, pi: PiSet) -> Perm:
    """The pi-part of x: a power of x whose order is the pi-part of o(x)."""
    o = x.order()
    return x ** (o // pi.pi_part(o))


def _complement_in(H: PermGroup, G: PermGroup, pi: PiSet, target: int,
                   cap: int | None) -> Subgroup | None:
    """A pi-subgroup of order ``target`` inside H (H has a normal Hall pi'-part).

    Seeded random growth first, exhaustive search over pi-element-generated
    subgroups as the complete fallback.
    """
    rng = Random(0)
    for _ in range(_COMPLEMENT_ATTEMPTS):
        S = PermGroup(H.degree, ())
        for _ in range(_COMPLEMENT_STEPS):
            x = _pi_power_part(H.random_element(rng), pi)
            if x.is_identity() or x in S:
                continue
            T = PermGroup(H.degree, tuple(S.generators) + (x,))
            if not pi.is_pi_number(T.order):
                continue
            S = T
            if S.order == target:
                return Subgroup(G, S.generators, _checked=True)
    found = _exhaustive_pi_search(H, pi, target, cap)
    if found is None:
        return None
    return Subgroup(G, found.generators, _checked=True)


def _exhaustive_pi_search(G: PermGroup, pi: PiSet, target: int,
                          cap: int | None) -> Subgroup | None:
    """Complete BFS over subgroups generated by pi-elements."""
    from .structure import cyclic_generator_reps

    pies = [x for x in cyclic_generator_reps(G, cap) if pi.is_pi_number(x.order())]
    frontier = [G.trivial_subgroup()]
    seen = {frozenset()}
    while frontier:
        S = frontier.pop()
        if len(seen) > _SUBGROUP_VISIT_CAP:
            raise CapExceeded("pi-subgroup search exceeded the visit cap")
        for x in pies:
            if x in S:
                continue
            T = Subgroup(G, tuple(S.generators) + (x,), _checked=True)
            if not pi.is_pi_number(T.order):
                continue
            key = T.element_set(cap)
            if key in seen:
                continue
            seen.add(key)
            if T.order == target:
                return T
            frontier.append(T)
    return None


def hall_conjugates(G: PermGroup, pi: PiSet, H: Subgroup,
                    cap: int | None = None) -> list[Subgroup]:
    """The distinct conjugates of H; all of Hall_pi(G) when G is pi-separable."""
    first = H if isinstance(H, Subgroup) else Subgroup(G, H.generators)
    out = [Subgroup(G, first.generators, _checked=True)]
    seen = {out[0].element_set(cap)}
    queue = [out[0]]
    while queue:
        K = queue.pop(0)
        for g in G.generators:
            conj = Subgroup(G, tuple(x ** g for x in K.generators), _checked=True)
            key = conj.element_set(cap)
            if key not in seen:
                seen.add(key)
                out.append(conj)
                queue.append(conj)
    return out


def iterated_radical(G: PermGroup, pis: list[PiSet], cap: int | None = None) -> Subgroup:
    """O_{pi1, pi2, ...}(G): successive radical pullbacks along the labels."""
    N = G.trivial_subgroup()
    for sig in pis:
        if N.order == 1:
            N = o_pi(G, sig, cap)
        else:
            q = quotient(G, N, cap=cap)
            N = q.preimage_subgroup(o_pi(q.image, sig, cap))
    return N
