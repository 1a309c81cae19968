"""Factorised groups G = AB and the core-factorisation machinery.

The decision procedure for core-factorisations is the greedy combined
core: in each successive quotient adjoin the product of the cores of the
two factor images, succeeding exactly when the series climbs to G. A
brute-force chief-series oracle (all normal subgroups, depth-first
cover search) double-checks the greedy verdict at small orders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import (
    CapExceeded,
    NotAProduct,
    PermGroup,
    SearchExhausted,
    Subgroup,
    intersect,
    quotient,
)
from .structure import core, covers, normal_subgroups, _cached
from .pi import PiSet, hall_conjugates, hall_subgroup, is_pi_separable, pi_part

ORACLE_CAP = 200


@dataclass
class Factorisation:
    """A certified product G = AB with the order certificate cached."""

    G: PermGroup
    A: Subgroup
    B: Subgroup
    intersection_order: int

    def __post_init__(self):
        if not hasattr(self, "_cache"):
            self._cache = {}

    @classmethod
    def trivial(cls, G: PermGroup) -> "Factorisation":
        whole = G.whole_subgroup()
        return cls(G, whole, whole, G.order)

    def is_trivial_factorisation(self) -> bool:
        return self.A.order == self.G.order or self.B.order == self.G.order


def make_factorisation(G: PermGroup, A: Subgroup, B: Subgroup,
                       cap: int | None = None) -> Factorisation:
    if A.degree != G.degree or B.degree != G.degree:
        raise NotAProduct("factors must act on the points of G")
    for g in A.generators + B.generators:
        if g not in G:
            raise NotAProduct("factor generators must lie in G")
    meet = intersect(A, B, cap)
    if A.order * B.order != G.order * meet.order:
        raise NotAProduct(
            f"|A||B| = {A.order * B.order} but |G||A n B| = {G.order * meet.order}"
        )
    A = A if isinstance(A, Subgroup) and A.ambient is G else Subgroup(G, A.generators, _checked=True)
    B = B if isinstance(B, Subgroup) and B.ambient is G else Subgroup(G, B.generators, _checked=True)
    return Factorisation(G, A, B, meet.order)


def is_prefactorised(F: Factorisation, S: PermGroup, cap: int | None = None) -> bool:
    """Whether S = (S n A)(S n B), by the product-order certificate."""
    SA = intersect(S, F.A, cap)
    SB = intersect(S, F.B, cap)
    SAB = intersect(SA, SB, cap)
    return SA.order * SB.order == S.order * SAB.order


@dataclass
class CoreStep:
    label: str  # "A", "B" or "AB"
    subgroup_order: int
    a_core_order: int | None = None
    b_core_order: int | None = None


@dataclass
class CoreSeries:
    chain: list[Subgroup]
    steps: list[CoreStep]
    terminated_at_g: bool


def _image_pair(F: Factorisation, N: Subgroup, cap: int | None):
    """The quotient map G -> G/N with the images of A and B."""
    q = quotient(F.G, N, cap=cap)
    return q, q.image_subgroup(F.A), q.image_subgroup(F.B)


def is_core_factorisation(F: Factorisation, cap: int | None = None) -> tuple[bool, CoreSeries]:
    """Greedy combined-core decision.

    Each step adjoins core(A-image) * core(B-image) in the current quotient;
    the factorisation is a core-factorisation iff the series reaches G.
    """
    if F.G.order == 1:
        raise ValueError("core-factorisations are defined for nontrivial groups")

    def build():
        chain = [F.G.trivial_subgroup()]
        steps: list[CoreStep] = []
        while chain[-1].order < F.G.order:
            N = chain[-1]
            if N.order == 1:
                Q, Abar, Bbar = F.G, F.A, F.B
                cA = core(Q, Abar, cap)
                cB = core(Q, Bbar, cap)
                joined = PermGroup.generated_by(Q.degree, cA.generators + cB.generators)
                M = Subgroup(F.G, joined.generators, _checked=True)
            else:
                q, Abar, Bbar = _image_pair(F, N, cap)
                cA = core(q.image, Abar, cap)
                cB = core(q.image, Bbar, cap)
                joined = PermGroup.generated_by(q.image.degree, cA.generators + cB.generators)
                M = q.preimage_subgroup(Subgroup(q.image, joined.generators, _checked=True))
            if M.order == N.order:
                return False, CoreSeries(chain, steps, False)
            steps.append(CoreStep("AB", M.order, cA.order, cB.order))
            chain.append(M)
        return True, CoreSeries(chain, steps, True)

    return _cached(F.G, ("is_core_fact", F.A.element_set(cap), F.B.element_set(cap)), build)


def core_series(F: Factorisation, start: str = "A", cap: int | None = None) -> CoreSeries:
    """The alternating core A-series (or B-series) of the factorisation.

    Jumps may be trivial; the series stalls once a full A,B round makes no
    progress, and terminates when it reaches G.
    """
    if start not in ("A", "B"):
        raise ValueError("start must be 'A' or 'B'")
    chain = [F.G.trivial_subgroup()]
    steps: list[CoreStep] = []
    which = start
    stalled = 0
    while chain[-1].order < F.G.order and stalled < 2:
        N = chain[-1]
        if N.order == 1:
            X = F.A if which == "A" else F.B
            c = core(F.G, X, cap)
            M = Subgroup(F.G, c.generators, _checked=True)
        else:
            q, Abar, Bbar = _image_pair(F, N, cap)
            X = Abar if which == "A" else Bbar
            c = core(q.image, X, cap)
            M = q.preimage_subgroup(c)
        stalled = stalled + 1 if M.order == N.order else 0
        steps.append(CoreStep(which, M.order))
        chain.append(M)
        which = "B" if which == "A" else "A"
    return CoreSeries(chain, steps, chain[-1].order == F.G.order)


def core_length(F: Factorisation, start: str = "A", cap: int | None = None) -> int | None:
    """Number of strictly increasing jumps when the series terminates at G."""
    series = core_series(F, start, cap)
    if not series.terminated_at_g:
        return None
    return sum(
        1 for lower, upper in zip(series.chain, series.chain[1:]) if upper.order > lower.order
    )


def core_factorisation_oracle(F: Factorisation, cap: int | None = None) -> bool:
    """Independent brute force: search all chief series for a covered one."""
    if F.G.order > ORACLE_CAP:
        raise CapExceeded(f"oracle cap is {ORACLE_CAP}, group has order {F.G.order}")
    G = F.G
    normals = normal_subgroups(G, cap)

    def minimal_overgroups(N):
        nset = N.element_set(cap)
        above = [M for M in normals if M.order > N.order and nset <= M.element_set(cap)]
        out = []
        for M in above:
            mset = M.element_set(cap)
            if not any(
                N.order < P.order < M.order and nset <= P.element_set(cap) <= mset
                for P in above
            ):
                out.append(M)
        return out

    seen_fail: set[frozenset] = set()

    def reach(N) -> bool:
        if N.order == G.order:
            return True
        key = N.element_set(cap)
        if key in seen_fail:
            return False
        for M in minimal_overgroups(N):
            if covers(F.A, M, N, cap) or covers(F.B, M, N, cap):
                if reach(M):
                    return True
        seen_fail.add(key)
        return False

    return reach(G.trivial_subgroup())


def prefactorised_hall(F: Factorisation, pi: PiSet, cap: int | None = None) -> Subgroup:
    """A Hall pi-subgroup H with H = (H n A)(H n B), Hall in each factor.

    Requires a pi-separable G; existence is then guaranteed, so running out
    of conjugate pairs raises SearchExhausted (an engine bug, never a verdict).
    """
    key = ("prefact_hall", pi.primes, F.A.element_set(cap), F.B.element_set(cap))
    if key in F.G._cache:
        return F.G._cache[key]
    if not is_pi_separable(F.G, pi, cap):
        raise ValueError("prefactorised Hall subgroups need a pi-separable group")
    target = pi_part(F.G.order, pi)
    HA = hall_subgroup(F.A, pi, cap)
    HB = hall_subgroup(F.B, pi, cap)
    if HA is None or HB is None:
        raise SearchExhausted("factors of a pi-separable group must have Hall subgroups")

    a_conjs = hall_conjugates(F.A, pi, HA, cap)
    b_conjs = hall_conjugates(F.B, pi, HB, cap)
    pairs = [(a_conjs[0], Kb) for Kb in b_conjs]
    pairs += [(Ka, Kb) for Ka in a_conjs[1:] for Kb in b_conjs]
    for Ka, Kb in pairs:
        meet = intersect(Ka, Kb, cap)
        if Ka.order * Kb.order != target * meet.order:
            continue
        joined = PermGroup.generated_by(F.G.degree, Ka.generators + Kb.generators)
        if joined.order == target:
            H = Subgroup(F.G, joined.generators, _checked=True)
            F.G._cache[key] = H
            return H
    raise SearchExhausted("no prefactorised Hall subgroup found despite the guarantee")
