"""Hypothesis evaluators and verifiers for the statement catalogue.

Every statement check returns a structured :class:`Verdict`. Implications
are judged hypothesis-true/conclusion-false, biconditionals by equality of
the two sides; a failed check always carries at least one witness. Resource
caps and unmet preconditions abstain (reason-prefixed ``cap:`` or
``precondition:``) and never count as evidence either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .perm import Perm
from .group import (
    CapExceeded,
    PermGroup,
    Subgroup,
    centre,
    intersect,
    is_normal,
    quotient,
)
from .structure import (
    _prime_divisors,
    all_subgroups,
    chief_series,
    class_size_map,
    conjugacy_classes,
    derived_subgroup,
    fitting_subgroup,
    frobenius_decomposition,
    is_frobenius_with,
    is_nilpotent,
    is_p_nilpotent,
    is_soluble,
    normal_closure,
    strip_abelian_direct_factors,
    sylow_subgroup,
)
from .pi import (
    PiSet,
    hall_conjugates,
    hall_subgroup,
    is_pi_decomposable,
    is_pi_separable,
    iterated_radical,
    o_pi,
    pi_length,
    pi_part,
    upper_pi_series,
    _is_prime_power,
)
from .factorisation import (
    Factorisation,
    core_factorisation_oracle,
    is_core_factorisation,
    make_factorisation,
    prefactorised_hall,
    ORACLE_CAP,
)


@dataclass
class Witness:
    element: Perm | None
    class_size: int | None
    reason: str


@dataclass
class Verdict:
    statement_id: str
    hypothesis_holds: bool | None
    conclusion_holds: bool | None
    consistent: bool
    witnesses: list[Witness] = field(default_factory=list)
    abstained: bool = False
    reason: str = ""


@dataclass(frozen=True)
class Hypothesis:
    """A class-size condition: which elements, where, what arithmetic."""

    element_filter: str  # pi-prime-power | all-prime-power | pi-elements | all-elements
    scope: str  # factor-A | factor-B | union-AB | whole-G | hall-minus-center
    arithmetic: str  # pi-number | pi-prime-number | pi-or-pi-prime | prime-power | coprime-to-p
    p: int | None = None


@dataclass
class StructureCase:
    case_tag: str
    data: dict = field(default_factory=dict)


@dataclass
class CheckOptions:
    drop_core_precondition: bool = False
    cap: int | None = None
    lemgen_exhaustive_max: int = 200


_MAX_WITNESSES = 5


class _Abstain(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _Ctx:
    """Shared per-(factorisation, pi) state for the checkers."""

    def __init__(self, F: Factorisation, pi: PiSet, opts: CheckOptions):
        self.F = F
        self.G = F.G
        self.pi = pi
        self.opts = opts
        self._memo: dict = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def size(self, x: Perm) -> int:
        return class_size_map(self.G, self.opts.cap)[x.images]

    @property
    def union_ab(self) -> list[Perm]:
        def build():
            seen = set()
            out = []
            for x in sorted(self.F.A.elements(self.opts.cap)) + sorted(
                self.F.B.elements(self.opts.cap)
            ):
                if x.images not in seen:
                    seen.add(x.images)
                    out.append(x)
            return out

        return self._get("union_ab", build)

    @property
    def is_core(self) -> bool:
        verdict, _ = is_core_factorisation(self.F, self.opts.cap)
        return verdict

    @property
    def separable(self) -> bool:
        return is_pi_separable(self.G, self.pi, self.opts.cap)

    @property
    def hall_pi(self) -> Subgroup | None:
        return hall_subgroup(self.G, self.pi, self.opts.cap)

    @property
    def pi_prime(self) -> PiSet:
        return self.pi.complement_for(self.G.order)

    @property
    def hall_pi_prime(self) -> Subgroup | None:
        return hall_subgroup(self.G, self.pi_prime, self.opts.cap)

    @property
    def prefact_hall(self) -> Subgroup:
        return self._get(
            "prefact_hall", lambda: prefactorised_hall(self.F, self.pi, self.opts.cap)
        )

    @property
    def hall_meet_a(self) -> Subgroup:
        return self._get("hall_meet_a", lambda: intersect(self.prefact_hall, self.F.A, self.opts.cap))

    @property
    def hall_meet_b(self) -> Subgroup:
        return self._get("hall_meet_b", lambda: intersect(self.prefact_hall, self.F.B, self.opts.cap))

    @property
    def hall_centre(self) -> Subgroup:
        return self._get("hall_centre", lambda: centre(self.prefact_hall, self.opts.cap))

    @property
    def pi_prime_hall_conjugates(self) -> list[Subgroup]:
        def build():
            F0 = self.hall_pi_prime
            if F0 is None:
                raise _Abstain("cap: no Hall pi'-subgroup found")
            return hall_conjugates(self.G, self.pi_prime, F0, self.opts.cap)

        return self._get("pi_prime_conjugates", build)


def _scope_elements(ctx: _Ctx, scope: str) -> list[Perm]:
    if scope == "factor-A":
        return sorted(ctx.F.A.elements(ctx.opts.cap))
    if scope == "factor-B":
        return sorted(ctx.F.B.elements(ctx.opts.cap))
    if scope == "union-AB":
        return ctx.union_ab
    if scope == "whole-G":
        return sorted(ctx.G.elements(ctx.opts.cap))
    if scope == "hall-minus-center":
        if not ctx.separable:
            raise ValueError("hall-minus-center scope needs a pi-separable group")
        zset = ctx.hall_centre.element_set(ctx.opts.cap)
        seen = set()
        out = []
        for x in sorted(ctx.hall_meet_a.elements(ctx.opts.cap)) + sorted(
            ctx.hall_meet_b.elements(ctx.opts.cap)
        ):
            if x.images not in seen and x.images not in zset:
                seen.add(x.images)
                out.append(x)
        return out
    raise ValueError(f"unknown scope {scope!r}")


def _passes_filter(x: Perm, element_filter: str, pi: PiSet) -> bool:
    o = x.order()
    if element_filter == "pi-prime-power":
        return pi.is_pi_number(o) and _is_prime_power(o)
    if element_filter == "all-prime-power":
        return _is_prime_power(o)
    if element_filter == "pi-elements":
        return pi.is_pi_number(o)
    if element_filter == "all-elements":
        return True
    raise ValueError(f"unknown element filter {element_filter!r}")


def _passes_arithmetic(size: int, arithmetic: str, pi: PiSet, p: int | None) -> bool:
    if arithmetic == "pi-number":
        return pi.is_pi_number(size)
    if arithmetic == "pi-prime-number":
        return pi.is_pi_prime_number(size)
    if arithmetic == "pi-or-pi-prime":
        return pi.is_pi_number(size) or pi.is_pi_prime_number(size)
    if arithmetic == "prime-power":
        return _is_prime_power(size)
    if arithmetic == "coprime-to-p":
        if p is None:
            raise ValueError("coprime-to-p needs a prime")
        return size % p != 0
    raise ValueError(f"unknown arithmetic {arithmetic!r}")


def eval_hypothesis(F: Factorisation, pi: PiSet, hypothesis: Hypothesis,
                    opts: CheckOptions | None = None) -> tuple[bool, list[Witness]]:
    """Check the class-size condition; witnesses are the first violations."""
    ctx = _context(F, pi, opts or CheckOptions())
    return _eval(ctx, hypothesis)


def _eval(ctx: _Ctx, hypothesis: Hypothesis) -> tuple[bool, list[Witness]]:
    key = ("hyp", hypothesis)
    if key in ctx._memo:
        return ctx._memo[key]
    witnesses: list[Witness] = []
    for x in _scope_elements(ctx, hypothesis.scope):
        if not _passes_filter(x, hypothesis.element_filter, ctx.pi):
            continue
        s = ctx.size(x)
        if not _passes_arithmetic(s, hypothesis.arithmetic, ctx.pi, hypothesis.p):
            if len(witnesses) < _MAX_WITNESSES:
                witnesses.append(
                    Witness(x, s, f"|x^G| = {s} fails {hypothesis.arithmetic} for pi = {ctx.pi}")
                )
            else:
                break
    result = (not witnesses, witnesses)
    ctx._memo[key] = result
    return result


def is_class_pi_separable_group(G: PermGroup, pi: PiSet, cap: int | None = None) -> bool:
    return all(
        pi.is_pi_number(c.size) or pi.is_pi_prime_number(c.size)
        for c in conjugacy_classes(G, cap)
    )


def _sub_in(parent: PermGroup, H: PermGroup) -> Subgroup:
    return Subgroup(parent, H.generators, _checked=True)


def _dolfi_structure(X: PermGroup, pi: PiSet, cap: int | None = None) -> StructureCase:
    """Classify X (assumed stripped of abelian direct factors) a la Dolfi."""
    if X.order == 1 or pi.is_pi_number(X.order):
        return StructureCase("pi-group", {"order": X.order})
    if pi.is_pi_prime_number(X.order):
        return StructureCase("pi-prime-group", {"order": X.order})
    local_pi = PiSet(p for p in pi if X.order % p == 0)
    for sigma in (local_pi, local_pi.complement_for(X.order)):
        sigma_prime = sigma.complement_for(X.order)
        H = hall_subgroup(X, sigma, cap)
        L = hall_subgroup(X, sigma_prime, cap)
        if H is None or L is None:
            continue
        if not is_normal(X, L):
            continue
        if not H.is_abelian() or not L.is_abelian():
            continue
        O = o_pi(X, sigma, cap)
        Z = centre(X, cap)
        if O.order != Z.order or not all(g in Z for g in O.generators):
            continue
        if O.order == 1:
            Q, K, C = X, L, H
        else:
            qm = quotient(X, O, cap=cap)
            Q, K, C = qm.image, qm.image_subgroup(L), qm.image_subgroup(H)
        if not is_frobenius_with(Q, K, C, cap):
            continue
        sizes = {c.size for c in conjugacy_classes(X, cap)}
        if sizes != {1, H.order // O.order, L.order}:
            continue
        if not is_soluble(X):
            continue
        return StructureCase(
            "dolfi-frobenius",
            {
                "sigma": tuple(sigma),
                "kernel_order": L.order,
                "complement_order": H.order // O.order,
                "class_sizes": tuple(sorted(sizes)),
            },
        )
    return StructureCase("unclassified", {"order": X.order})


def dolfi_case(G: PermGroup, pi: PiSet, cap: int | None = None) -> StructureCase:
    D, Y = strip_abelian_direct_factors(G, cap)
    result = _dolfi_structure(Y, pi, cap)
    result.data["stripped_abelian_order"] = D.order
    return result


def teosilvio_factor_case(F: Factorisation, pi: PiSet, which: str,
                          opts: CheckOptions | None = None) -> StructureCase:
    """Classify a factor of a core- and class-pi-separable factorisation."""
    opts = opts or CheckOptions()
    ctx = _context(F, pi, opts)
    hyp_core = ctx.is_core
    hyp_sizes, _ = _eval(ctx, Hypothesis("all-elements", "union-AB", "pi-or-pi-prime"))
    if not (hyp_core and hyp_sizes):
        return StructureCase("unclassified", {"reason": "hypothesis not met"})
    X = F.A if which == "A" else F.B
    D, Y = strip_abelian_direct_factors(X, opts.cap)
    result = _dolfi_structure(Y, pi, opts.cap)
    result.data["stripped_abelian_order"] = D.order
    return result


def teoprime_factor_case(F: Factorisation, pi: PiSet, which: str,
                         opts: CheckOptions | None = None) -> StructureCase:
    """Prime-power class-size case analysis for one factor."""
    opts = opts or CheckOptions()
    ctx = _context(F, pi, opts)
    hyp, _ = _eval(ctx, Hypothesis("pi-elements", "union-AB", "prime-power"))
    if not hyp:
        return StructureCase("unclassified", {"reason": "hypothesis not met"})
    X = F.A if which == "A" else F.B
    return _teoprime_case_for(ctx, X)


def _teoprime_case_for(ctx: _Ctx, X: Subgroup) -> StructureCase:
    pi, cap = ctx.pi, ctx.opts.cap
    support: set[int] = set()
    for x in X.elements(cap):
        if pi.is_pi_number(x.order()):
            support.update(_prime_divisors(ctx.size(x)))
    Xpi = hall_subgroup(X, pi, cap)
    if Xpi is None:
        return StructureCase("unclassified", {"reason": "no Hall pi-subgroup in the factor"})

    if len(support) == 0:
        ok = is_pi_decomposable(X, pi, cap) and is_nilpotent(Xpi, cap) and all(
            sylow_subgroup(Xpi, p, cap).is_abelian() for p in _prime_divisors(Xpi.order)
        )
        tag = "case-1b" if ok else "unclassified"
        return StructureCase(tag, {"support": ()})

    if len(support) == 1:
        (q,) = support
        if q not in pi:
            ok = Xpi.is_abelian()
            if ok:
                Oq = o_pi(ctx.G, PiSet([q]), cap)
                T = PermGroup.generated_by(ctx.G.degree, Xpi.generators + Oq.generators)
                ok = all((t ** g) in T for t in T.generators for g in X.generators)
            return StructureCase("case-1a" if ok else "unclassified",
                                 {"support": (q,), "q": q})
        ok = is_pi_decomposable(X, pi, cap) and is_nilpotent(Xpi, cap) and all(
            sylow_subgroup(Xpi, p, cap).is_abelian()
            for p in _prime_divisors(Xpi.order)
            if p != q
        )
        return StructureCase("case-1b" if ok else "unclassified",
                             {"support": (q,), "q": q})

    if len(support) == 2:
        if not all(p in pi for p in support):
            return StructureCase("unclassified",
                                 {"support": tuple(sorted(support)),
                                  "reason": "support not inside pi"})
        if not is_pi_decomposable(X, pi, cap):
            return StructureCase("unclassified",
                                 {"support": tuple(sorted(support)),
                                  "reason": "factor not pi-decomposable"})
        Zx = centre(Xpi, cap)
        Q = Xpi if Zx.order == 1 else quotient(Xpi, Zx, cap=cap).image
        found = frobenius_decomposition(Q, cap)
        if found is None:
            return StructureCase("unclassified",
                                 {"support": tuple(sorted(support)),
                                  "reason": "Hall pi-subgroup mod centre is not Frobenius"})
        K, C = found
        kp = _prime_divisors(K.order)
        cp = _prime_divisors(C.order)
        ok = (
            K.is_abelian()
            and len(kp) == 1
            and len(cp) == 1
            and {kp[0], cp[0]} == support
        )
        if not ok:
            return StructureCase("unclassified",
                                 {"support": tuple(sorted(support)),
                                  "reason": "kernel/complement orders mismatch"})
        return StructureCase(
            "case-2",
            {"support": tuple(sorted(support)), "q": kp[0], "r": cp[0],
             "kernel_order": K.order, "complement_order": C.order},
        )

    return StructureCase("unclassified",
                         {"support": tuple(sorted(support)),
                          "reason": "more than two primes in the class-size support"})


# ---------------------------------------------------------------------------
# verdict helpers


def _abstained(statement_id: str, reason: str) -> Verdict:
    return Verdict(statement_id, None, None, True, [], abstained=True, reason=reason)


def _biconditional(statement_id: str, hyp: bool, concl: bool,
                   witnesses: list[Witness], extra_ok: bool = True,
                   extra_witnesses: list[Witness] | None = None) -> Verdict:
    consistent = (hyp == concl) and extra_ok
    wits = []
    if hyp != concl:
        wits.extend(witnesses or [Witness(None, None, "biconditional sides disagree")])
    if not extra_ok:
        wits.extend(extra_witnesses or [Witness(None, None, "side conclusion failed")])
    return Verdict(statement_id, hyp, concl, consistent, wits)


def _implication(statement_id: str, hyp: bool, concl: bool,
                 witnesses: list[Witness]) -> Verdict:
    consistent = (not hyp) or concl
    wits = witnesses if not consistent else []
    if not consistent and not wits:
        wits = [Witness(None, None, "hypothesis holds but the conclusion fails")]
    return Verdict(statement_id, hyp, concl, consistent, wits)


def _centralises_every(ctx: _Ctx, S: Subgroup) -> bool:
    """Whether S centralises every Hall pi'-subgroup (via the conjugate orbit)."""
    for Fsub in ctx.pi_prime_hall_conjugates:
        for s in S.generators:
            for f in Fsub.generators:
                if s * f != f * s:
                    return False
    return True


def _contained_in(S: PermGroup, T: PermGroup) -> bool:
    return all(g in T for g in S.generators)


# ---------------------------------------------------------------------------
# statement checkers


def _chk_thm_a1(ctx: _Ctx) -> Verdict:
    if ctx.hall_pi is None:
        return _abstained("THM-A1", "precondition: no Hall pi-subgroup")
    if not ctx.opts.drop_core_precondition and not ctx.is_core:
        return _abstained("THM-A1", "precondition: not a core-factorisation")
    hyp, wits = _eval(ctx, Hypothesis("pi-prime-power", "union-AB", "pi-number"))
    concl = is_pi_decomposable(ctx.G, ctx.pi, ctx.opts.cap)
    return _biconditional("THM-A1", hyp, concl, wits)


def _chk_thm_a2(ctx: _Ctx) -> Verdict:
    if ctx.hall_pi is None:
        return _abstained("THM-A2", "precondition: no Hall pi-subgroup")
    if not ctx.opts.drop_core_precondition and not ctx.is_core:
        return _abstained("THM-A2", "precondition: not a core-factorisation")
    hyp, wits = _eval(ctx, Hypothesis("all-prime-power", "union-AB", "pi-number"))
    decomp = is_pi_decomposable(ctx.G, ctx.pi, ctx.opts.cap)
    concl = decomp and o_pi(ctx.G, ctx.pi_prime, ctx.opts.cap).is_abelian()
    return _biconditional("THM-A2", hyp, concl, wits)


def _chk_cor_zgs(ctx: _Ctx) -> Verdict:
    tctx = _context(Factorisation.trivial(ctx.G), ctx.pi, ctx.opts)
    if tctx.hall_pi is None:
        return _abstained("COR-ZGS", "precondition: no Hall pi-subgroup")
    hyp, wits = _eval(tctx, Hypothesis("pi-prime-power", "whole-G", "pi-number"))
    concl = is_pi_decomposable(ctx.G, ctx.pi, ctx.opts.cap)
    return _biconditional("COR-ZGS", hyp, concl, wits)


def _chk_prop_piprime(ctx: _Ctx) -> Verdict:
    if not ctx.separable:
        return _abstained("PROP-PIPRIME", "precondition: not pi-separable")
    hyp, wits = _eval(ctx, Hypothesis("pi-prime-power", "union-AB", "pi-prime-number"))
    hall = ctx.hall_pi
    concl = hall is not None and hall.is_abelian()
    extra_ok = True
    extra = []
    if hyp and pi_length(ctx.G, ctx.pi, ctx.opts.cap) > 1:
        extra_ok = False
        extra = [Witness(None, None, "pi-length exceeds 1 under the hypothesis")]
    return _biconditional("PROP-PIPRIME", hyp, concl, wits, extra_ok, extra)


def _chk_prop_pprime(ctx: _Ctx) -> Verdict:
    if not ctx.separable:
        return _abstained("PROP-PPRIME", "precondition: not pi-separable")
    hall = ctx.hall_pi
    any_hyp = False
    all_ok = True
    wits: list[Witness] = []
    from .group import normaliser

    norm_indices = None
    for p in _prime_divisors(ctx.G.order):
        hyp_p, _ = _eval(ctx, Hypothesis("pi-prime-power", "union-AB", "coprime-to-p", p=p))
        if not hyp_p:
            continue
        any_hyp = True
        if norm_indices is None:
            conjs = hall_conjugates(ctx.G, ctx.pi, hall, ctx.opts.cap)
            norm_indices = [
                ctx.G.order // normaliser(ctx.G, H, ctx.opts.cap).order for H in conjs
            ]
        if not any(idx % p != 0 for idx in norm_indices):
            all_ok = False
            wits.append(Witness(None, None,
                                f"no Sylow {p}-subgroup normalises a Hall pi-subgroup"))
    return _implication("PROP-PPRIME", any_hyp, all_ok, wits)


def _chk_lem_gen(ctx: _Ctx) -> Verdict:
    G = ctx.G
    cap = ctx.opts.cap
    if G.order <= ctx.opts.lemgen_exhaustive_max:
        subs = [S for S in all_subgroups(G, cap) if S.order < G.order]
    else:
        subs = [S for S in (ctx.F.A, ctx.F.B) if S.order < G.order]
    if not subs:
        return _abstained("LEM-GEN", "precondition: no proper subgroup to test")
    gset = G.element_set(cap)
    wits = []
    ok = True
    for H in subs:
        hset = H.element_set(cap)
        outside = [Perm(img) for img in sorted(gset - hset)]
        K = PermGroup.generated_by(G.degree, outside)
        if K.order != G.order:
            ok = False
            wits.append(Witness(None, None,
                                f"complement of subgroup of order {H.order} generates only {K.order}"))
    return _implication("LEM-GEN", True, ok, wits)


def _chk_lem_bk_sup(ctx: _Ctx) -> Verdict:
    H = ctx.hall_pi
    if H is None or H.is_abelian():
        return _implication("LEM-BK-SUP", False, True, [])
    zset = centre(H, ctx.opts.cap).element_set(ctx.opts.cap)
    hyp = True
    for x in H.elements(ctx.opts.cap):
        if x.images in zset:
            continue
        if not ctx.pi.is_pi_number(ctx.size(x)):
            hyp = False
            break
    concl = is_pi_decomposable(ctx.G, ctx.pi, ctx.opts.cap)
    return _implication("LEM-BK-SUP", hyp, concl, [])


def _noncentral_conditions(ctx: _Ctx) -> tuple[dict, dict]:
    """Per-factor: is H n X central in H / does it centralise every Hall pi'?"""
    central = {}
    centralises = {}
    Z = ctx.hall_centre
    for which, HX in (("A", ctx.hall_meet_a), ("B", ctx.hall_meet_b)):
        central[which] = all(g in Z for g in HX.generators)
        centralises[which] = _centralises_every(ctx, HX)
    return central, centralises


def _chk_thm_noncentral(ctx: _Ctx) -> Verdict:
    if not ctx.is_core:
        return _abstained("THM-NONCENTRAL", "precondition: not a core-factorisation")
    if not ctx.separable:
        return _abstained("THM-NONCENTRAL", "precondition: not pi-separable")
    H = ctx.prefact_hall
    if H.is_abelian():
        return _abstained("THM-NONCENTRAL", "precondition: Hall pi-subgroup is abelian")
    hyp, wits = _eval(ctx, Hypothesis("all-elements", "hall-minus-center", "pi-number"))
    central, centralises = _noncentral_conditions(ctx)
    concl = all(central[w] or centralises[w] for w in ("A", "B"))
    extra_ok = True
    extra: list[Witness] = []
    for which in ("A", "B"):
        X = ctx.F.A if which == "A" else ctx.F.B
        if central[which]:
            if not is_pi_separable(X, ctx.pi, ctx.opts.cap) or pi_length(X, ctx.pi, ctx.opts.cap) > 1:
                extra_ok = False
                extra.append(Witness(None, None, f"factor {which}: pi-length exceeds 1"))
        elif centralises[which]:
            if not is_pi_decomposable(X, ctx.pi, ctx.opts.cap):
                extra_ok = False
                extra.append(Witness(None, None, f"factor {which}: not pi-decomposable"))
    return _biconditional("THM-NONCENTRAL", hyp, concl, wits, extra_ok, extra)


def _chk_thm_b(ctx: _Ctx) -> Verdict:
    if not ctx.is_core:
        return _abstained("THM-B", "precondition: not a core-factorisation")
    if not ctx.separable:
        return _abstained("THM-B", "precondition: not pi-separable")
    hyp = True
    wits: list[Witness] = []
    for which, HX in (("A", ctx.hall_meet_a), ("B", ctx.hall_meet_b)):
        for x in HX.elements(ctx.opts.cap):
            s = ctx.size(x)
            if not (ctx.pi.is_pi_number(s) or ctx.pi.is_pi_prime_number(s)):
                hyp = False
                if len(wits) < _MAX_WITNESSES:
                    wits.append(Witness(x, s, f"mixed class size in H n {which}"))
    central, centralises = _noncentral_conditions(ctx)
    concl = all(central[w] or centralises[w] for w in ("A", "B"))
    extra_ok = True
    extra: list[Witness] = []
    if hyp:
        for which, HX in (("A", ctx.hall_meet_a), ("B", ctx.hall_meet_b)):
            X = ctx.F.A if which == "A" else ctx.F.B
            all_piprime = all(
                ctx.pi.is_pi_prime_number(ctx.size(x)) for x in HX.elements(ctx.opts.cap)
            )
            all_pi = all(
                ctx.pi.is_pi_number(ctx.size(x)) for x in HX.elements(ctx.opts.cap)
            )
            if central[which] != all_piprime:
                extra_ok = False
                extra.append(Witness(None, None, f"(a) biconditional fails for factor {which}"))
            if central[which] and (
                not is_pi_separable(X, ctx.pi, ctx.opts.cap)
                or pi_length(X, ctx.pi, ctx.opts.cap) > 1
            ):
                extra_ok = False
                extra.append(Witness(None, None, f"(a) pi-length exceeds 1 for factor {which}"))
            if centralises[which] != all_pi:
                extra_ok = False
                extra.append(Witness(None, None, f"(b) biconditional fails for factor {which}"))
            if centralises[which] and not is_pi_decomposable(X, ctx.pi, ctx.opts.cap):
                extra_ok = False
                extra.append(Witness(None, None, f"(b) factor {which} not pi-decomposable"))
    return _biconditional("THM-B", hyp, concl, wits, extra_ok, extra)


def _chk_cor_c(ctx: _Ctx) -> Verdict:
    if not ctx.separable:
        return _abstained("COR-C", "precondition: not pi-separable")
    tctx = _context(Factorisation.trivial(ctx.G), ctx.pi, ctx.opts)
    hyp, wits = _eval(tctx, Hypothesis("pi-elements", "whole-G", "pi-or-pi-prime"))
    hall = ctx.hall_pi
    concl = is_pi_decomposable(ctx.G, ctx.pi, ctx.opts.cap) or (
        hall is not None
        and hall.is_abelian()
        and pi_length(ctx.G, ctx.pi, ctx.opts.cap) <= 1
    )
    return _biconditional("COR-C", hyp, concl, wits)


def _chk_thm_dolfi(ctx: _Ctx) -> Verdict:
    lhs = is_class_pi_separable_group(ctx.G, ctx.pi, ctx.opts.cap)
    case = dolfi_case(ctx.G, ctx.pi, ctx.opts.cap)
    rhs = case.case_tag != "unclassified"
    wits = [Witness(None, None, f"dolfi classification = {case.case_tag}")] if lhs != rhs else []
    return _biconditional("THM-DOLFI", lhs, rhs, wits)


def _class_pi_separable_factorisation(ctx: _Ctx) -> tuple[bool, list[Witness]]:
    return _eval(ctx, Hypothesis("all-elements", "union-AB", "pi-or-pi-prime"))


def _chk_prop_sep_crit(ctx: _Ctx) -> Verdict:
    sizes_ok, wits = _class_pi_separable_factorisation(ctx)
    hyp = ctx.is_core and sizes_ok
    concl = ctx.separable
    return _implication("PROP-SEP-CRIT", hyp, concl, [])


def _chk_thm_csf(ctx: _Ctx) -> Verdict:
    sizes_ok, _ = _class_pi_separable_factorisation(ctx)
    hyp = ctx.is_core and sizes_ok
    if not hyp:
        return _implication("THM-CSF", False, True, [])
    wits: list[Witness] = []
    ok = True
    for which in ("A", "B"):
        case = teosilvio_factor_case(ctx.F, ctx.pi, which, ctx.opts)
        if case.case_tag == "unclassified":
            ok = False
            wits.append(Witness(None, None, f"factor {which} unclassified: {case.data}"))
    for which, X in (("A", ctx.F.A), ("B", ctx.F.B)):
        if not is_class_pi_separable_group(X, ctx.pi, ctx.opts.cap):
            ok = False
            wits.append(Witness(None, None, f"factor {which} is not class-pi-separable"))
    return _implication("THM-CSF", hyp, ok, wits)


def _chk_lem_bf(ctx: _Ctx) -> Verdict:
    single_prime = len(ctx.pi.primes) == 1
    if not ctx.separable and not single_prime:
        return _abstained("LEM-BF", "precondition: not pi-separable")
    opipp = iterated_radical(ctx.G, [ctx.pi, ctx.pi_prime], ctx.opts.cap)
    hyp = False
    ok = True
    wits: list[Witness] = []
    for cls in conjugacy_classes(ctx.G, ctx.opts.cap):
        if not ctx.pi.is_pi_number(cls.size):
            continue
        hyp = True
        x = cls.representative
        N = normal_closure(ctx.G, [x])
        if not ctx.pi.is_pi_number(derived_subgroup(N).order):
            ok = False
            wits.append(Witness(x, cls.size, "derived subgroup of <x^G> is not a pi-group"))
        if x not in opipp:
            ok = False
            wits.append(Witness(x, cls.size, "x lies outside O_{pi,pi'}(G)"))
    return _implication("LEM-BF", hyp, ok, wits)


def _chk_lem_ito(ctx: _Ctx) -> Verdict:
    sizes = sorted({c.size for c in conjugacy_classes(ctx.G, ctx.opts.cap)})
    primes = sorted({p for s in sizes for p in _prime_divisors(s)})
    hyp = False
    ok = True
    wits: list[Witness] = []
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if not any(s % p == 0 for s in sizes) or not any(s % q == 0 for s in sizes):
                continue
            if any(s % (p * q) == 0 for s in sizes):
                continue
            hyp = True
            if not (is_p_nilpotent(ctx.G, p, ctx.opts.cap)
                    or is_p_nilpotent(ctx.G, q, ctx.opts.cap)):
                ok = False
                wits.append(Witness(None, None, f"neither {p}- nor {q}-nilpotent"))
    return _implication("LEM-ITO", hyp, ok, wits)


def _chk_prop_pbaer(ctx: _Ctx) -> Verdict:
    any_hyp = False
    ok = True
    wits: list[Witness] = []
    for p in _prime_divisors(ctx.G.order):
        p_elements = [x for x in ctx.union_ab if set(_prime_divisors(x.order())) <= {p}]
        if not all(_is_prime_power(ctx.size(x)) for x in p_elements):
            continue
        any_hyp = True
        P = sylow_subgroup(ctx.G, p, ctx.opts.cap)
        Fit = fitting_subgroup(ctx.G, ctx.opts.cap)
        T = PermGroup.generated_by(ctx.G.degree, P.generators + Fit.generators)
        if not is_normal(ctx.G, T):
            ok = False
            wits.append(Witness(None, None, f"P F(G) is not normal for p = {p}"))
        for which, X in (("A", ctx.F.A), ("B", ctx.F.B)):
            support: set[int] = set()
            for x in X.elements(ctx.opts.cap):
                if set(_prime_divisors(x.order())) <= {p}:
                    support.update(_prime_divisors(ctx.size(x)))
            if len(support) > 1:
                ok = False
                wits.append(Witness(None, None,
                                    f"p = {p}: several primes {sorted(support)} in factor {which}"))
    return _implication("PROP-PBAER", any_hyp, ok, wits)


def _chk_lem_bk_pp(ctx: _Ctx) -> Verdict:
    caps = ctx.opts.cap
    sizes = class_size_map(ctx.G, caps)
    candidates = [
        y for y in ctx.G.elements(caps)
        if sizes[y.images] > 1
        and ctx.pi.is_pi_number(y.order())
        and _is_prime_power(sizes[y.images])
    ]
    reps = [
        c.representative for c in conjugacy_classes(ctx.G, caps)
        if c.size > 1 and ctx.pi.is_pi_number(c.representative.order())
        and _is_prime_power(c.size)
    ]
    Opi = o_pi(ctx.G, ctx.pi, caps)
    hyp = False
    ok = True
    wits: list[Witness] = []
    for x in reps:
        sx = sizes[x.images]
        for y in candidates:
            sy = sizes[y.images]
            if sy == sx:
                continue
            sxy = sizes[(x * y).images]
            if not _is_prime_power(sxy) or sxy == 1:
                continue
            hyp = True
            expected = max(sx, sy)
            prime = _prime_divisors(expected)
            good = (
                sxy == expected
                and len(prime) == 1
                and prime[0] in ctx.pi
                and all(g in Opi for g in normal_closure(ctx.G, [x, y]).generators)
            )
            if not good:
                ok = False
                if len(wits) < _MAX_WITNESSES:
                    wits.append(Witness(x * y, sxy,
                                        f"pair sizes ({sx},{sy}) give product size {sxy}"))
    return _implication("LEM-BK-PP", hyp, ok, wits)


def _chk_thm_d(ctx: _Ctx) -> Verdict:
    if not ctx.is_core:
        return _abstained("THM-D", "precondition: not a core-factorisation")
    hyp, wits = _eval(ctx, Hypothesis("pi-elements", "union-AB", "prime-power"))
    if not hyp:
        return _implication("THM-D", False, True, [])
    ok = ctx.separable and pi_length(ctx.G, ctx.pi, ctx.opts.cap) <= 1
    extra: list[Witness] = []
    if not ok:
        extra.append(Witness(None, None, "not pi-separable of pi-length at most 1"))
    for which in ("A", "B"):
        case = teoprime_factor_case(ctx.F, ctx.pi, which, ctx.opts)
        if case.case_tag == "unclassified":
            ok = False
            extra.append(Witness(None, None, f"factor {which} unclassified: {case.data}"))
    return _implication("THM-D", hyp, ok, extra)


def _chk_cor_d(ctx: _Ctx) -> Verdict:
    tctx = _context(Factorisation.trivial(ctx.G), ctx.pi, ctx.opts)
    hyp, _ = _eval(tctx, Hypothesis("pi-elements", "whole-G", "prime-power"))
    if not hyp:
        return _implication("COR-D", False, True, [])
    pi, cap = ctx.pi, ctx.opts.cap
    G = ctx.G
    support: set[int] = set()
    for cls in conjugacy_classes(G, cap):
        if pi.is_pi_number(cls.representative.order()):
            support.update(_prime_divisors(cls.size))
    ok = True
    wits: list[Witness] = []
    if not ctx.separable or pi_length(G, pi, cap) > 1:
        ok = False
        wits.append(Witness(None, None, "pi-length exceeds 1"))
    H = ctx.hall_pi
    if H is None:
        return _abstained("COR-D", "cap: no Hall pi-subgroup")

    # reverse direction of clause (b): the Frobenius structure appears iff
    # exactly two primes show up in the support
    rb = False
    if is_pi_decomposable(G, pi, cap):
        Zh = centre(H, cap)
        Q = H if Zh.order == 1 else quotient(H, Zh, cap=cap).image
        if Q.order > 1:
            found = frobenius_decomposition(Q, cap)
            if found is not None:
                K, C = found
                kp, cp = _prime_divisors(K.order), _prime_divisors(C.order)
                rb = (K.is_abelian() and len(kp) == 1 and len(cp) == 1
                      and kp[0] in pi and cp[0] in pi)
    if rb != (len(support) == 2):
        ok = False
        wits.append(Witness(None, None, "(b) biconditional fails"))

    if len(support) == 0:
        if not (H.is_abelian() and is_pi_decomposable(G, pi, cap)):
            ok = False
            wits.append(Witness(None, None, "central pi-elements but no decomposition"))
    elif len(support) == 1:
        (q,) = support
        if (q not in pi) != H.is_abelian():
            ok = False
            wits.append(Witness(None, None, "(a)(1) biconditional fails"))
        if q not in pi:
            Oq = o_pi(G, PiSet([q]), cap)
            T = PermGroup.generated_by(G.degree, H.generators + Oq.generators)
            if not is_normal(G, T):
                ok = False
                wits.append(Witness(None, None, "H O_q(G) is not normal"))
        else:
            good = is_pi_decomposable(G, pi, cap) and is_nilpotent(H, cap) and all(
                sylow_subgroup(H, p, cap).is_abelian()
                for p in _prime_divisors(H.order)
                if p != q
            )
            if not good:
                ok = False
                wits.append(Witness(None, None, "(a)(2) structure fails"))
    elif len(support) == 2:
        if not all(p in pi for p in support):
            ok = False
            wits.append(Witness(None, None, "(b) support escapes pi"))
        if not is_pi_decomposable(G, pi, cap):
            ok = False
            wits.append(Witness(None, None, "(b) not pi-decomposable"))
    else:
        ok = False
        wits.append(Witness(None, None, f"support {sorted(support)} has size > 2"))
    return _implication("COR-D", True, ok, wits)


def _chk_lem_wielandt(ctx: _Ctx) -> Verdict:
    H = ctx.hall_pi
    if H is None:
        return _implication("LEM-WIELANDT", False, True, [])
    Opi = o_pi(ctx.G, ctx.pi, ctx.opts.cap)
    ok = True
    wits: list[Witness] = []
    for x in H.elements(ctx.opts.cap):
        if ctx.pi.is_pi_number(ctx.size(x)) and x not in Opi:
            ok = False
            if len(wits) < _MAX_WITNESSES:
                wits.append(Witness(x, ctx.size(x), "pi-number class size outside O_pi"))
    return _implication("LEM-WIELANDT", True, ok, wits)


def _chk_lem_sep(ctx: _Ctx) -> Verdict:
    if ctx.hall_pi is None:
        return _implication("LEM-SEP", False, True, [])
    hyp, _ = _eval(ctx, Hypothesis("pi-prime-power", "union-AB", "pi-number"))
    if not hyp:
        return _implication("LEM-SEP", False, True, [])
    Opi = o_pi(ctx.G, ctx.pi, ctx.opts.cap)
    concl = Opi.order == pi_part(ctx.G.order, ctx.pi) and ctx.separable
    wits = [] if concl else [Witness(None, None, "O_pi(G) is not a Hall pi-subgroup")]
    return _implication("LEM-SEP", True, concl, wits)


def _chk_lem_div(ctx: _Ctx) -> Verdict:
    G = ctx.G
    cap = ctx.opts.cap
    ok = True
    wits: list[Witness] = []
    series = chief_series(G, cap)
    for N in series.chain[1:-1]:
        for cls in conjugacy_classes(N, cap):
            x = cls.representative
            if ctx.size(x) % cls.size != 0:
                ok = False
                wits.append(Witness(x, cls.size, "|x^N| does not divide |x^G|"))
        q = quotient(G, N, cap=cap)
        for cls in conjugacy_classes(G, cap):
            img = q.forward(cls.representative)
            if cls.size % class_size_map(q.image, cap)[img.images] != 0:
                ok = False
                wits.append(Witness(cls.representative, cls.size,
                                    "quotient class size does not divide |x^G|"))
    return _implication("LEM-DIV", True, ok, wits)


def _chk_lem_prefact(ctx: _Ctx) -> Verdict:
    if not ctx.separable:
        return _abstained("LEM-PREFACT", "precondition: not pi-separable")
    H = ctx.prefact_hall
    HA, HB = ctx.hall_meet_a, ctx.hall_meet_b
    meet = intersect(HA, HB, ctx.opts.cap)
    ok = (
        H.order == pi_part(ctx.G.order, ctx.pi)
        and HA.order == pi_part(ctx.F.A.order, ctx.pi)
        and HB.order == pi_part(ctx.F.B.order, ctx.pi)
        and HA.order * HB.order == H.order * meet.order
    )
    wits = [] if ok else [Witness(None, None, "prefactorised Hall contract violated")]
    if ok and ctx.is_core and H.order > 1:
        FH = make_factorisation(H, _sub_in(H, HA), _sub_in(H, HB), ctx.opts.cap)
        inner, _ = is_core_factorisation(FH, ctx.opts.cap)
        if not inner:
            ok = False
            wits = [Witness(None, None, "induced Hall factorisation is not core")]
    return _implication("LEM-PREFACT", True, ok, wits)


def _chk_lem_core_char(ctx: _Ctx) -> Verdict:
    if ctx.G.order > ORACLE_CAP:
        return _abstained("LEM-CORE-CHAR", f"cap: oracle limited to order {ORACLE_CAP}")
    greedy = ctx.is_core
    brute = core_factorisation_oracle(ctx.F, ctx.opts.cap)
    wits = [] if greedy == brute else [Witness(None, None, "greedy and oracle disagree")]
    return _biconditional("LEM-CORE-CHAR", greedy, brute, wits)


def _chk_lem_quot(ctx: _Ctx) -> Verdict:
    hyp = ctx.is_core
    if not hyp:
        return _implication("LEM-QUOT", False, True, [])
    _, series = is_core_factorisation(ctx.F, ctx.opts.cap)
    ok = True
    wits: list[Witness] = []
    for M in series.chain:
        if M.order in (1, ctx.G.order):
            continue
        q = quotient(ctx.G, M, cap=ctx.opts.cap)
        F2 = make_factorisation(
            q.image, q.image_subgroup(ctx.F.A), q.image_subgroup(ctx.F.B), ctx.opts.cap
        )
        inner, _ = is_core_factorisation(F2, ctx.opts.cap)
        if not inner:
            ok = False
            wits.append(Witness(None, None,
                                f"quotient by order-{M.order} term is not core"))
    return _implication("LEM-QUOT", hyp, ok, wits)


def _chk_rem_iv(ctx: _Ctx) -> Verdict:
    if not ctx.separable:
        return _abstained("REM-IV", "precondition: not pi-separable")
    H = ctx.hall_pi
    L = ctx.hall_pi_prime
    if H is None or L is None:
        return _abstained("REM-IV", "cap: Hall subgroup not found")
    if ctx.G.order == 1:
        return _abstained("REM-IV", "precondition: trivial group")
    F2 = make_factorisation(ctx.G, H, L, ctx.opts.cap)
    inner, _ = is_core_factorisation(F2, ctx.opts.cap)
    wits = [] if inner else [Witness(None, None, "Hall pair is not a core-factorisation")]
    return _implication("REM-IV", True, inner, wits)


STATEMENTS: dict[str, tuple[str, callable]] = {
    "THM-A1": ("pi-number class sizes of prime power order pi-elements in the factors"
               " characterise pi-decomposability", _chk_thm_a1),
    "THM-A2": ("adding all prime power order elements forces an abelian Hall"
               " pi'-subgroup as well", _chk_thm_a2),
    "COR-ZGS": ("the trivial-factorisation specialisation of THM-A1", _chk_cor_zgs),
    "PROP-PIPRIME": ("pi'-number class sizes characterise abelian Hall pi-subgroups",
                     _chk_prop_piprime),
    "PROP-PPRIME": ("a prime p avoiding the class sizes yields a Sylow p-subgroup"
                    " normalising a Hall pi-subgroup", _chk_prop_pprime),
    "LEM-GEN": ("a group is generated by the complement of any proper subgroup",
                _chk_lem_gen),
    "LEM-BK-SUP": ("pi-number class sizes off the Hall centre force"
                   " pi-decomposability", _chk_lem_bk_sup),
    "THM-NONCENTRAL": ("the non-central Hall-intersection dichotomy", _chk_thm_noncentral),
    "THM-B": ("pi-or-pi'-number class sizes in the Hall intersections: the full"
              " dichotomy with clauses (a) and (b)", _chk_thm_b),
    "COR-C": ("the unfactorised pi-or-pi' characterisation", _chk_cor_c),
    "THM-DOLFI": ("class-pi-separable groups are exactly the classified ones",
                  _chk_thm_dolfi),
    "PROP-SEP-CRIT": ("core- plus class-pi-separable factorisations are pi-separable",
                      _chk_prop_sep_crit),
    "THM-CSF": ("factors of a core- and class-pi-separable factorisation are"
                " class-pi-separable and classified", _chk_thm_csf),
    "LEM-BF": ("pi-number class size puts the class closure's derived subgroup in"
               " the pi-world", _chk_lem_bf),
    "LEM-ITO": ("two isolated class-size primes force p- or q-nilpotency", _chk_lem_ito),
    "PROP-PBAER": ("prime power class sizes of p-elements in the factors", _chk_prop_pbaer),
    "LEM-BK-PP": ("commuting products of prime-power class size pi-elements",
                  _chk_lem_bk_pp),
    "THM-D": ("prime power class sizes of pi-elements in the factors", _chk_thm_d),
    "COR-D": ("the unfactorised prime-power-class-size classification", _chk_cor_d),
    "LEM-WIELANDT": ("Hall elements with pi-number class size lie in O_pi", _chk_lem_wielandt),
    "LEM-SEP": ("the separability criterion: O_pi becomes a Hall pi-subgroup", _chk_lem_sep),
    "LEM-DIV": ("class-size divisibility along normal subgroups and quotients", _chk_lem_div),
    "LEM-PREFACT": ("existence and inheritance for prefactorised Hall subgroups",
                    _chk_lem_prefact),
    "LEM-CORE-CHAR": ("greedy core decision matches the chief-series oracle",
                      _chk_lem_core_char),
    "LEM-QUOT": ("core-factorisations pass to quotients", _chk_lem_quot),
    "REM-IV": ("Hall pi / pi' pairs of pi-separable groups are core-factorisations",
               _chk_rem_iv),
}


def statement_ids() -> list[str]:
    return list(STATEMENTS)


def _context(F: Factorisation, pi: PiSet, opts: CheckOptions) -> _Ctx:
    key = ("ctx", pi.primes, F.A.element_set(opts.cap), F.B.element_set(opts.cap),
           opts.drop_core_precondition)
    cache = F.G._cache
    if key not in cache:
        cache[key] = _Ctx(F, pi, opts)
    ctx = cache[key]
    ctx.opts = opts
    return ctx


def verify_statement(statement_id: str, F: Factorisation, pi: PiSet,
                     opts: CheckOptions | None = None) -> Verdict:
    if statement_id not in STATEMENTS:
        raise KeyError(f"unknown statement id {statement_id!r}")
    opts = opts or CheckOptions()
    ctx = _context(F, pi, opts)
    _, checker = STATEMENTS[statement_id]
    try:
        return checker(ctx)
    except _Abstain as a:
        return _abstained(statement_id, a.reason)
    except CapExceeded as c:
        return _abstained(statement_id, f"cap: {c}")
