"""Verdict tables, expectation pins, and the report renderer.

EXPECT keys come in two forms: bare check ids from ``CHECKS`` (structural
booleans) and statement ids, optionally qualified with ``.hypothesis``,
``.conclusion`` or ``.consistent`` (the default field).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import CapExceeded, centraliser
from .pi import PiSet, hall_subgroup, is_pi_decomposable
from .structure import is_soluble, is_subnormal
from .factorisation import Factorisation, core_series, is_core_factorisation
from .theorems import (
    CheckOptions,
    Hypothesis,
    Verdict,
    eval_hypothesis,
    is_class_pi_separable_group,
    statement_ids,
    verify_statement,
)
from .corpus import CorpusCase


def _check_core_fact(F, pi, opts):
    verdict, _ = is_core_factorisation(F, opts.cap)
    return verdict


def _check_corea_trivial(F, pi, opts):
    return core_series(F, "A", opts.cap).chain[1].order == 1


def _check_coreb_selfcent(F, pi, opts):
    cb = core_series(F, "B", opts.cap).chain[1]
    C = centraliser(F.G, cb.generators, opts.cap)
    return all(g in cb for g in C.generators)


def _check_b_subnormal(F, pi, opts):
    return is_subnormal(F.B, F.G, opts.cap)


def _check_hall_pi_abelian(F, pi, opts):
    H = hall_subgroup(F.G, pi, opts.cap)
    return H is not None and H.is_abelian()


def _check_hall_piprime_abelian(F, pi, opts):
    H = hall_subgroup(F.G, pi.complement_for(F.G.order), opts.cap)
    return H is not None and H.is_abelian()


def _check_pi_decomposable(F, pi, opts):
    return is_pi_decomposable(F.G, pi, opts.cap)


def _check_class_pi_sep_fact(F, pi, opts):
    ok, _ = eval_hypothesis(F, pi, Hypothesis("all-elements", "union-AB", "pi-or-pi-prime"), opts)
    return ok


def _check_a_class_pi_sep(F, pi, opts):
    return is_class_pi_separable_group(F.A, pi, opts.cap)


def _check_b_class_pi_sep(F, pi, opts):
    return is_class_pi_separable_group(F.B, pi, opts.cap)


def _check_g_soluble(F, pi, opts):
    return is_soluble(F.G)


def _check_hyp_hmc_ppo_pi(F, pi, opts):
    ok, _ = eval_hypothesis(
        F, pi, Hypothesis("pi-prime-power", "hall-minus-center", "pi-number"), opts
    )
    return ok


CHECKS = {
    "CORE-FACT": _check_core_fact,
    "COREA-TRIVIAL": _check_corea_trivial,
    "COREB-SELFCENT": _check_coreb_selfcent,
    "B-SUBNORMAL": _check_b_subnormal,
    "HALL-PI-ABELIAN": _check_hall_pi_abelian,
    "HALL-PIPRIME-ABELIAN": _check_hall_piprime_abelian,
    "PI-DECOMPOSABLE": _check_pi_decomposable,
    "CLASS-PI-SEP-FACT": _check_class_pi_sep_fact,
    "A-CLASS-PI-SEP": _check_a_class_pi_sep,
    "B-CLASS-PI-SEP": _check_b_class_pi_sep,
    "G-SOLUBLE": _check_g_soluble,
    "HYP-HMC-PPO-PI": _check_hyp_hmc_ppo_pi,
}


class ExpectKeyError(ValueError):
    pass


def evaluate_expect_key(key: str, F: Factorisation, pi: PiSet,
                        opts: CheckOptions) -> bool | None:
    """The boolean value a pin refers to; None when the verdict abstained."""
    if key in CHECKS:
        return CHECKS[key](F, pi, opts)
    sid, _, fieldname = key.partition(".")
    fieldname = fieldname or "consistent"
    if sid not in statement_ids():
        raise ExpectKeyError(f"unknown EXPECT key {key!r}")
    if fieldname not in ("hypothesis", "conclusion", "consistent"):
        raise ExpectKeyError(f"unknown verdict field {fieldname!r} in {key!r}")
    verdict = verify_statement(sid, F, pi, opts)
    if verdict.abstained:
        return None
    return {
        "hypothesis": verdict.hypothesis_holds,
        "conclusion": verdict.conclusion_holds,
        "consistent": verdict.consistent,
    }[fieldname]


@dataclass
class ReportRow:
    case: str
    statement: str
    verdict: Verdict


@dataclass
class ExpectResult:
    case: str
    key: str
    expected: bool
    actual: bool | None

    @property
    def ok(self) -> bool:
        return self.actual is not None and self.actual == self.expected


@dataclass
class Report:
    rows: list[ReportRow] = field(default_factory=list)
    expects: list[ExpectResult] = field(default_factory=list)
    candidates: list[ReportRow] = field(default_factory=list)

    @property
    def consistent(self) -> int:
        return sum(1 for r in self.rows if not r.verdict.abstained and r.verdict.consistent)

    @property
    def inconsistent(self) -> int:
        return sum(1 for r in self.rows if not r.verdict.abstained and not r.verdict.consistent)

    @property
    def abstained(self) -> int:
        return sum(1 for r in self.rows if r.verdict.abstained)

    @property
    def expect_failures(self) -> list[ExpectResult]:
        return [e for e in self.expects if not e.ok]

    def exit_code(self, max_abstain: int | None = None) -> int:
        if self.inconsistent or self.expect_failures:
            return 1
        if max_abstain is not None and self.abstained > max_abstain:
            return 3
        return 0


def run_report(cases: list[CorpusCase], statements: list[str] | None = None,
               pi_override: PiSet | None = None,
               opts: CheckOptions | None = None,
               check_expectations: bool = True) -> Report:
    """Evaluate the statement grid over the cases, in canonical order."""
    opts = opts or CheckOptions()
    wanted = statements if statements is not None else statement_ids()
    report = Report()
    for case in sorted(cases, key=lambda c: c.spec.name):
        F = case.factorisation()
        pi = pi_override or case.spec.pi
        if pi is None:
            pi = PiSet([2])
        for sid in sorted(wanted):
            verdict = verify_statement(sid, F, pi, opts)
            row = ReportRow(case.spec.name, sid, verdict)
            report.rows.append(row)
            if not verdict.abstained and not verdict.consistent:
                report.candidates.append(row)
        if check_expectations:
            for key, expected in case.spec.expected.items():
                actual = evaluate_expect_key(key, F, pi, opts)
                report.expects.append(ExpectResult(case.spec.name, key, expected, actual))
    return report


def _fmt_bool(value: bool | None) -> str:
    if value is None:
        return "none"
    return "true" if value else "false"


def render_records(report: Report) -> str:
    lines = []
    for row in report.rows:
        v = row.verdict
        lines.append(
            f"case={row.case} statement={row.statement}"
            f" hypothesis={_fmt_bool(v.hypothesis_holds)}"
            f" conclusion={_fmt_bool(v.conclusion_holds)}"
            f" consistent={_fmt_bool(v.consistent if not v.abstained else None)}"
            f" abstained={_fmt_bool(v.abstained)}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def render_text(report: Report) -> str:
    lines = []
    width = max((len(r.case) for r in report.rows), default=4)
    for row in report.rows:
        v = row.verdict
        if v.abstained:
            status = f"abstained ({v.reason})"
        elif v.consistent:
            status = "consistent"
        else:
            status = "INCONSISTENT"
        detail = ""
        if not v.abstained:
            detail = (f" hyp={_fmt_bool(v.hypothesis_holds)}"
                      f" concl={_fmt_bool(v.conclusion_holds)}")
        lines.append(f"{row.case:<{width}}  {row.statement:<16} {status}{detail}")
        for w in v.witnesses:
            elem = f" x={w.element}" if w.element is not None else ""
            size = f" |x^G|={w.class_size}" if w.class_size is not None else ""
            lines.append(f"{'':{width}}    witness:{elem}{size} {w.reason}")
    for e in report.expects:
        mark = "ok" if e.ok else "MISMATCH"
        lines.append(
            f"{e.case:<{width}}  expect {e.key} = {_fmt_bool(e.expected)}"
            f" (got {_fmt_bool(e.actual)}) {mark}"
        )
    lines.append(
        f"summary: consistent={report.consistent} inconsistent={report.inconsistent}"
        f" abstained={report.abstained} expect-failures={len(report.expect_failures)}"
    )
    return "\n".join(lines) + "\n"
