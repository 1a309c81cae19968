"""The worked-example corpus, the group-spec file format, and random cases.

Group spec v1 is line-oriented UTF-8 with LF endings:

    DEGREE <int>
    GEN <name> <cycle-notation>
    SUBGROUP <label> <name> [<name> ...]
    PI <prime>[,<prime>...]
    EXPECT <key> <true|false>

Comments start with ``#``. The group is generated by every declared
generator; the labels A and B are reserved for the factorisation. EXPECT
keys name regression pins (structural checks or statement verdict fields)
so the pins travel with the data, not the code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from random import Random

from .perm import Perm, ParseError, parse_permutation
from .group import (
    CapExceeded,
    NotAProduct,
    PermGroup,
    Subgroup,
    direct_product,
    group_from_generators,
    semidirect_by_power_map,
    wreath_natural,
)
from .pi import PiSet, is_prime
from .factorisation import Factorisation, make_factorisation


class SpecError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class GroupSpec:
    name: str
    degree: int
    named_generators: dict[str, str]
    subgroup_defs: dict[str, list[str]]
    pi: PiSet | None = None
    expected: dict[str, bool] = field(default_factory=dict)


def parse_group_spec(text: str, name: str = "") -> GroupSpec:
    degree: int | None = None
    gens: dict[str, str] = {}
    subs: dict[str, list[str]] = {}
    pi: PiSet | None = None
    expected: dict[str, bool] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        directive = parts[0]
        if directive == "DEGREE":
            if degree is not None:
                raise SpecError("duplicate DEGREE", lineno)
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise SpecError("DEGREE needs one positive integer", lineno)
            degree = int(parts[1])
        elif directive == "GEN":
            if degree is None:
                raise SpecError("DEGREE must come before GEN", lineno)
            if len(parts) != 3:
                raise SpecError("GEN needs a name and a cycle string", lineno)
            gname = parts[1]
            if not (gname[0].isalpha() or gname[0] == "_") or not all(
                c.isalnum() or c == "_" for c in gname
            ):
                raise SpecError(f"bad generator name {gname!r}", lineno)
            if gname in gens:
                raise SpecError(f"duplicate generator {gname!r}", lineno)
            try:
                parse_permutation(parts[2], degree)
            except ParseError as err:
                raise SpecError(f"bad cycle notation: {err}", lineno) from err
            gens[gname] = parts[2]
        elif directive == "SUBGROUP":
            if len(parts) < 3:
                raise SpecError("SUBGROUP needs a label and generator names", lineno)
            label = parts[1]
            if label in subs:
                raise SpecError(f"duplicate subgroup label {label!r}", lineno)
            for gname in parts[2:]:
                if gname not in gens:
                    raise SpecError(f"undeclared generator {gname!r}", lineno)
            subs[label] = parts[2:]
        elif directive == "PI":
            if len(parts) != 2:
                raise SpecError("PI needs a comma-separated prime list", lineno)
            values = []
            for tok in parts[1].split(","):
                if not tok.isdigit():
                    raise SpecError(f"bad PI entry {tok!r}", lineno)
                v = int(tok)
                if not is_prime(v):
                    raise SpecError(f"PI entry {v} is not prime", lineno)
                values.append(v)
            pi = PiSet(values)
        elif directive == "EXPECT":
            if len(parts) != 3 or parts[2] not in ("true", "false"):
                raise SpecError("EXPECT needs a key and true|false", lineno)
            expected[parts[1]] = parts[2] == "true"
        else:
            raise SpecError(f"unknown directive {directive!r}", lineno)
    if degree is None:
        raise SpecError("missing DEGREE", 1)
    return GroupSpec(name, degree, gens, subs, pi, expected)


def print_group_spec(spec: GroupSpec) -> str:
    lines = [f"DEGREE {spec.degree}"]
    for gname, cycles in spec.named_generators.items():
        lines.append(f"GEN {gname} {cycles}")
    for label, names in spec.subgroup_defs.items():
        lines.append(f"SUBGROUP {label} {' '.join(names)}")
    if spec.pi is not None:
        lines.append(f"PI {','.join(str(p) for p in spec.pi)}")
    for key, value in spec.expected.items():
        lines.append(f"EXPECT {key} {'true' if value else 'false'}")
    return "\n".join(lines) + "\n"


def build_factorisation(spec: GroupSpec) -> Factorisation:
    """The group of all declared generators, factorised by labels A and B.

    Without both labels the trivial factorisation G = GG is used.
    """
    perms = {
        name: parse_permutation(text, spec.degree)
        for name, text in spec.named_generators.items()
    }
    G = group_from_generators(spec.degree, list(perms.values()))
    if "A" in spec.subgroup_defs and "B" in spec.subgroup_defs:
        A = Subgroup(G, [perms[n] for n in spec.subgroup_defs["A"]], _checked=True)
        B = Subgroup(G, [perms[n] for n in spec.subgroup_defs["B"]], _checked=True)
        return make_factorisation(G, A, B)
    return Factorisation.trivial(G)


def subgroup_for_label(spec: GroupSpec, F: Factorisation, label: str) -> Subgroup:
    perms = [parse_permutation(spec.named_generators[n], spec.degree)
             for n in spec.subgroup_defs[label]]
    return Subgroup(F.G, perms, _checked=True)


@dataclass
class CorpusCase:
    spec: GroupSpec
    provenance: str
    notes: str = ""

    def factorisation(self) -> Factorisation:
        if not hasattr(self, "_fact"):
            self._fact = build_factorisation(self.spec)
        return self._fact


_PAPER_FILES = [
    "sym4-noncore",
    "sym4xc2-core",
    "wreath-sym3",
    "sym3x55",
    "d8xd10",
    "order210",
    "a5x203",
    "final-example-substitute",
]

_PAPER_NOTES = {
    "sym4-noncore": (
        "Symmetric group on 4 points, factorised by a cyclic-4 extension of the"
        " double-transposition and a point-stabiliser copy of Sym(3). Its unique"
        " minimal normal subgroup (the Klein four group) is covered by neither"
        " factor, so this is not a core-factorisation even though the group is"
        " soluble."
    ),
    "sym4xc2-core": (
        "Sym(4) times a central involution. The first factor is the graph of a"
        " parity map on a dihedral Sylow 2-subgroup, the second is Sym(3) times"
        " the centre. A core-factorisation whose core A-series starts at the"
        " trivial group, while the first core B-term (the centre) is not"
        " self-centralising."
    ),
    "wreath-sym3": (
        "Natural wreath product of Sym(3) with a block swap on 6 points. The"
        " second factor is generated by a diagonal 3-element and an involution"
        " twisting the blocks: it is subnormal, yet the product is not a"
        " core-factorisation, so the two notions are independent."
    ),
    "sym3x55": (
        "Sym(3) times the Frobenius group of order 55. With pi = {2,3,11} the"
        " Hall pi-subgroup is non-abelian and the group is not pi-decomposable,"
        " yet every prime power order element off the Hall centre has pi-number"
        " class size: the non-central Hall criterion genuinely needs elements of"
        " composite order."
    ),
    "d8xd10": (
        "Dihedral of order 8 times dihedral of order 10, pi = {2}. The"
        " non-central Hall-intersection hypotheses hold, but the group is not"
        " 2-decomposable: only per-factor conclusions survive in products."
    ),
    "order210": (
        "A group of order 210: the Frobenius group of order 21 times a cyclic"
        " group of order 5, extended by an involution inverting both the 7- and"
        " 5-parts and centralising the 3-part. The Hall {3,7} and {2,5} pair is a"
        " core-factorisation of class-pi-separable factors, yet not a"
        " class-pi-separable factorisation."
    ),
    "a5x203": (
        "Alternating group of degree 5 times the Frobenius group of order 203"
        " (29:7), pi = {2,3,5}. Every class size of a factor element is a pi- or"
        " pi'-number, but the group is insoluble and both Hall subgroups are"
        " non-abelian."
    ),
    "final-example-substitute": (
        "Substitute case: Sym(3) times dihedral of order 10 with pi = {2,3}."
        " The described order-30 companion (a cyclic 5 acting on a cyclic 6)"
        " cannot exist non-trivially, since every action of C5 on C6 is trivial;"
        " this product exhibits the same phenomenon: prime power class sizes for"
        " all pi-elements of the factors, a non-abelian Hall pi-subgroup, and no"
        " pi-decomposition."
    ),
}


def build_paper_corpus() -> list[CorpusCase]:
    """Load and certify the eight worked-example cases."""
    cases = []
    for name in _PAPER_FILES:
        text = resources.files("pistruct.data").joinpath(f"{name}.grp").read_text()
        spec = parse_group_spec(text, name)
        case = CorpusCase(spec, "paper-example", _PAPER_NOTES[name])
        case.factorisation()  # certify the product at build time
        cases.append(case)
    orders = {c.spec.name: c.factorisation().G.order for c in cases}
    expected_orders = {
        "sym4-noncore": 24,
        "sym4xc2-core": 48,
        "wreath-sym3": 72,
        "sym3x55": 330,
        "d8xd10": 80,
        "order210": 210,
        "a5x203": 12180,
        "final-example-substitute": 60,
    }
    if orders != expected_orders:
        raise NotAProduct(f"corpus construction self-check failed: {orders}")
    return cases


# ---------------------------------------------------------------------------
# random factorisations


def _atom_pool() -> list[tuple[str, PermGroup]]:
    def cyc(n):
        return group_from_generators(n, [Perm(list(range(2, n + 1)) + [1])])

    def dih(n):
        rot = Perm(list(range(2, n + 1)) + [1])
        refl = Perm([1] + list(range(n, 1, -1)))
        return group_from_generators(n, [rot, refl])

    def symmetric(n):
        return group_from_generators(
            n, [parse_permutation("(1,2)", n), Perm(list(range(2, n + 1)) + [1])]
        )

    def alternating(n):
        cycle3 = parse_permutation("(1,2,3)", n)
        long = Perm(list(range(2, n + 1)) + [1])
        if n % 2 == 0:
            long = parse_permutation("(1,2)", n) * long
        return group_from_generators(n, [cycle3, long])

    pool = [
        ("C2", cyc(2)), ("C3", cyc(3)), ("C4", cyc(4)), ("C5", cyc(5)),
        ("C6", cyc(6)), ("C7", cyc(7)), ("C9", cyc(9)), ("C12", cyc(12)),
        ("D8", dih(4)), ("D10", dih(5)), ("D12", dih(6)), ("D14", dih(7)),
        ("D18", dih(9)),
        ("S3", symmetric(3)), ("S4", symmetric(4)), ("A4", alternating(4)),
        ("A5", alternating(5)),
        ("F20", semidirect_by_power_map(5, 2)),
        ("F21", semidirect_by_power_map(7, 2)),
        ("F55", semidirect_by_power_map(11, 3)),
        ("C7:C6", semidirect_by_power_map(7, 3)),
        ("C2wrC2", wreath_natural(cyc(2), 2)),
        ("S3wrC2", wreath_natural(symmetric(3), 2)),
    ]
    return pool


def _random_group(rng: Random, max_order: int) -> tuple[str, PermGroup]:
    pool = _atom_pool()
    for _ in range(200):
        if rng.random() < 0.55:
            name, G = pool[rng.randrange(len(pool))]
        else:
            n1, G1 = pool[rng.randrange(len(pool))]
            n2, G2 = pool[rng.randrange(len(pool))]
            name, G = f"{n1}x{n2}", direct_product(G1, G2)
        if 1 < G.order <= max_order:
            return name, G
    raise CapExceeded(f"no pool group fits below order {max_order}")


def _random_subgroup(rng: Random, G: PermGroup, elems: list[Perm]) -> Subgroup:
    count = rng.choice([1, 1, 2, 2, 3])
    gens = [elems[rng.randrange(len(elems))] for _ in range(count)]
    return Subgroup(G, gens)


def _spec_for(name: str, F: Factorisation, pi: PiSet) -> GroupSpec:
    gens: dict[str, str] = {}
    a_names, b_names = [], []
    for i, g in enumerate(F.A.generators):
        gname = f"a{i + 1}"
        gens[gname] = str(g)
        a_names.append(gname)
    if not a_names:
        gens["a1"] = "()"
        a_names = ["a1"]
    for i, g in enumerate(F.B.generators):
        gname = f"b{i + 1}"
        gens[gname] = str(g)
        b_names.append(gname)
    if not b_names:
        gens["b1"] = "()"
        b_names = ["b1"]
    return GroupSpec(name, F.G.degree, gens, {"A": a_names, "B": b_names}, pi)


def random_factorisations(max_order: int, count: int, seed: int) -> list[CorpusCase]:
    """Deterministic certified random factorisations with attached pi-sets.

    Groups come from a fixed constructor pool; A and B are generated by random
    element subsets and kept only when the product certificate holds. The
    emitted list is byte-identical across runs for a fixed seed.
    """
    rng = Random(seed)
    out: list[CorpusCase] = []
    idx = 0
    attempts = 0
    while len(out) < count and attempts < 400 * max(count, 1):
        attempts += 1
        gname, G = _random_group(rng, max_order)
        elems = sorted(G.elements())
        primes = _group_primes(G)
        k = rng.randrange(1, len(primes) + 1)
        shuffled = primes[:]
        rng.shuffle(shuffled)
        pi = PiSet(shuffled[:k])
        found = None
        for _ in range(8):
            A = _random_subgroup(rng, G, elems)
            B = _random_subgroup(rng, G, elems)
            try:
                found = make_factorisation(G, A, B)
                break
            except NotAProduct:
                continue
        if found is None:
            continue
        idx += 1
        spec = _spec_for(f"rand-{seed}-{idx:04d}", found, pi)
        case = CorpusCase(spec, f"random(seed={seed})")
        case._fact = found
        out.append(case)
    return out


def _group_primes(G: PermGroup) -> list[int]:
    from .structure import _prime_divisors

    return _prime_divisors(G.order)
