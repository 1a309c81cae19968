"""One-off generator for the corpus .grp data files."""

from pistruct.perm import Perm, parse_permutation
from pistruct.group import group_from_generators, semidirect_by_power_map, PermGroup

OUT = "src/pistruct/data"


def perm_str_for_map(n, fn, offset):
    """Cycle string for the permutation point -> fn(point-offset-1)+offset+1 on a block."""
    images = list(range(1, n + 1))
    return images


def shift_cycle(start, length):
    return "(" + ",".join(str(start + i) for i in range(length)) + ")"


def mult_map_cycles(n, k, offset):
    """z -> k z mod n on points offset+1 .. offset+n (point = z + offset + 1)."""
    images = {}
    for z in range(n):
        images[offset + z + 1] = offset + (k * z) % n + 1
    deg = offset + n
    full = list(range(1, deg + 1))
    for p, q in images.items():
        full[p - 1] = q
    return Perm(full)


def inv_map(n, offset, degree):
    full = list(range(1, degree + 1))
    for z in range(n):
        full[offset + z] = offset + (-z) % n + 1
    return Perm(full)


cases = {}

cases["sym4-noncore"] = dict(
    degree=4,
    gens={"a1": "(1,3,2,4)", "a2": "(1,2)(3,4)", "b1": "(3,4)", "b2": "(2,3,4)"},
    A=["a1", "a2"], B=["b1", "b2"],
    pi="2",
    expect=[("CORE-FACT", False)],
    order=24,
)

cases["sym4xc2-core"] = dict(
    degree=6,
    gens={
        "a1": "(1,2)(5,6)", "a2": "(3,4)(5,6)", "a3": "(1,3)(2,4)(5,6)",
        "b1": "(2,3,4)", "b2": "(3,4)", "b3": "(5,6)",
    },
    A=["a1", "a2", "a3"], B=["b1", "b2", "b3"],
    pi="2",
    expect=[("CORE-FACT", True), ("COREA-TRIVIAL", True), ("COREB-SELFCENT", False)],
    order=48,
)

cases["wreath-sym3"] = dict(
    degree=6,
    gens={
        "a1": "(2,3)", "a2": "(4,5,6)", "a3": "(5,6)",
        "b1": "(1,2,3)(4,6,5)", "b2": "(1,5)(2,6)(3,4)",
    },
    A=["a1", "a2", "a3"], B=["b1", "b2"],
    pi="3",
    expect=[("CORE-FACT", False), ("B-SUBNORMAL", True)],
    order=72,
)

# Sym(3) x (C11 : C5) on 3 + 11 points
m3 = mult_map_cycles(11, 3, 3)
assert m3.order() == 5
cases["sym3x55"] = dict(
    degree=14,
    gens={
        "a1": "(1,2)", "a2": "(1,2,3)",
        "b1": shift_cycle(4, 11), "b2": str(m3),
    },
    A=["a1", "a2"], B=["b1", "b2"],
    pi="2,3,11",
    expect=[
        ("HALL-PI-ABELIAN", False),
        ("PI-DECOMPOSABLE", False),
        ("HYP-HMC-PPO-PI", True),
    ],
    order=330,
)

cases["d8xd10"] = dict(
    degree=9,
    gens={
        "a1": "(1,2,3,4)", "a2": "(1,3)",
        "b1": "(5,6,7,8,9)", "b2": "(6,9)(7,8)",
    },
    A=["a1", "a2"], B=["b1", "b2"],
    pi="2",
    expect=[("THM-NONCENTRAL.hypothesis", True), ("PI-DECOMPOSABLE", False)],
    order=80,
)

# order 210: (C7:C3 x C5) : C2 on 7 + 5 points
c2map = mult_map_cycles(7, 2, 0)  # order 3 on the 7-block, but degree 7 only
c2full = Perm(list(c2map.images) + [8, 9, 10, 11, 12])
t7 = inv_map(7, 0, 12)
t5 = inv_map(5, 7, 12)
t = t7 * t5
assert c2full.order() == 3 and t.order() == 2
cases["order210"] = dict(
    degree=12,
    gens={
        "a1": shift_cycle(1, 7), "a2": str(c2full),
        "b1": shift_cycle(8, 5), "b2": str(t),
    },
    A=["a1", "a2"], B=["b1", "b2"],
    pi="3,7",
    expect=[
        ("CORE-FACT", True),
        ("CLASS-PI-SEP-FACT", False),
        ("A-CLASS-PI-SEP", True),
        ("B-CLASS-PI-SEP", True),
    ],
    order=210,
)

# A5 x (C29 : C7) on 5 + 29 points
w = None
for candidate in range(2, 29):
    try:
        from pistruct.group import multiplicative_order

        if multiplicative_order(candidate, 29) == 7:
            w = candidate
            break
    except ValueError:
        continue
assert w is not None
w16 = mult_map_cycles(29, w, 5)
assert w16.order() == 7
cases["a5x203"] = dict(
    degree=34,
    gens={
        "a1": "(1,2,3,4,5)", "a2": "(3,4,5)",
        "b1": shift_cycle(6, 29), "b2": str(w16),
    },
    A=["a1", "a2"], B=["b1", "b2"],
    pi="2,3,5",
    expect=[
        ("CLASS-PI-SEP-FACT", True),
        ("G-SOLUBLE", False),
        ("HALL-PI-ABELIAN", False),
        ("HALL-PIPRIME-ABELIAN", False),
    ],
    order=12180,
)

cases["final-example-substitute"] = dict(
    degree=8,
    gens={
        "a1": "(1,2)", "a2": "(1,2,3)",
        "b1": "(4,5,6,7,8)", "b2": "(5,8)(6,7)",
    },
    A=["a1", "a2"], B=["b1", "b2"],
    pi="2,3",
    expect=[
        ("THM-D.hypothesis", True),
        ("HALL-PI-ABELIAN", False),
        ("PI-DECOMPOSABLE", False),
    ],
    order=60,
)


for name, c in cases.items():
    gens = {n: parse_permutation(t, c["degree"]) for n, t in c["gens"].items()}
    G = group_from_generators(c["degree"], list(gens.values()))
    assert G.order == c["order"], f"{name}: order {G.order} != {c['order']}"
    A = PermGroup(c["degree"], [gens[n] for n in c["A"]])
    B = PermGroup(c["degree"], [gens[n] for n in c["B"]])
    from pistruct.group import intersect

    meet = intersect(A, B)
    assert A.order * B.order == G.order * meet.order, (
        f"{name}: |A|={A.order} |B|={B.order} |G|={G.order} |meet|={meet.order}"
    )
    lines = [f"DEGREE {c['degree']}"]
    for n, t in c["gens"].items():
        lines.append(f"GEN {n} {t}")
    lines.append(f"SUBGROUP A {' '.join(c['A'])}")
    lines.append(f"SUBGROUP B {' '.join(c['B'])}")
    lines.append(f"PI {c['pi']}")
    for key, val in c["expect"]:
        lines.append(f"EXPECT {key} {'true' if val else 'false'}")
    with open(f"{OUT}/{name}.grp", "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{name}: |G|={G.order} |A|={A.order} |B|={B.order} |AnB|={meet.order} OK")
