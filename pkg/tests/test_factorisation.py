import pytest

from pistruct.perm import Perm, parse_permutation
from pistruct.group import (
    NotAProduct,
    PermGroup,
    direct_product,
    group_from_generators,
    intersect,
    centraliser,
    semidirect_by_power_map,
    wreath_natural,
)
from pistruct.factorisation import (
    CoreSeries,
    Factorisation,
    core_factorisation_oracle,
    core_length,
    core_series,
    is_core_factorisation,
    is_prefactorised,
    make_factorisation,
    prefactorised_hall,
)
from pistruct.pi import PiSet, pi_part


def perm(text, degree):
    return parse_permutation(text, degree)


def sym(n):
    return PermGroup(n, [perm("(1,2)", n), Perm(list(range(2, n + 1)) + [1])])


def sym4_paper_factorisation():
    G = sym(4)
    A = G.subgroup([perm("(1,3,2,4)", 4), perm("(1,2)(3,4)", 4)])
    B = G.subgroup([perm("(3,4)", 4), perm("(2,3,4)", 4)])
    return make_factorisation(G, A, B)


def sym4xc2_paper_factorisation():
    gens = ["(1,2)(5,6)", "(3,4)(5,6)", "(1,3)(2,4)(5,6)", "(2,3,4)", "(3,4)", "(5,6)"]
    G = group_from_generators(6, [perm(t, 6) for t in gens])
    A = G.subgroup([perm("(1,2)(5,6)", 6), perm("(3,4)(5,6)", 6), perm("(1,3)(2,4)(5,6)", 6)])
    B = G.subgroup([perm("(2,3,4)", 6), perm("(3,4)", 6), perm("(5,6)", 6)])
    return make_factorisation(G, A, B)


def test_paper_sym4_product_certificate():
    F = sym4_paper_factorisation()
    assert F.A.order == 4 and F.B.order == 6 and F.intersection_order == 1


def test_trivial_factorisation_valid():
    G = sym(3)
    F = make_factorisation(G, G.whole_subgroup(), G.whole_subgroup())
    assert F.intersection_order == 6


def test_non_product_rejected():
    G = sym(4)
    A = G.subgroup([perm("(1,2)", 4)])
    with pytest.raises(NotAProduct):
        make_factorisation(G, A, A)


def test_prefactorised_whole_and_trivial():
    F = sym4_paper_factorisation()
    assert is_prefactorised(F, F.G)
    assert is_prefactorised(F, F.G.trivial_subgroup())


def test_v4_not_prefactorised_in_paper_example():
    F = sym4_paper_factorisation()
    V = F.G.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
    assert not is_prefactorised(F, V)


def test_paper_sym4_is_not_core_factorisation():
    F = sym4_paper_factorisation()
    verdict, series = is_core_factorisation(F)
    assert verdict is False
    assert series.steps == [] and len(series.chain) == 1


def test_trivial_factorisation_is_core():
    G = sym(4)
    F = Factorisation.trivial(G)
    verdict, _ = is_core_factorisation(F)
    assert verdict is True


def test_paper_sym4xc2_is_core_factorisation():
    F = sym4xc2_paper_factorisation()
    assert F.G.order == 48 and F.A.order == 8 and F.B.order == 12
    verdict, _ = is_core_factorisation(F)
    assert verdict is True


def test_paper_sym4xc2_core_a_series_starts_trivial():
    F = sym4xc2_paper_factorisation()
    series = core_series(F, "A")
    assert series.chain[1].order == 1
    assert series.terminated_at_g


def test_paper_sym4xc2_core_b_not_self_centralising():
    F = sym4xc2_paper_factorisation()
    cb = core_series(F, "B").chain[1]
    assert cb.order == 2
    C = centraliser(F.G, cb.generators)
    assert C.order > cb.order  # not self-centralising


def test_core_length_trivial_factorisation():
    G = sym(3)
    F = Factorisation.trivial(G)
    assert core_length(F, "A") == 1


def test_core_series_stalls_on_non_core():
    F = sym4_paper_factorisation()
    assert core_length(F, "A") is None
    assert core_length(F, "B") is None


def test_both_starts_terminate_iff_core():
    cases = [
        (sym4_paper_factorisation(), False),
        (sym4xc2_paper_factorisation(), True),
        (Factorisation.trivial(sym(4)), True),
    ]
    for F, expected in cases:
        verdict, _ = is_core_factorisation(F)
        assert verdict == expected
        assert core_series(F, "A").terminated_at_g == expected
        assert core_series(F, "B").terminated_at_g == expected


def test_oracle_agrees_on_paper_examples():
    for F in (sym4_paper_factorisation(), sym4xc2_paper_factorisation(),
              Factorisation.trivial(sym(3))):
        verdict, _ = is_core_factorisation(F)
        assert core_factorisation_oracle(F) == verdict


def test_wreath_example_not_core_and_b_subnormal():
    from pistruct.structure import is_subnormal

    G = wreath_natural(sym(3), 2)
    A = G.subgroup([perm("(2,3)", 6), perm("(4,5,6)", 6), perm("(5,6)", 6)])
    g = perm("(1,2,3)(4,6,5)", 6)
    z = perm("(1,4)(2,5)(3,6)", 6)
    B = G.subgroup([g, g * z])
    F = make_factorisation(G, A, B)
    assert F.A.order == 12 and F.B.order == 6 and F.intersection_order == 1
    verdict, _ = is_core_factorisation(F)
    assert verdict is False
    assert is_subnormal(B, G)
    # the spec's annotation method: the ascending normaliser chain also reaches G
    from pistruct.group import normaliser

    K = B
    seen = set()
    while K.order < G.order:
        if K.element_set() in seen:
            break
        seen.add(K.element_set())
        K = normaliser(G, K)
    assert K.order == G.order


def test_quotient_closure_of_core_factorisations():
    from pistruct.group import quotient

    F = sym4xc2_paper_factorisation()
    verdict, series = is_core_factorisation(F)
    assert verdict
    for N in series.chain[1:-1]:
        if N.order in (1, F.G.order):
            continue
        q = quotient(F.G, N)
        Abar = q.image_subgroup(F.A)
        Bbar = q.image_subgroup(F.B)
        F2 = make_factorisation(q.image, Abar, Bbar)
        v2, _ = is_core_factorisation(F2)
        assert v2


def test_chain_members_prefactorised_with_core_factorisation():
    F = sym4xc2_paper_factorisation()
    _, series = is_core_factorisation(F)
    for N in series.chain:
        if N.order == 1:
            continue
        assert is_prefactorised(F, N)
        NA = intersect(N, F.A)
        NB = intersect(N, F.B)
        if N.order > 1:
            FN = make_factorisation(N, Subgroup_of(N, NA), Subgroup_of(N, NB))
            v, _ = is_core_factorisation(FN)
            assert v


def Subgroup_of(G, H):
    from pistruct.group import Subgroup

    return Subgroup(G, H.generators, _checked=True)


def test_remark_iv_hall_pairs_are_core_factorisations():
    from pistruct.pi import hall_subgroup

    cases = [
        (sym(4), PiSet([2])),
        (sym(4), PiSet([3])),
        (direct_product(sym(3), semidirect_by_power_map(11, 3)), PiSet([2, 3, 11])),
    ]
    for G, pi in cases:
        H = hall_subgroup(G, pi)
        L = hall_subgroup(G, pi.complement_for(G.order))
        F = make_factorisation(G, H, L)
        verdict, _ = is_core_factorisation(F)
        assert verdict


def test_prefactorised_hall_sym4_example():
    F = sym4_paper_factorisation()
    H = prefactorised_hall(F, PiSet([2]))
    assert H.order == 8
    HA = intersect(H, F.A)
    HB = intersect(H, F.B)
    assert HA.order == 4 and HB.order == 2
    assert HA.order * HB.order == H.order * intersect(HA, HB).order


def test_prefactorised_hall_extreme_pis():
    F = sym4xc2_paper_factorisation()
    assert prefactorised_hall(F, PiSet([2, 3])).order == 48
    assert prefactorised_hall(F, PiSet([7])).order == 1


def test_prefactorised_hall_is_hall_in_factors():
    cases = [
        (sym4_paper_factorisation(), PiSet([2])),
        (sym4xc2_paper_factorisation(), PiSet([3])),
    ]
    for F, pi in cases:
        H = prefactorised_hall(F, pi)
        assert H.order == pi_part(F.G.order, pi)
        assert intersect(H, F.A).order == pi_part(F.A.order, pi)
        assert intersect(H, F.B).order == pi_part(F.B.order, pi)
