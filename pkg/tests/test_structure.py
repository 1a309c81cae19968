import pytest

from pistruct.perm import Perm, parse_permutation
from pistruct.group import (
    PermGroup,
    direct_product,
    group_from_generators,
    centre,
    quotient,
    semidirect_by_power_map,
)
from pistruct.structure import (
    all_subgroups,
    chief_series,
    class_size,
    conjugacy_classes,
    core,
    covers,
    derived_subgroup,
    fitting_subgroup,
    frobenius_decomposition,
    is_frobenius_with,
    is_p_nilpotent,
    is_soluble,
    is_subnormal,
    minimal_normal_subgroups,
    normal_closure,
    normal_subgroups,
    strip_abelian_direct_factors,
    sylow_subgroup,
)


def perm(text, degree):
    return parse_permutation(text, degree)


def sym(n):
    gens = [perm("(1,2)", n), Perm(list(range(2, n + 1)) + [1])]
    return PermGroup(n, gens)


def alt5():
    return group_from_generators(5, [perm("(1,2,3,4,5)", 5), perm("(3,4,5)", 5)])


def d8():
    return group_from_generators(4, [perm("(1,2,3,4)", 4), perm("(1,3)", 4)])


def d10():
    return group_from_generators(5, [perm("(1,2,3,4,5)", 5), perm("(2,5)(3,4)", 5)])


def cyclic(n):
    return group_from_generators(n, [Perm(list(range(2, n + 1)) + [1])])


def test_class_size_transposition_in_sym4():
    assert class_size(sym(4), perm("(1,2)", 4)) == 6


def test_abelian_classes_all_singletons():
    G = cyclic(6)
    assert all(c.size == 1 for c in conjugacy_classes(G))


def test_a5_class_sizes():
    sizes = sorted(c.size for c in conjugacy_classes(alt5()))
    assert sizes == [1, 12, 12, 15, 20]


def test_class_equation():
    for G in (sym(4), alt5(), d8(), semidirect_by_power_map(11, 3)):
        assert sum(c.size for c in conjugacy_classes(G)) == G.order
        for c in conjugacy_classes(G):
            assert c.size * c.centraliser_order == G.order


def test_normal_closure_of_double_transposition_is_v4():
    G = sym(4)
    N = normal_closure(G, [perm("(1,2)(3,4)", 4)])
    assert N.order == 4


def test_core_of_small_subgroup_trivial():
    G = sym(4)
    assert core(G, G.subgroup([perm("(1,2)", 4)])).order == 1


def test_core_of_whole_group():
    G = sym(4)
    assert core(G, G).order == 24


def test_minimal_normals_sym4():
    mins = minimal_normal_subgroups(sym(4))
    assert len(mins) == 1
    assert mins[0].order == 4


def test_minimal_normals_simple():
    mins = minimal_normal_subgroups(alt5())
    assert len(mins) == 1 and mins[0].order == 60


def test_minimal_normals_c6():
    orders = sorted(M.order for M in minimal_normal_subgroups(cyclic(6)))
    assert orders == [2, 3]


def test_chief_series_sym4():
    s = chief_series(sym(4))
    assert [f["order"] for f in s.factors] == [4, 3, 2]


def test_chief_series_simple():
    s = chief_series(alt5())
    assert [f["order"] for f in s.factors] == [60]


def test_chief_series_frobenius55():
    s = chief_series(semidirect_by_power_map(11, 5))
    assert [f["order"] for f in s.factors] == [11, 5]


def test_chief_factors_admit_no_intermediate_normal():
    for G in (sym(4), wreath72()):
        s = chief_series(G)
        from pistruct.group import is_normal

        for N in s.chain:
            assert is_normal(G, N)
        for lower, upper in zip(s.chain, s.chain[1:]):
            q = quotient(G, lower)
            mins = minimal_normal_subgroups(q.image)
            img = q.image_subgroup(upper)
            assert any(M.element_set() == img.element_set() for M in mins)


def wreath72():
    from pistruct.group import wreath_natural

    return wreath_natural(sym(3), 2)


def test_covers_paper_sym4_example():
    G = sym(4)
    A = G.subgroup([perm("(1,3,2,4)", 4), perm("(1,2)(3,4)", 4)])
    B = G.subgroup([perm("(3,4)", 4), perm("(2,3,4)", 4)])
    V = G.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
    triv = G.trivial_subgroup()
    assert not covers(A, V, triv)
    assert not covers(B, V, triv)
    assert covers(G, V, triv)
    assert covers(A, V, V)


def test_centre_of_d8xd10():
    assert centre(direct_product(d8(), d10())).order == 2


def test_derived_sym3_is_a3():
    D = derived_subgroup(sym(3))
    assert D.order == 3


def test_fitting_sym4_is_v4():
    assert fitting_subgroup(sym(4)).order == 4


def test_sylow_sym4():
    assert sylow_subgroup(sym(4), 2).order == 8
    assert sylow_subgroup(sym(4), 5).order == 1


def test_sylow_a5():
    P = sylow_subgroup(alt5(), 2)
    assert P.order == 4
    assert P.is_abelian()


def test_frobenius_sym3():
    G = sym(3)
    K = G.subgroup([perm("(1,2,3)", 3)])
    H = G.subgroup([perm("(1,2)", 3)])
    assert is_frobenius_with(G, K, H)


def test_frobenius_d10():
    G = d10()
    K = G.subgroup([perm("(1,2,3,4,5)", 5)])
    H = G.subgroup([perm("(2,5)(3,4)", 5)])
    assert is_frobenius_with(G, K, H)


def test_d8_has_no_frobenius_decomposition():
    assert frobenius_decomposition(d8()) is None


def test_frobenius_decomposition_found():
    G = semidirect_by_power_map(11, 3)
    found = frobenius_decomposition(G)
    assert found is not None
    K, H = found
    assert K.order == 11 and H.order == 5


def test_p_nilpotency():
    G = sym(3)
    assert is_p_nilpotent(G, 2)
    assert not is_p_nilpotent(G, 3)
    assert is_p_nilpotent(G, 7)


def test_strip_c2_x_sym3():
    G = direct_product(cyclic(2), sym(3))
    D, Y = strip_abelian_direct_factors(G)
    assert D.order == 2 and Y.order == 6
    assert not Y.is_abelian()


def test_strip_sym3_trivial():
    D, Y = strip_abelian_direct_factors(sym(3))
    assert D.order == 1 and Y.order == 6


def test_strip_abelian_whole():
    G = cyclic(12)
    D, Y = strip_abelian_direct_factors(G)
    assert D.order == 12 and Y.order == 1


def test_strip_direct_product_equations():
    from pistruct.group import intersect, is_normal

    for G in (direct_product(cyclic(2), sym(3)), direct_product(cyclic(3), d8())):
        D, Y = strip_abelian_direct_factors(G)
        assert D.order * Y.order == G.order
        assert intersect(D, Y).order == 1
        assert is_normal(G, D) and is_normal(G, Y)
        assert D.is_abelian()


def test_normal_subgroups_sym4():
    orders = sorted(N.order for N in normal_subgroups(sym(4)))
    assert orders == [1, 4, 12, 24]


def test_all_subgroups_sym3():
    subs = all_subgroups(sym(3))
    assert sorted(S.order for S in subs) == [1, 2, 2, 2, 3, 6]


def test_divisibility_lemma_spot():
    G = sym(4)
    V = normal_closure(G, [perm("(1,2)(3,4)", 4)])
    for x in V.elements():
        assert class_size(G, x) % class_size(V, x) == 0
    q = quotient(G, V)
    for x in G.elements():
        assert class_size(G, x) % class_size(q.image, q.forward(x)) == 0


def test_soluble_flags():
    assert is_soluble(sym(4))
    assert not is_soluble(alt5())


def test_subnormal():
    G = sym(4)
    V = G.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
    sub2 = G.subgroup([perm("(1,2)(3,4)", 4)])
    assert is_subnormal(V, G)
    assert is_subnormal(sub2, G)  # normal in V4, V4 normal in G
    assert not is_subnormal(G.subgroup([perm("(1,2)", 4)]), G)


def test_frobenius_kernel_class_sizes_multiple_of_complement():
    # class sizes of G restricted to K minus 1 are multiples of |H|
    G = semidirect_by_power_map(11, 3)
    K, H = frobenius_decomposition(G)
    for x in K.elements():
        if not x.is_identity():
            assert class_size(G, x) % H.order == 0
