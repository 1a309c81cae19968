import pytest

from pistruct.perm import Perm, parse_permutation
from pistruct.group import (
    PermGroup,
    direct_product,
    group_from_generators,
    semidirect_by_power_map,
)
from pistruct.pi import (
    PiSet,
    hall_conjugates,
    hall_subgroup,
    is_pi_decomposable,
    is_pi_number,
    is_pi_separable,
    iterated_radical,
    o_pi,
    pi_elements,
    pi_length,
    pi_part,
    upper_pi_series,
)
from pistruct.structure import all_subgroups, class_size, conjugacy_classes


def perm(text, degree):
    return parse_permutation(text, degree)


def sym(n):
    return PermGroup(n, [perm("(1,2)", n), Perm(list(range(2, n + 1)) + [1])])


def alt5():
    return group_from_generators(5, [perm("(1,2,3,4,5)", 5), perm("(3,4,5)", 5)])


def d8():
    return group_from_generators(4, [perm("(1,2,3,4)", 4), perm("(1,3)", 4)])


def d10():
    return group_from_generators(5, [perm("(1,2,3,4,5)", 5), perm("(2,5)(3,4)", 5)])


def cyclic(n):
    return group_from_generators(n, [Perm(list(range(2, n + 1)) + [1])])


def test_piset_rejects_composites():
    with pytest.raises(ValueError):
        PiSet([4])


def test_pi_number_basics():
    pi = PiSet([2, 3])
    assert is_pi_number(1, pi) and pi_part(1, pi) == 1
    assert is_pi_number(12, pi)
    pi2 = PiSet([2, 3, 11])
    assert not is_pi_number(55, pi2)
    assert pi_part(55, pi2) == 11


def test_pi_elements_sym3():
    G = sym(3)
    els = pi_elements(G, PiSet([3]))
    assert len(els) == 3
    assert sorted(x.order() for x in els) == [1, 3, 3]


def test_pi_elements_disjoint_pi():
    G = sym(3)
    els = pi_elements(G, PiSet([7]))
    assert els == [Perm.identity(3)]


def test_pi_elements_prime_power_filter_sym4():
    G = sym(4)
    els = pi_elements(G, PiSet([2, 3]), prime_power_only=True)
    assert len(els) == 24


def test_o_pi_sym4():
    G = sym(4)
    assert o_pi(G, PiSet([2])).order == 4
    assert o_pi(G, PiSet([2, 3])).order == 24


def test_o_pi_simple_trivial():
    assert o_pi(alt5(), PiSet([2])).order == 1


def test_separability():
    assert is_pi_separable(sym(4), PiSet([2]))
    assert is_pi_separable(sym(4), PiSet([3]))
    assert not is_pi_separable(alt5(), PiSet([2]))


def test_pi_length_sym3():
    assert pi_length(sym(3), PiSet([3])) == 1


def test_upper_series_labels():
    s = upper_pi_series(sym(3), PiSet([3]))
    assert s.reaches_g
    assert s.chain[0].order == 1 and s.chain[-1].order == 6
    assert s.pi_length == 1


def test_separability_cross_check_chief_factors():
    from pistruct.structure import chief_series

    for G, pi in ((sym(4), PiSet([2])), (alt5(), PiSet([2])), (d10(), PiSet([5]))):
        s = chief_series(G)
        chief_ok = all(
            pi.is_pi_number(f["order"]) or pi.is_pi_prime_number(f["order"])
            for f in s.factors
        )
        assert chief_ok == is_pi_separable(G, pi)


def test_hall_sym4():
    G = sym(4)
    H = hall_subgroup(G, PiSet([2]))
    assert H.order == 8
    assert hall_subgroup(G, PiSet([2, 3])).order == 24


def test_hall_a5_2_5_is_none():
    assert hall_subgroup(alt5(), PiSet([2, 5])) is None


def test_hall_order_contract():
    cases = [
        (sym(4), PiSet([2])),
        (sym(4), PiSet([3])),
        (semidirect_by_power_map(11, 3), PiSet([5])),
        (semidirect_by_power_map(11, 3), PiSet([11])),
        (direct_product(sym(3), d10()), PiSet([2, 3])),
        (direct_product(sym(3), semidirect_by_power_map(11, 3)), PiSet([2, 3, 11])),
    ]
    for G, pi in cases:
        H = hall_subgroup(G, pi)
        assert H is not None
        assert H.order == pi_part(G.order, pi)
        index = G.order // H.order
        assert all(index % p != 0 for p in pi)


def test_hall_conjugates_sym4():
    G = sym(4)
    H = hall_subgroup(G, PiSet([2]))
    assert len(hall_conjugates(G, PiSet([2]), H)) == 3


def test_hall_conjugates_normal_hall():
    G = sym(3)
    H = hall_subgroup(G, PiSet([3]))
    assert len(hall_conjugates(G, PiSet([3]), H)) == 1


def test_hall_conjugates_complete_at_small_order():
    # exhaustive subgroup search agrees with the conjugacy orbit
    cases = [
        (sym(4), PiSet([2])),
        (sym(4), PiSet([3])),
        (sym(3), PiSet([3])),
        (semidirect_by_power_map(11, 3), PiSet([5])),
        (direct_product(sym(3), cyclic(5)), PiSet([2, 3])),
    ]
    for G, pi in cases:
        H = hall_subgroup(G, pi)
        conj = hall_conjugates(G, pi, H)
        target = pi_part(G.order, pi)
        via_search = {
            S.element_set() for S in all_subgroups(G) if S.order == target
        }
        assert via_search == {C.element_set() for C in conj}


def test_decomposability_paper_examples():
    G1 = direct_product(sym(3), semidirect_by_power_map(11, 3))
    assert not is_pi_decomposable(G1, PiSet([2, 3, 11]))
    G2 = direct_product(d8(), d10())
    assert not is_pi_decomposable(G2, PiSet([2]))
    G3 = direct_product(sym(3), cyclic(5))
    assert is_pi_decomposable(G3, PiSet([2, 3]))


def test_wielandt_lemma_on_corpus():
    cases = [
        (sym(4), PiSet([2])),
        (direct_product(d8(), d10()), PiSet([2])),
        (direct_product(sym(3), cyclic(5)), PiSet([2, 3])),
    ]
    for G, pi in cases:
        H = hall_subgroup(G, pi)
        O = o_pi(G, pi)
        for x in H.elements():
            if pi.is_pi_number(class_size(G, x)):
                assert x in O


def test_iterated_radical_sym4():
    G = sym(4)
    # O_{2,2'}: V4 then pull back the odd part of Sym4/V4 (A4/V4 = C3)
    N = iterated_radical(G, [PiSet([2]), PiSet([3])])
    assert N.order == 12
