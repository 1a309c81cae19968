import math

import pytest

from pistruct.perm import Perm, parse_permutation
from pistruct.group import (
    CapExceeded,
    DegreeMismatch,
    NotNormal,
    PermGroup,
    Subgroup,
    centraliser,
    direct_product,
    group_from_generators,
    intersect,
    multiplicative_order,
    normaliser,
    quotient,
    semidirect_by_power_map,
    wreath_natural,
)


def perm(text, degree):
    return parse_permutation(text, degree)


def brute_force_elements(degree, gens):
    """Independent enumeration oracle: closure under right multiplication."""
    elems = {Perm.identity(degree).images}
    frontier = [Perm.identity(degree)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y.images not in elems:
                elems.add(y.images)
                frontier.append(y)
    return elems


def sym(n):
    if n == 1:
        return PermGroup(1, ())
    gens = [perm("(1,2)", n), Perm(list(range(2, n + 1)) + [1])]
    return PermGroup(n, gens)


def test_sym4_order():
    G = group_from_generators(4, [perm("(1,2)", 4), perm("(1,2,3,4)", 4)])
    assert G.order == 24


def test_cyclic_from_four_cycle():
    G = group_from_generators(4, [perm("(1,3,2,4)", 4), perm("(1,2)(3,4)", 4)])
    assert G.order == 4


def test_empty_generators_trivial():
    G = group_from_generators(7, [])
    assert G.order == 1
    assert G.elements() == [Perm.identity(7)]


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        group_from_generators(4, [perm("(1,2)", 3)])


@pytest.mark.parametrize(
    "degree, texts",
    [
        (4, ["(1,2)", "(1,2,3,4)"]),
        (5, ["(1,2,3,4,5)", "(3,4,5)"]),
        (6, ["(1,2,3)", "(2,3)", "(1,4)(2,5)(3,6)"]),
        (4, ["(1,3,2,4)", "(1,2)(3,4)"]),
        (8, ["(1,2,3,4)", "(1,3)", "(5,6,7,8)", "(5,7)"]),
    ],
)
def test_bsgs_order_matches_brute_force(degree, texts):
    gens = [perm(t, degree) for t in texts]
    G = group_from_generators(degree, gens)
    assert G.order == len(brute_force_elements(degree, gens))


def test_elements_unique_and_complete():
    G = sym(4)
    els = G.elements()
    assert len(els) == 24
    assert len(set(els)) == 24
    assert set(e.images for e in els) == brute_force_elements(4, G.generators)


def test_elements_cap():
    with pytest.raises(CapExceeded):
        sym(4).elements(cap=10)


def test_membership():
    G = group_from_generators(4, [perm("(1,3,2,4)", 4)])
    assert perm("(1,2)(3,4)", 4) in G
    assert perm("(1,2)", 4) not in G


def test_subgroup_validation():
    G = sym(3)
    with pytest.raises(Exception):
        Subgroup(direct_product(G, G), [perm("(1,4)", 6)])


def test_intersect_coprime_cyclics():
    G = sym(3)
    H = G.subgroup([perm("(1,2)", 3)])
    K = G.subgroup([perm("(1,2,3)", 3)])
    assert intersect(H, K).order == 1


def test_intersect_self():
    G = sym(3)
    H = G.subgroup([perm("(1,2)", 3)])
    assert intersect(H, H).order == 2


def test_sylow2_meet_alt4_is_v4():
    G = sym(4)
    syl = G.subgroup([perm("(1,2,3,4)", 4), perm("(1,3)", 4)])
    assert syl.order == 8
    a4 = G.subgroup([perm("(1,2,3)", 4), perm("(2,3,4)", 4)])
    assert a4.order == 12
    meet = intersect(syl, a4)
    assert meet.order == 4
    assert perm("(1,2)(3,4)", 4) in meet and perm("(1,3)(2,4)", 4) in meet


def test_centraliser_of_three_cycle():
    G = sym(3)
    C = centraliser(G, [perm("(1,2,3)", 3)])
    assert C.order == 3


def test_centraliser_of_identity_is_whole_group():
    G = sym(4)
    assert centraliser(G, [Perm.identity(4)]).order == 24


def test_normaliser_of_frobenius_complement_self_normalising():
    G = semidirect_by_power_map(11, 3)
    assert G.order == 55
    b = None
    for x in G.elements():
        if x.order() == 5:
            b = x
            break
    H = G.subgroup([b])
    assert normaliser(G, H).order == 5


def test_quotient_sym4_by_v4():
    G = sym(4)
    V = G.subgroup([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
    q = quotient(G, V)
    assert q.image.order == 6
    # homomorphism on all generator pairs
    for x in G.generators:
        for y in G.generators:
            assert q.forward(x * y) == q.forward(x) * q.forward(y)
    # kernel is exactly V
    for x in G.elements():
        assert q.forward(x).is_identity() == (x in V)


def test_quotient_by_whole_group():
    G = sym(4)
    q = quotient(G, G.whole_subgroup())
    assert q.image.order == 1


def test_quotient_by_trivial_is_regular():
    G = sym(4)
    q = quotient(G, G.trivial_subgroup())
    assert q.image.order == 24
    assert q.image.degree == 24


def test_quotient_requires_normality():
    G = sym(3)
    with pytest.raises(NotNormal):
        quotient(G, G.subgroup([perm("(1,2)", 3)]))


def test_quotient_coset_cap():
    G = sym(4)
    with pytest.raises(CapExceeded):
        quotient(G, G.trivial_subgroup(), coset_cap=10)


def test_semidirect_11_3():
    G = semidirect_by_power_map(11, 3)
    assert G.order == 55
    assert not G.is_abelian()
    assert len(brute_force_elements(11, G.generators)) == 55


def test_semidirect_7_2():
    assert semidirect_by_power_map(7, 2).order == 21
    assert multiplicative_order(2, 7) == 3


def test_semidirect_rejects_non_unit():
    with pytest.raises(ValueError):
        semidirect_by_power_map(10, 5)


def test_direct_product_d8_d10():
    d8 = group_from_generators(4, [perm("(1,2,3,4)", 4), perm("(1,3)", 4)])
    d10 = group_from_generators(5, [perm("(1,2,3,4,5)", 5), perm("(2,5)(3,4)", 5)])
    G = direct_product(d8, d10)
    assert G.degree == 9
    assert G.order == 80


def test_wreath_sym3_c2():
    G = wreath_natural(sym(3), 2)
    assert G.degree == 6
    assert G.order == 72


def test_random_element_is_member_and_deterministic():
    from random import Random

    G = sym(4)
    a = [G.random_element(Random(7)) for _ in range(5)]
    b = [G.random_element(Random(7)) for _ in range(5)]
    assert a == b
    assert all(x in G for x in a)
