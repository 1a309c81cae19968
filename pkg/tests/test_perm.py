import pytest
from hypothesis import given, strategies as st

from pistruct.perm import ParseError, Perm, format_permutation, parse_permutation


def test_parse_two_transpositions():
    p = parse_permutation("(1,2)(3,4)", 4)
    assert list(p.images) == [2, 1, 4, 3]


def test_parse_identity():
    p = parse_permutation("()", 5)
    assert p == Perm.identity(5)


def test_four_cycle_squared_is_double_transposition():
    p = parse_permutation("(1,3,2,4)", 4)
    assert p * p == parse_permutation("(1,2)(3,4)", 4)


def test_identity_prints_as_unit():
    assert str(Perm.identity(3)) == "()"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("(1,2", "expected ')'"),
        ("(1)", "at least two points"),
        ("(1,2)(2,3)", "repeated point 2"),
        ("(1,5)", "exceeds degree"),
        ("(1, 2)", "expected a point"),
        ("1,2", "expected '('"),
        ("(01,2)", "malformed point"),
        ("", "empty permutation"),
    ],
)
def test_parse_errors_carry_position(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_permutation(text, 4)
    assert fragment in str(err.value)
    assert err.value.position >= 0


def test_not_a_bijection_rejected():
    with pytest.raises(ValueError):
        Perm([1, 1, 3])


perms = st.permutations(range(1, 7)).map(Perm)


@given(perms)
def test_print_parse_round_trip(p):
    assert parse_permutation(format_permutation(p), 6) == p


@given(perms, perms, perms)
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms)
def test_two_sided_inverse(p):
    assert (p * ~p).is_identity()
    assert (~p * p).is_identity()


@given(perms)
def test_order_annihilates(p):
    assert (p ** p.order()).is_identity()


@given(perms, perms)
def test_conjugation_matches_definition(x, g):
    assert x ** g == (~g) * x * g
