import pytest
from hypothesis import given, strategies as st

from hallperm.errors import DegreeMismatch
from hallperm.perm import Permutation, compose

from conftest import perm


def test_compose_is_left_to_right():
    p = perm("(0 1)", 3)
    q = perm("(1 2)", 3)
    # (p*q)(x) = q(p(x)): 0 -> 1 -> 2
    assert (p * q)[0] == 2
    assert (p * q) == perm("(0 2 1)", 3)
    assert compose(p, q) == p * q


def test_compose_identity_and_inverse():
    p = perm("(0 3 1)(2 4)", 5)
    e = Permutation.identity(5)
    assert p * e == p
    assert e * p == p
    assert p * ~p == e
    assert ~p * p == e


def test_compose_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        perm("(0 1)", 3) * perm("(0 1)", 4)


def test_conjugation_convention():
    # h^g = g^-1 * h * g
    h = perm("(0 1 2)", 4)
    g = perm("(2 3)", 4)
    assert h.conj(g) == ~g * h * g
    assert h.conj(g) == perm("(0 1 3)", 4)


def test_parse_and_format_round_trip():
    for text in ["()", "(0 1)", "(0 1 2)(3 4)", "(1 4)(2 3)"]:
        p = Permutation.parse(text, 5)
        assert Permutation.parse(p.cycle_string(), 5) == p
    assert Permutation.parse("()", 3).is_identity
    assert Permutation.parse("(0,1,2)", 3) == perm("(0 1 2)", 3)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Permutation.parse("(0 1", 3)
    with pytest.raises(ValueError):
        Permutation.parse("0 1 2", 3)
    with pytest.raises(ValueError):
        Permutation.parse("(0 5)", 3)
    with pytest.raises(ValueError):
        Permutation.parse("(0 1)(1 2)", 3)


def test_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((0, 1, 3))


def test_order_and_cycles():
    p = perm("(0 1 2)(3 4)", 6)
    assert p.order() == 6
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.support() == (0, 1, 2, 3, 4)
    assert Permutation.identity(4).order() == 1
    assert (p ** 6).is_identity
    assert p ** -1 == ~p


perms6 = st.permutations(range(6)).map(lambda im: Permutation(tuple(im), check=False))


@given(perms6, perms6, perms6)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms6)
def test_two_sided_identity_and_inverse(a):
    e = Permutation.identity(6)
    assert a * e == a == e * a
    assert a * ~a == e == ~a * a


@given(perms6, perms6)
def test_conj_via_products(h, g):
    assert h.conj(g) == ~g * h * g


@given(perms6, perms6, perms6)
def test_conj_is_a_right_action(h, g1, g2):
    assert h.conj(g1 * g2) == h.conj(g1).conj(g2)
