import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permcodes.perm import (
    Permutation,
    act,
    compose,
    conjugate,
    cycle_type,
    fixed_points,
    inverse,
    order,
    support,
    to_cycle_string,
)


@st.composite
def perms(draw, degree=None):
    n = degree if degree is not None else draw(st.integers(1, 9))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def perm_pairs(draw):
    n = draw(st.integers(1, 9))
    return draw(perms(n)), draw(perms(n))


def P(text, n):
    return Permutation.parse(text, n)


def test_compose_right_action_on_three_points():
    # first (1 2), then (2 3): 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert compose(P("(1,2)", 3), P("(2,3)", 3)) == P("(1,3,2)", 3)


def test_compose_matches_hand_oracle_on_s3():
    # independent oracle: compose via explicit dicts of 1-based points
    def as_map(p):
        return {i + 1: p.images[i] + 1 for i in range(p.degree)}

    elems = [Permutation(x) for x in itertools.permutations(range(3))]
    for p, s in itertools.product(elems, repeat=2):
        mp, ms = as_map(p), as_map(s)
        want = {x: ms[mp[x]] for x in (1, 2, 3)}
        assert as_map(compose(p, s)) == want


def test_identity_and_inverse_cases():
    p = P("(1,2,3)(4,6)", 6)
    e = Permutation.identity(6)
    assert compose(e, p) == p
    assert compose(p, inverse(p)) == e


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([])


def test_support_examples():
    assert support(Permutation.identity(6)) == frozenset()
    assert len(support(P("(2,5)", 6))) == 2
    assert len(support(P("(1,2,3,4,5,6)", 6))) == 6


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(6)) == (1,) * 6
    assert sorted(cycle_type(P("(1,2)(3,4,5)", 6))) == [1, 2, 3]
    t = P("(1,2)(3,4)(5,6)(7,8)", 12)
    assert cycle_type(t) == (2, 2, 2, 2) + (1,) * 4
    assert len(support(t)) == 8


def test_order_examples():
    assert order(Permutation.identity(5)) == 1
    assert order(P("(1,2,3)", 3)) == 3
    assert order(P("(1,2)(3,4,5)", 5)) == 6


def test_parse_print_examples():
    assert to_cycle_string(Permutation.identity(4)) == "()"
    assert P("()", 4) == Permutation.identity(4)
    assert to_cycle_string(P("(3,4,5)(1,2)", 6)) == "(1,2)(3,4,5)"
    for bad in ("(1,2", "1,2", "(1,1)", "(0,1)", "(1,7)"):
        with pytest.raises(ValueError):
            P(bad, 6)


def test_immutable():
    p = Permutation.identity(3)
    with pytest.raises(AttributeError):
        p.images = (1, 0, 2)


@given(perms())
def test_inverse_law(p):
    e = Permutation.identity(p.degree)
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e


@given(perms())
def test_support_counts_one_cycles(p):
    assert len(support(p)) == p.degree - cycle_type(p).count(1)
    assert len(support(p)) + len(fixed_points(p)) == p.degree
    assert sum(cycle_type(p)) == p.degree


@given(perm_pairs())
def test_conjugation_permutes_support(pair):
    p, a = pair
    moved = support(conjugate(p, a))
    assert moved == frozenset(act(a, i) for i in support(p))


@given(perm_pairs())
def test_right_action(pair):
    p, s = pair
    ps = compose(p, s)
    for i in range(p.degree):
        assert act(ps, i) == act(s, act(p, i))


@given(perms())
def test_cycle_string_round_trip(p):
    assert Permutation.parse(to_cycle_string(p), p.degree) == p


@given(perms())
def test_order_is_least_power(p):
    k = order(p)
    e = Permutation.identity(p.degree)
    assert p ** k == e
    assert all(p ** j != e for j in range(1, k))


@settings(max_examples=50)
@given(st.data())
def test_associativity(data):
    n = data.draw(st.integers(1, 7))
    a, b, c = (data.draw(perms(n)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
