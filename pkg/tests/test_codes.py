import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permcodes.codes import (
    Code,
    DistanceDistribution,
    NontrivialKernel,
    delta_rep_lower_bound,
    distance_invariance_check,
    hamming_distance,
    inner_distribution,
    min_distance_bruteforce,
    min_distance_via_supports,
    passive_form,
    permutation_code,
    repetition_code,
    repetition_distances,
    tuple_word,
    twisted_code,
)
from permcodes.groups import coset_action, symmetric_group
from permcodes.perm import Permutation
from permcodes.reps import tuple_kernel


def test_passive_form_examples(s6):
    G, nat = s6.group, s6.pool[0]
    assert passive_form(G.identity, nat) == (1, 2, 3, 4, 5, 6)
    assert passive_form(Permutation.parse("(1,2)", 6), nat) == (2, 1, 3, 4, 5, 6)


def test_passive_form_distance_is_support_m12(m12):
    G = m12.group
    rng = random.Random(7)
    for rho in m12.pool:
        base = passive_form(G.identity, rho)
        for i in rng.sample(range(G.order), 100):
            t = G.elements[i]
            assert hamming_distance(base, passive_form(t, rho)) == rho.support(t)


def test_twisted_distance_is_support_sum(asl32):
    G = asl32.group
    rng = random.Random(3)
    base = tuple_word(G.identity, asl32.pool)
    for i in rng.sample(range(G.order), 100):
        t = G.elements[i]
        assert hamming_distance(base, tuple_word(t, asl32.pool)) == sum(r.support(t) for r in asl32.pool)


def test_twisted_code_basics(s6):
    G = s6.group
    C = twisted_code(G, s6.pool)
    assert (len(C), C.length, C.q) == (720, 12, 6)
    assert C.is_frequency_array(2)
    assert twisted_code(G, [s6.pool[0]]) == permutation_code(G, s6.pool[0])
    rho = s6.pool[1]
    assert twisted_code(G, [rho, rho, rho]) == repetition_code(G, rho, 3)
    with pytest.raises(ValueError):
        twisted_code(G, [])


def test_repetition_examples(s6, a6):
    G = s6.group
    assert repetition_code(G, s6.pool[0], 1) == permutation_code(G, s6.pool[0])
    assert min_distance_bruteforce(repetition_code(G, s6.pool[0], 2)) == 4
    assert min_distance_bruteforce(repetition_code(a6.group, a6.pool[0], 2)) == 6
    with pytest.raises(ValueError):
        repetition_code(G, s6.pool[0], 0)


def test_hamming_distance_examples():
    assert hamming_distance((1, 2, 3), (1, 2, 3)) == 0
    assert hamming_distance((1, 2, 3), (2, 1, 3)) == 2
    with pytest.raises(ValueError):
        hamming_distance((1, 2), (1, 2, 3))


def test_formula_examples(s6, asl32, s6_12):
    assert min_distance_via_supports(s6.group, s6.pool) == 8
    assert min_distance_via_supports(asl32.group, asl32.pool) == 12
    assert min_distance_via_supports(s6_12.group, s6_12.pool) == 224


def test_formula_rejects_kernel():
    G = symmetric_group(3)
    triv = coset_action(G, G.elements)
    with pytest.raises(NontrivialKernel):
        min_distance_via_supports(G, [triv])


def test_bruteforce_examples(a6):
    assert min_distance_bruteforce(Code([[1, 2, 3]], 3)) == 0
    assert min_distance_bruteforce(twisted_code(a6.group, a6.pool)) == 8


def test_bruteforce_cap_needs_provenance():
    rows = np.array(list(itertools.product(range(1, 4), repeat=7)))
    with pytest.raises(ValueError, match="2000"):
        min_distance_bruteforce(Code(rows, 3))


def test_base_scan_path(m12):
    G = m12.group
    C = twisted_code(G, m12.pool)
    assert len(C) == 95040
    assert min_distance_bruteforce(C) == min_distance_via_supports(G, m12.pool) == 16


def test_m12_distributions(m12):
    G = m12.group
    tw = inner_distribution(twisted_code(G, m12.pool)).nonzero()
    assert tw == {0: 1, 16: 495, 18: 1760, 20: 15444, 22: 56880, 24: 20460}
    for rho in m12.pool:
        rep = inner_distribution(repetition_code(G, rho, 2)).nonzero()
        assert rep == {0: 1, 16: 3465, 18: 1760, 20: 21384, 22: 33120, 24: 35310}


def test_singleton_distribution():
    d = inner_distribution(Code([[2, 1, 3]], 3))
    assert d.counts == (1, 0, 0, 0)
    assert d.min_distance() == 0


def test_non_invariant_code_rational_distribution():
    C = Code([[1, 1], [1, 2], [2, 1]], 2)
    assert not distance_invariance_check(C)
    d = inner_distribution(C)
    assert d.counts == (1, Fraction(4, 3), Fraction(2, 3))
    assert not d.is_integral()


def test_distribution_csv():
    d = DistanceDistribution((1, 0, 3))
    assert d.to_csv() == "distance,count\n0,1\n2,3\n"


def test_lower_bound_examples(s6, asl32, s6_12):
    assert delta_rep_lower_bound(s6.group, s6.pool) == 4
    assert delta_rep_lower_bound(asl32.group, asl32.pool) == 8
    assert delta_rep_lower_bound(s6_12.group, s6_12.pool) == 176
    assert sorted(repetition_distances(s6_12.group, s6_12.pool)) == [176, 176, 192, 192]


def test_lower_bound_zero_for_trivial_member(s6):
    G = s6.group
    triv = coset_action(G, G.elements)
    assert delta_rep_lower_bound(G, [triv]) == 0
    assert repetition_distances(G, [triv]) == [0]


def test_lower_bound_with_kernel():
    # S4 on the cosets of the normal Klein subgroup is regular S3: kernel of order 4
    from permcodes.groups import subgroups_of_order

    G = symmetric_group(4)
    V = next(H for H in subgroups_of_order(G, 4, up_to_conjugacy=False) if G.is_normal(H))
    rho = coset_action(G, V)
    assert len(rho.kernel()) == 4
    assert rho.minimal_degree() == 0 and rho.least_nonzero_support() == 6
    nat = coset_action(G, G.subgroup([Permutation.parse("(1,2)(3,4)", 4), Permutation.parse("(1,2)", 4)]))
    reps = [rho, nat]
    assert delta_rep_lower_bound(G, reps) == 0
    assert min_distance_bruteforce(twisted_code(G, reps)) >= 0


def test_code_csv():
    C = Code([[2, 1], [1, 2]], 2)
    assert C.to_csv() == "1,2\n2,1\n"
    assert (1, 2) in C and (1, 1) not in C


def test_code_validation():
    with pytest.raises(ValueError):
        Code([[0, 1]], 2)
    with pytest.raises(ValueError):
        Code([[1, 3]], 2)


def test_equal_supports_give_equal_distributions(asl24, psl32):
    for b in (asl24, psl32):
        G = b.group
        tw = inner_distribution(twisted_code(G, b.pool))
        r = len(b.pool)
        for rho in b.pool:
            assert inner_distribution(repetition_code(G, rho, r)) == tw


# -- properties on small groups -------------------------------------------------


@st.composite
def tuples_on_s4(draw):
    G = symmetric_group(4)
    k = draw(st.integers(1, 3))
    reps = []
    degree = draw(st.sampled_from([4, 6, 12]))
    subs = {4: 6, 6: 4, 12: 2}[degree]
    from permcodes.groups import subgroups_of_order

    pool = [coset_action(G, H) for H in subgroups_of_order(G, subs)]
    for _ in range(k):
        reps.append(draw(st.sampled_from(pool)))
    return G, reps


@settings(max_examples=40, deadline=None)
@given(tuples_on_s4())
def test_proposition_properties(pair):
    G, reps = pair
    C = twisted_code(G, reps)
    K = tuple_kernel(reps)
    assert C.is_frequency_array(len(reps))
    assert len(C) * len(K) == G.order
    assert distance_invariance_check(C)
    d = min_distance_bruteforce(C)
    if len(K) == 1:
        assert d == min_distance_via_supports(G, reps)
    assert d >= delta_rep_lower_bound(G, reps)


@settings(max_examples=20, deadline=None)
@given(tuples_on_s4(), st.data())
def test_regular_diagonal_action(pair, data):
    G, reps = pair
    K = tuple_kernel(reps)
    t = data.draw(st.sampled_from(G.elements))
    for s in G.elements[:6]:
        w = tuple_word(s, reps)
        moved = tuple(int(x) for x in _apply_blocks(w, t, reps))
        assert moved == tuple_word(s * t, reps)
        assert (moved == w) == (t in K)


def _apply_blocks(word, t, reps):
    q = reps[0].degree
    out = []
    for k, rho in enumerate(reps):
        img = rho.image_of(t).images
        out.extend(img[a - 1] + 1 for a in word[k * q:(k + 1) * q])
    return out


words = st.lists(st.integers(1, 4), min_size=5, max_size=5)


@given(words, words, words)
def test_hamming_metric(u, v, w):
    assert hamming_distance(u, v) == hamming_distance(v, u)
    assert (hamming_distance(u, v) == 0) == (u == v)
    assert hamming_distance(u, w) <= hamming_distance(u, v) + hamming_distance(v, w)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(1, 3), min_size=4, max_size=4), min_size=1, max_size=12))
def test_distribution_sums(rows):
    C = Code(rows, 3)
    d = inner_distribution(C)
    assert d.counts[0] == 1
    assert sum(d.counts) == len(C)
    delta = min_distance_bruteforce(C)
    assert all(d.counts[i] == 0 for i in range(1, delta or 1))
