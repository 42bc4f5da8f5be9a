import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permcodes.groups import coset_action, symmetric_group
from permcodes.perm import Permutation, conjugate, cycle_type
from permcodes.reps import (
    NotAHomomorphism,
    Representation,
    RepresentationTuple,
    TrivialRepresentation,
    kernel,
    minimal_degree,
    profile_csv,
    support_profile,
    tuple_kernel,
)


def by_order_and_support(rho, order, supp):
    G = rho.source
    prof = rho.support_profile()
    return [c for c in G.conjugacy_classes if c.order == order and prof[c.index] == supp]


def test_kernel_examples(s6):
    G = s6.group
    assert kernel(s6.pool[0]) == frozenset([G.identity])
    assert kernel(coset_action(G, G.elements)) == frozenset(G.elements)


def test_order12_kernels_trivial_core_oracle(s6_12):
    G = s6_12.group
    for rho in s6_12.pool:
        H = rho.point_stabilizer(0)
        core = frozenset.intersection(*(G.conjugate_subgroup(H, g) for g in G.elements))
        assert core == frozenset([G.identity]) == kernel(rho)


def test_minimal_degree_examples(s6, a6, s6_12):
    assert [minimal_degree(r) for r in s6.pool] == [2, 2]
    assert [minimal_degree(r) for r in a6.pool] == [3, 3]
    assert min(minimal_degree(r) for r in s6_12.pool) == 44


def test_minimal_degree_trivial_rejected():
    G = symmetric_group(3)
    with pytest.raises(TrivialRepresentation):
        coset_action(G, G.elements).minimal_degree()


def test_support_profile_examples(s6, m12):
    nat, tw = s6.pool
    # a transposition class (2B-like): support 2 naturally, 6 in the twisted action
    assert len(by_order_and_support(nat, 2, 2)) == 1
    cls = by_order_and_support(nat, 2, 2)[0]
    assert tw.support_profile()[cls.index] == 6
    # triple transpositions: 6 naturally, 2 twisted
    cls = [c for c in by_order_and_support(nat, 2, 6)][0]
    assert tw.support_profile()[cls.index] == 2
    # M12 order-4 classes: supports (12, 8) and (8, 12)
    p1, p2 = (r.support_profile() for r in m12.pool)
    pairs = sorted((p1[c.index], p2[c.index]) for c in m12.group.conjugacy_classes if c.order == 4)
    assert pairs == [(8, 12), (12, 8)]
    assert p1[0] == p2[0] == 0


def test_m12_2b_cycle_type(m12):
    nat = m12.pool[0]
    (cls,) = by_order_and_support(nat, 2, 8)
    assert cls.size == 495
    assert cycle_type(cls.representative) == (2, 2, 2, 2, 1, 1, 1, 1)


def test_tuple_kernel_examples(s6, asl24):
    G = s6.group
    assert tuple_kernel(s6.pool) == frozenset([G.identity])
    triv = coset_action(G, G.elements)
    assert tuple_kernel([triv, triv]) == frozenset(G.elements)
    # oracle: intersect member kernels directly
    H = asl24.group
    inter = frozenset(H.elements)
    for rho in asl24.pool:
        inter &= frozenset(t for t in H.elements if rho.image_of(t).is_identity())
    assert inter == tuple_kernel(asl24.pool) == frozenset([H.identity])


def test_tuple_validation(s6, a6, s6_12):
    with pytest.raises(ValueError):
        RepresentationTuple([])
    with pytest.raises(ValueError):
        RepresentationTuple([s6.pool[0], a6.pool[0]])
    with pytest.raises(ValueError):
        RepresentationTuple([s6.pool[0], s6_12.pool[0]])


def test_homomorphism_check_rejects_bad_images():
    G = symmetric_group(3)
    bad = np.array([G.elements[0].images] + [G.elements[1].images] * (G.order - 1))
    with pytest.raises(NotAHomomorphism):
        Representation(G, bad).check_homomorphism()
    with pytest.raises(NotAHomomorphism):
        Representation.from_generator_images(G, [Permutation([1, 0, 2])] * len(G.generators))


def test_sign_representation_is_homomorphism():
    G = symmetric_group(4)

    def sign(g):
        odd = sum(len(c) - 1 for c in g.cycles()) % 2
        return Permutation([1, 0]) if odd else Permutation.identity(2)

    rho = Representation.from_mapping(G, sign)
    assert len(rho.kernel()) == 12


def test_profile_csv_layout(s6):
    text = profile_csv(s6.pool)
    lines = text.splitlines()
    assert lines[0] == "class,order,size,supp_1,supp_2,sum"
    assert lines[1] == "C1,1,1,0,0,0"
    assert len(lines) == 12


def test_dump_csv(s6):
    lines = s6.pool[0].dump_csv().splitlines()
    assert lines[0] == "element,image"
    assert lines[1] == '1,"()"'
    assert len(lines) == 721


def test_two_transitivity(s6, asl32, m12):
    assert all(r.is_two_transitive() for r in s6.pool + asl32.pool + m12.pool)


@st.composite
def small_reps(draw):
    n = draw(st.integers(3, 5))
    G = symmetric_group(n)
    g = draw(st.sampled_from(G.elements))
    h = draw(st.sampled_from(G.elements))
    return G, coset_action(G, G.subgroup([g, h]))


@settings(max_examples=30, deadline=None)
@given(small_reps())
def test_profile_is_class_function(pair):
    G, rho = pair
    sizes = rho.support_sizes
    for c in G.conjugacy_classes:
        assert len({int(sizes[i]) for i in c.members}) == 1
    prof = support_profile(rho)
    if not rho.is_trivial():
        assert rho.minimal_degree() == min(prof[1:])
        assert rho.least_nonzero_support() == min(int(s) for s in sizes if s > 0)
        assert (rho.minimal_degree() == 0) == (not rho.is_faithful())


@settings(max_examples=30, deadline=None)
@given(small_reps())
def test_kernel_is_normal(pair):
    G, rho = pair
    K = rho.kernel()
    for k in K:
        for g in G.generators:
            assert conjugate(k, g) in K


@settings(max_examples=30, deadline=None)
@given(small_reps(), st.data())
def test_homomorphism_property(pair, data):
    G, rho = pair
    s = data.draw(st.sampled_from(G.elements))
    t = data.draw(st.sampled_from(G.elements))
    assert rho.image_of(s * t) == rho.image_of(s) * rho.image_of(t)
    assert rho.image_of(G.identity).is_identity()
