import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcodes.asl2r import (
    MODULI,
    GF2m,
    affmain_check,
    asl_order,
    build_G,
    build_matrices,
    check_sw_nonconjugate,
    complement_class_count,
    det,
    field_for,
    fixed_point_audit,
    iota_is_bijection,
    mat_identity,
    mat_mul,
    mat_pow,
    matrix_closure,
    natural_asl2,
    natural_translation_failures,
    pairwise_inequivalent,
    presentation_check,
    relation_failures,
    structure_failures,
    sw_conjugate,
)
from permcodes.groups import GroupTooLarge


@pytest.mark.parametrize("f", [2, 3, 4])
def test_field_generator(f):
    F = field_for(f)
    r = F.r
    assert F.mult_order(F.a) == r - 1
    assert all(F.pow(F.a, k) != 1 for k in range(1, r - 1))
    b = F.inv(1 ^ F.mul(F.a, F.a))
    assert F.mul(1 ^ F.mul(F.a, F.a), b) == 1


@pytest.mark.parametrize("f", [2, 3])
def test_field_axioms_exhaustive(f):
    F = field_for(f)
    E = list(F.elements)
    for x, y, z in itertools.product(E, repeat=3):
        assert F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z)
        assert F.mul(x, y ^ z) == F.mul(x, y) ^ F.mul(x, z)
    for x in E[1:]:
        assert F.mul(x, F.inv(x)) == 1


@given(st.integers(0, 15), st.integers(0, 15))
def test_field_commutative_gf16(x, y):
    F = field_for(4)
    assert F.mul(x, y) == F.mul(y, x)


def test_f1_rejected():
    with pytest.raises(ValueError):
        field_for(1)
    with pytest.raises(ValueError):
        GF2m(5)


@pytest.mark.parametrize("f", [2, 3, 4])
def test_matrices(f):
    F = field_for(f)
    for w in F.elements:
        m = build_matrices(f, w)
        for M in (m.x, m.y, m.z, m.X, m.Y, m.Z):
            assert det(F, M) == 1
        assert mat_pow(F, m.Y, 2) == mat_identity(3)
        assert mat_pow(F, m.Z, 3) == mat_identity(3)
    m = build_matrices(f, 0)
    assert mat_pow(F, m.y, 2) == mat_identity(2)
    assert mat_pow(F, m.z, 3) == mat_identity(2)
    assert mat_pow(F, mat_mul(F, m.x, m.z), 2) == mat_identity(2)
    assert mat_pow(F, mat_mul(F, m.y, m.z), 2) == mat_identity(2)


@pytest.mark.parametrize("f", [2, 3, 4])
def test_presentation(f):
    assert relation_failures(f) == []
    assert presentation_check(f)


def test_sl2_order_f2():
    F = field_for(2)
    m = build_matrices(2, 0)
    assert len(matrix_closure(F, [m.x, m.y, m.z], cap=1000)) == 60


@pytest.mark.parametrize("f,order", [(2, 960), (3, 32256)])
def test_g_order(f, order):
    assert asl_order(f) == order
    assert build_G(f).G.order == order


def test_f4_needs_guard():
    from permcodes.asl2r import ASLConstruction

    with pytest.raises(GroupTooLarge):
        ASLConstruction(4)


@pytest.mark.parametrize("f", [2, 3])
def test_structure(f):
    assert structure_failures(f) == []
    assert natural_translation_failures(f) == []
    C = build_G(f)
    for w in C.field.elements:
        assert C.E & C.S[w] == frozenset([C.G.identity])
        assert len(C.S[w]) == C.r * (C.r ** 2 - 1)


@pytest.mark.parametrize("f", [2, 3])
def test_sw_nonconjugate(f):
    assert check_sw_nonconjugate(f)
    assert sw_conjugate(build_G(f), 1, 1)


def test_complement_count_f2():
    assert complement_class_count(2) == 4


@pytest.mark.parametrize("f", [2, 3])
def test_twisted_reps(f):
    C = build_G(f)
    reps = C.reps
    assert len(reps) == C.r
    assert all(rho.degree == C.r ** 2 and rho.is_two_transitive() for rho in reps)
    assert pairwise_inequivalent(f)
    assert all(iota_is_bijection(C, w) for w in C.field.elements)


@pytest.mark.parametrize("f", [2, 3])
def test_fixed_point_audit(f):
    a = fixed_point_audit(f)
    r = 2 ** f
    assert a.ok, a.violations
    assert set(a.fix_counts) == {0, 1, r}
    C = build_G(f)
    orders = C.G.element_orders
    for rho in C.reps:
        fixes = rho.fixed_counts
        assert fixes[0] == r * r
        assert all(fixes[i] == 1 for i in range(1, C.G.order) if orders[i] == 3)


def test_fixed_point_counts_frozen():
    assert fixed_point_audit(2).fix_counts == {0: 195, 1: 704, 4: 60}


@pytest.mark.parametrize("f", [2, 3])
def test_twisted_and_repetition_distributions_agree(f):
    rep = affmain_check(f)
    assert rep.ok
    assert all(d == rep.twisted for d in rep.repetition)
    nat = natural_asl2(f)
    assert nat.order == asl_order(f)
    assert rep.delta_tw == 2 ** f * rep.natural_minimal_degree


def test_affine_distribution_f2_frozen():
    assert affmain_check(2).twisted == {0: 1, 48: 60, 60: 704, 64: 195}
