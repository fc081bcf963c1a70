import pytest

from depthzero.cyclo import CycInt, root_of_unity
from depthzero.dualgroup import (
    ALL_ROOTS,
    LONG_SIMPLE,
    POSITIVE_ROOTS,
    SHORT_SIMPLE,
    Pinning,
    build_pinning,
    coroot_conjugation_check,
    cover_class_values,
    coxeter_lift_fourth_check,
    dual_torus_conjugate,
    extract_coroot_exponents,
    lift_independence_check,
    longest_lift_square_check,
    reflection_sign_table,
    reflection_square_check,
    sample_torsion_exponents,
    sp_det,
    sp_eq,
    sp_mul,
    twisted_frobenius_power,
    weyl_action_checks,
)


@pytest.fixture(scope="module")
def pin():
    return build_pinning(24)


def test_pinning_constructs_and_verifies(pin):
    # construction itself runs the symplectic/Cartan/coroot checks
    assert pin.order == 24
    one = CycInt.one(24)
    for root in ALL_ROOTS:
        x = pin.root_subgroup(root, one)
        assert pin.is_symplectic(x)
        assert sp_det(x) == one


def test_root_subgroup_at_zero_is_identity(pin):
    z = CycInt.zero(24)
    for root in ALL_ROOTS:
        assert sp_eq(pin.root_subgroup(root, z), pin.identity)


def test_reflection_geometry(pin):
    assert Pinning.reflect_root(LONG_SIMPLE, SHORT_SIMPLE) == (1, 1)
    assert Pinning.reflect_root(SHORT_SIMPLE, (1, 1)) == (1, 1)
    assert Pinning.reflect_root(LONG_SIMPLE, (1, 1)) == SHORT_SIMPLE
    assert Pinning.reflect_root(SHORT_SIMPLE, LONG_SIMPLE) == (1, 2)
    assert Pinning.reflect_root(SHORT_SIMPLE, (1, 2)) == LONG_SIMPLE


def test_reflection_lift_squares(pin):
    assert reflection_square_check(pin)
    # spot-check the simple ones explicitly
    half = pin.order // 2
    for root in (LONG_SIMPLE, SHORT_SIMPLE):
        n = pin.n_elem(root)
        assert sp_eq(sp_mul(n, n), pin.coroot_matrix(root, half))


def test_lifts_normalize_torus(pin):
    for root in POSITIVE_ROOTS:
        n = pin.n_elem(root)
        conj = dual_torus_conjugate(pin, n, 3, 7)
        # lands back in the torus (extraction succeeds) and is a lattice map
        assert isinstance(conj, tuple)


def test_coroot_conjugation(pin):
    assert coroot_conjugation_check(pin, exponents=list(range(1, 21)))


def test_sign_table_and_triple_product(pin):
    table, signed = reflection_sign_table(pin)
    assert all(v in (1, -1) for v in table.values())
    assert signed == -1
    # fixed-root cases are consistent with direct conjugation: sign +1
    assert table[(SHORT_SIMPLE, (1, 1))] in (1, -1)


def test_headline_lift_identities(pin):
    assert longest_lift_square_check(pin)
    assert coxeter_lift_fourth_check(pin)
    # the longest lift is the square of the Coxeter lift
    assert sp_eq(pin.longest_lift(), sp_mul(pin.coxeter_lift(), pin.coxeter_lift()))


def test_twisted_power_values(pin):
    half = pin.order // 2
    # torus-1 direction: long_coroot(1) short_coroot(-1)
    assert twisted_frobenius_power(pin, 1, 0, 0) == (0, half)
    assert twisted_frobenius_power(pin, 1, 5, 17) == (0, half)
    # torus-2 direction: the same coroot value, reached by the fourth power
    assert twisted_frobenius_power(pin, 2, 0, 0) == (0, half)
    assert twisted_frobenius_power(pin, 2, 9, 2) == (0, half)
    with pytest.raises(ValueError):
        twisted_frobenius_power(pin, 3, 0, 0)


def test_lift_independence_sampled(pin):
    assert lift_independence_check(pin, 1, count=60, seed=0)
    assert lift_independence_check(pin, 2, count=60, seed=1)


def test_torsion_sampler_orders():
    samples = sample_torsion_exponents(24, 50, seed=3)
    from math import gcd

    for a, b in samples:
        order = 24 // gcd(gcd(a, b), 24)
        assert order in (2, 3, 4, 8, 12)


def test_weyl_action_on_dual_torus(pin):
    assert weyl_action_checks(pin)
    # inversion, directly
    nhat = pin.longest_lift()
    assert dual_torus_conjugate(pin, nhat, 5, 9) == (19, 15)


def test_extract_coroot_exponents_roundtrip(pin):
    for a, b in ((0, 0), (1, 0), (0, 1), (7, 13), (23, 23)):
        m = pin.torus_matrix(a, b)
        assert extract_coroot_exponents(pin, m) == (a, b)


def test_cover_class_values_both_kinds():
    v1 = cover_class_values(1)
    assert v1 == {(0, 0): 1, (1, 0): 1, (0, 1): -1, (1, 1): -1}
    # multiplicativity of the table
    assert v1[(1, 1)] == v1[(1, 0)] * v1[(0, 1)]
    v2 = cover_class_values(2)
    assert v2 == {0: 1, 1: -1}


def test_products_preserve_form(pin):
    words = [
        sp_mul(pin.n_elem(LONG_SIMPLE), pin.n_elem(SHORT_SIMPLE)),
        sp_mul(pin.coxeter_lift(), pin.n_elem((1, 1))),
        sp_mul(pin.torus_matrix(3, 5), pin.longest_lift()),
        sp_mul(pin.root_subgroup((1, 2), root_of_unity(24, 7)), pin.coxeter_lift()),
    ]
    for m in words:
        assert pin.is_symplectic(m)
        assert sp_det(m) == CycInt.one(24)


def test_alternate_cyclotomic_order():
    pin8 = build_pinning(8)
    assert longest_lift_square_check(pin8)
    assert coxeter_lift_fourth_check(pin8)
    assert twisted_frobenius_power(pin8, 1, 0, 0) == (0, 4)
