import json

import pytest

from depthzero.characters import (
    CoverCharacter,
    DepthZeroCharacter,
    EquivarianceError,
    InertiaDatum,
    character_from_descriptor,
    character_from_inertia,
    character_from_json,
    character_to_descriptor,
    character_to_json,
    check_equivariance,
    cover_character,
    cover_weyl_conjugate,
    enumerate_characters,
    enumerate_inertia_data,
    enumerate_regular_characters,
    is_regular,
    trivial_character,
    value_order,
    weyl_conjugate,
)
from depthzero.tori import (
    coinv_mul,
    enumerate_coinvariants,
    iter_rational,
    parity_classes,
    rational_weyl_group,
    t1_coinv,
    t2_coinv,
    weyl_apply,
    weyl_inverse,
)

Q = 3


# ---------------------------------------------------------------------------
# inertia data


@pytest.mark.parametrize("kind,total", [(1, 16), (2, 10)])
def test_inertia_data_biject_with_characters(kind, total):
    data = enumerate_inertia_data(kind, Q)
    assert len(data) == total
    chars = [character_from_inertia(d) for d in data]
    # bijection, detected by evaluation on every rational element
    tables = {
        tuple(c.eval_exponent(g) for g in iter_rational(kind, Q)) for c in chars
    }
    assert len(tables) == total
    all_tables = {
        tuple(c.eval_exponent(g) for g in iter_rational(kind, Q))
        for c in enumerate_characters(kind, Q)
    }
    assert tables == all_tables


def test_trivial_datum_gives_trivial_character():
    for kind in (1, 2):
        chi = character_from_inertia(InertiaDatum(kind, Q, 0, 0))
        assert chi == trivial_character(kind, Q)


def test_non_equivariant_rejected():
    with pytest.raises(EquivarianceError):
        character_from_inertia(InertiaDatum(1, Q, 1, 0))
    with pytest.raises(EquivarianceError):
        check_equivariance(InertiaDatum(2, Q, 1, 1))


# ---------------------------------------------------------------------------
# depth-zero characters and regularity


def test_value_orders():
    assert value_order(1, 3) == 4
    assert value_order(2, 3) == 20
    assert value_order(1, 7) == 8


def test_regularity_kind2_orbit():
    chi = DepthZeroCharacter(2, 3, (1,))
    orbit = {weyl_conjugate(chi, w).exponents[0] for w in rational_weyl_group(2)}
    assert orbit == {1, 3, 9, 7}
    assert is_regular(chi)
    assert not is_regular(trivial_character(2, 3))
    assert not is_regular(trivial_character(1, 3))


def test_kind1_q3_has_no_regular_characters():
    # the full dihedral group acts on the 16 characters with orbit sizes
    # 1,1,2,4,4,4: no free orbit exists at q = 3
    assert enumerate_regular_characters(1, 3) == []
    assert len(enumerate_regular_characters(1, 5)) == 8


def test_conjugation_is_action():
    for kind in (1, 2):
        group = rational_weyl_group(kind)
        for chi in list(enumerate_characters(kind, Q))[:6]:
            for w in group:
                back = weyl_conjugate(weyl_conjugate(chi, w), weyl_inverse(w))
                assert back == chi


def test_conjugation_matches_pointwise_definition():
    for kind in (1, 2):
        vo = value_order(kind, Q)
        for chi in list(enumerate_characters(kind, Q))[:6]:
            for w in rational_weyl_group(kind):
                moved = weyl_conjugate(chi, w)
                for gamma in iter_rational(kind, Q):
                    expected = chi.eval_exponent(weyl_apply(Q, weyl_inverse(w), gamma))
                    assert moved.eval_exponent(gamma) % vo == expected % vo


# ---------------------------------------------------------------------------
# cover characters


def test_cover_values_on_kernel_classes():
    chi = DepthZeroCharacter(1, Q, (1, 2))
    cov = cover_character(chi)
    vo = value_order(1, Q)
    assert cov.eval_exponent(t1_coinv(Q, 0, 0, 1, 0)) == 0
    assert cov.eval_exponent(t1_coinv(Q, 0, 0, 0, 1)) == vo // 2
    assert cov.eval_exponent(t1_coinv(Q, 0, 0, 1, 1)) == vo // 2
    cov2 = cover_character(DepthZeroCharacter(2, Q, (1,)))
    assert cov2.eval_exponent(t2_coinv(Q, 0, 1)) == value_order(2, Q) // 2


def test_cover_restricts_to_base_through_norm():
    # on valuation-zero classes the value is the base at the norm
    from depthzero.tori import coinvariant_norm, lift_of_rational

    for kind in (1, 2):
        for chi in list(enumerate_characters(kind, Q))[:8]:
            cov = cover_character(chi)
            for gamma in iter_rational(kind, Q):
                lift = lift_of_rational(kind, Q, gamma)
                assert cov.eval_exponent(lift) == chi.eval_exponent(gamma)


@pytest.mark.parametrize("kind", [1, 2])
def test_cover_multiplicative_full_enumeration_q3(kind):
    chi = list(enumerate_characters(kind, Q))[3]
    cov = cover_character(chi)
    vo = value_order(kind, Q)
    classes = list(enumerate_coinvariants(kind, Q))
    for a in classes:
        for b in classes:
            assert (
                cov.eval_exponent(coinv_mul(a, b))
                == (cov.eval_exponent(a) + cov.eval_exponent(b)) % vo
            )


def test_cover_multiplicative_sampled_q5():
    for kind in (1, 2):
        chi = list(enumerate_characters(kind, 5))[5]
        cov = cover_character(chi)
        vo = value_order(kind, 5)
        classes = list(enumerate_coinvariants(kind, 5))[::7]
        for a in classes:
            for b in classes:
                assert (
                    cov.eval_exponent(coinv_mul(a, b))
                    == (cov.eval_exponent(a) + cov.eval_exponent(b)) % vo
                )


def test_genuineness_kind1():
    # nontrivial on the cover kernel, trivial on the class of (pi, 1),
    # so the quotient by that class is well-defined and still genuine
    cov = cover_character(DepthZeroCharacter(1, Q, (0, 0)))
    vo = value_order(1, Q)
    assert cov.eval_exponent(t1_coinv(Q, 0, 0, 1, 0)) == 0
    kernel_values = {cov.eval_exponent(c) for c in parity_classes(1, Q)}
    assert kernel_values == {0, vo // 2}


def test_cover_conjugation_commutes_with_lifting():
    for kind in (1, 2):
        for chi in list(enumerate_characters(kind, Q))[:6]:
            for w in rational_weyl_group(kind):
                lhs = cover_weyl_conjugate(cover_character(chi), w)
                rhs = cover_character(weyl_conjugate(chi, w))
                assert lhs == rhs


# ---------------------------------------------------------------------------
# serialization


def test_descriptor_roundtrip():
    chi = DepthZeroCharacter(2, 5, (7,))
    desc = character_to_descriptor(chi, eta_branch=-1)
    assert desc == {"kind": 2, "q": 5, "exponents": [7], "eta_branch": "minus"}
    back, branch = character_from_descriptor(desc)
    assert back == chi and branch == -1


def test_json_roundtrip():
    chi = DepthZeroCharacter(1, 3, (1, 2))
    payload = character_to_json(chi)
    assert json.loads(payload)["kind"] == 1
    back, branch = character_from_json(payload)
    assert back == chi and branch == 1


def test_exponent_arity_enforced():
    with pytest.raises(ValueError):
        DepthZeroCharacter(1, 3, (1,))
    with pytest.raises(ValueError):
        DepthZeroCharacter(2, 3, (1, 2))
