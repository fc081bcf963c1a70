import pytest

from depthzero.characters import (
    DepthZeroCharacter,
    cover_character,
    enumerate_characters,
    enumerate_regular_characters,
    weyl_conjugate,
)
from depthzero.charformula import (
    NotStronglyRegularError,
    RhoShiftError,
    delta0_eta_exponent,
    denominator_factors,
    make_context,
    named_summation_subgroup,
    orbit_character_sum,
    packet,
    positive_system_contexts,
    rho_shift_closed_sign,
    rho_shift_solve,
    rho_shift_table,
    theta,
    weyl_denominator,
    weyl_denominator_exponent,
)
from depthzero.cyclo import root_of_unity
from depthzero.localmodel import unit
from depthzero.tori import (
    canonical_rep,
    coinv_mul,
    enumerate_coinvariants,
    iter_strongly_regular,
    lift_of_rational,
    parity_classes,
    rational_weyl_group,
    t1_coinv,
    t1_rational,
    t2_coinv,
    t2_rational,
    weyl_identity,
)


@pytest.fixture(scope="module")
def ctx1():
    return make_context(1, 3)


@pytest.fixture(scope="module")
def ctx2():
    return make_context(2, 3)


def _chars(kind, q, limit=None):
    chars = enumerate_regular_characters(kind, q) or list(enumerate_characters(kind, q))
    return chars[:limit] if limit else chars


# ---------------------------------------------------------------------------
# rho-shift


def test_rho_shift_closed_values(ctx1, ctx2):
    assert rho_shift_closed_sign(ctx1, t1_coinv(3, 0, 0, 0, 1)) == -1
    assert rho_shift_closed_sign(ctx1, t1_coinv(3, 0, 0, 1, 0)) == 1
    assert rho_shift_closed_sign(ctx1, t1_coinv(3, 2, 1, 0, 0)) == 1
    assert rho_shift_closed_sign(ctx2, t2_coinv(3, 0, 1)) == -1
    assert rho_shift_closed_sign(ctx2, t2_coinv(3, 5, 0)) == 1


@pytest.mark.parametrize("kind,q", [(1, 3), (2, 3), (1, 5), (2, 5)])
def test_rho_shift_solver_unique_and_matches_closed(kind, q):
    ctx = make_context(kind, q, need_tower=False)
    table = rho_shift_solve(ctx)
    for c, sign in table.items():
        assert sign == rho_shift_closed_sign(ctx, c)


def test_rho_shift_square_is_target_pointwise(ctx1, ctx2):
    from depthzero.charformula import _two_rho_eta_exponent

    for ctx in (ctx1, ctx2):
        table = rho_shift_solve(ctx)
        for c, sign in table.items():
            # the square of a sign character is trivial, and the computed
            # eta(2 rho)(N(.)) is the trivial character on this model
            assert _two_rho_eta_exponent(ctx, c) == 0
            assert sign * sign == 1


def test_rho_shift_solver_error_paths(monkeypatch):
    # an odd zeta_4 exponent can never be the square of a character value,
    # so a poisoned target must abort with the no-solution error
    import depthzero.charformula as cf

    ctx = make_context(1, 3, need_tower=False)
    monkeypatch.setattr(cf, "_two_rho_eta_exponent", lambda *_a, **_k: 1)
    with pytest.raises(RhoShiftError):
        cf.rho_shift_solve(ctx)


# ---------------------------------------------------------------------------
# denominators


def test_denominator_trivial_on_unit_lifts(ctx1, ctx2):
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        for gamma in iter_strongly_regular(kind, 3):
            lift = lift_of_rational(kind, 3, gamma)
            assert weyl_denominator_exponent(ctx, canonical_rep(lift)) == 0
            assert weyl_denominator(ctx, canonical_rep(lift)) == root_of_unity(4, 0)


def test_denominator_shift_valuation_profiles(ctx1, ctx2):
    # the uniformizer shift contributes eta(pi)^7 resp. eta(pi)^6
    gamma1 = next(iter_strongly_regular(1, 3))
    lift1 = coinv_mul(lift_of_rational(1, 3, gamma1), t1_coinv(3, 0, 0, 1, 1))
    vals1 = [f.val for f in denominator_factors(ctx1, canonical_rep(lift1))]
    assert vals1 == [1, 1, 2, 3] and sum(vals1) == 7
    assert weyl_denominator_exponent(ctx1, canonical_rep(lift1)) == 2

    gamma2 = next(iter_strongly_regular(2, 3))
    lift2 = coinv_mul(lift_of_rational(2, 3, gamma2), t2_coinv(3, 0, 1))
    vals2 = [f.val for f in denominator_factors(ctx2, canonical_rep(lift2))]
    assert vals2 == [1, 2, 1, 2] and sum(vals2) == 6
    assert weyl_denominator_exponent(ctx2, canonical_rep(lift2)) == 2


def test_denominator_partial_shift_kind1(ctx1):
    # shifting only the second slot flips the sign through eta(pi)^3
    gamma = next(iter_strongly_regular(1, 3))
    base = lift_of_rational(1, 3, gamma)
    shifted = coinv_mul(base, t1_coinv(3, 0, 0, 0, 1))
    vals = [f.val for f in denominator_factors(ctx1, canonical_rep(shifted))]
    assert sum(vals) == 3
    assert weyl_denominator_exponent(ctx1, canonical_rep(shifted)) == 2
    # first-slot shift contributes eta(pi)^4 = +1
    shifted2 = coinv_mul(base, t1_coinv(3, 0, 0, 1, 0))
    vals2 = [f.val for f in denominator_factors(ctx1, canonical_rep(shifted2))]
    assert sum(vals2) == 4
    assert weyl_denominator_exponent(ctx1, canonical_rep(shifted2)) == 0


def test_denominator_representative_independence(ctx1, ctx2):
    import random

    rng = random.Random(7)
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        q = 3
        n = q + 1 if kind == 1 else q * q + 1
        group = q ** (2 * kind) - 1
        for c in enumerate_coinvariants(kind, q):
            from depthzero.tori import coinvariant_norm, is_strongly_regular

            if not is_strongly_regular(kind, q, coinvariant_norm(c)):
                continue
            base = weyl_denominator_exponent(ctx, canonical_rep(c))
            for _ in range(100):
                if kind == 1:
                    rep = (
                        unit(q, 2, c.u1 + n * rng.randrange(group // n),
                             c.v1 + 2 * rng.randrange(-3, 4)),
                        unit(q, 2, c.u2 + n * rng.randrange(group // n),
                             c.v2 + 2 * rng.randrange(-3, 4)),
                    )
                else:
                    rep = unit(q, 4, c.u + n * rng.randrange(group // n),
                               c.v + 2 * rng.randrange(-3, 4))
                assert weyl_denominator_exponent(ctx, rep) == base


def test_split_equals_combined_on_all_lifts(ctx1, ctx2):
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        for gamma in iter_strongly_regular(kind, 3):
            for tw in parity_classes(kind, 3):
                lift = coinv_mul(lift_of_rational(kind, 3, gamma), tw)
                combined = weyl_denominator_exponent(ctx, canonical_rep(lift))
                split = (
                    delta0_eta_exponent(ctx, gamma)
                    + (2 if rho_shift_closed_sign(ctx, lift) < 0 else 0)
                ) % 4
                assert combined == split


def test_denominator_cancellation_surfaces(ctx1):
    from depthzero.localmodel import CancellationError

    degenerate = t1_rational(3, 0, 1)  # first root value is 1
    lift = lift_of_rational(1, 3, degenerate)
    with pytest.raises(CancellationError):
        weyl_denominator_exponent(ctx1, canonical_rep(lift))
    with pytest.raises(CancellationError):
        delta0_eta_exponent(ctx1, degenerate)


# ---------------------------------------------------------------------------
# the identity


@pytest.mark.parametrize("kind,q", [(1, 3), (2, 3), (1, 5), (2, 5)])
def test_formula_equals_orbit_sum(kind, q):
    ctx = make_context(kind, q)
    for chi in _chars(kind, q):
        cov = cover_character(chi)
        for gamma in iter_strongly_regular(kind, q):
            for w in rational_weyl_group(kind):
                assert theta(ctx, cov, w, gamma) == orbit_character_sum(ctx, chi, w, gamma)


def test_formula_rejects_irregular_elements(ctx1):
    chi = cover_character(DepthZeroCharacter(1, 3, (1, 0)))
    with pytest.raises(NotStronglyRegularError):
        theta(ctx1, chi, weyl_identity(1), t1_rational(3, 0, 0))
    with pytest.raises(NotStronglyRegularError):
        orbit_character_sum(ctx1, DepthZeroCharacter(1, 3, (1, 0)),
                            weyl_identity(1), t1_rational(3, 0, 0))


def test_lift_independence_all_twists(ctx1, ctx2):
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        one = weyl_identity(kind)
        for chi in _chars(kind, 3, limit=5):
            cov = cover_character(chi)
            for gamma in iter_strongly_regular(kind, 3):
                base = theta(ctx, cov, one, gamma)
                for tw in parity_classes(kind, 3):
                    assert theta(ctx, cov, one, gamma, parity=tw) == base


def test_eta_branch_independence():
    for branch in (1, -1):
        ctx = make_context(2, 3, eta_branch=branch)
        for chi in _chars(2, 3):
            cov = cover_character(chi)
            for gamma in iter_strongly_regular(2, 3):
                for w in rational_weyl_group(2):
                    assert theta(ctx, cov, w, gamma) == orbit_character_sum(ctx, chi, w, gamma)


def test_positive_system_independence(ctx1, ctx2):
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        one = weyl_identity(kind)
        for name, roots in positive_system_contexts(kind):
            table = rho_shift_table(ctx, roots)
            assert all(s in (1, -1) for s in table.values())
            for chi in _chars(kind, 3, limit=4):
                cov = cover_character(chi)
                for gamma in iter_strongly_regular(kind, 3):
                    assert theta(ctx, cov, one, gamma, positive_roots=roots) == theta(
                        ctx, cov, one, gamma
                    ), name


def test_conjugated_formula_matches_conjugated_character(ctx1, ctx2):
    for ctx, kind in ((ctx1, 1), (ctx2, 2)):
        one = weyl_identity(kind)
        for chi in _chars(kind, 3, limit=4):
            cov = cover_character(chi)
            for w in rational_weyl_group(kind):
                moved = cover_character(weyl_conjugate(chi, w))
                for gamma in iter_strongly_regular(kind, 3):
                    assert theta(ctx, cov, w, gamma) == theta(ctx, moved, one, gamma)


def test_epsilon_constants_scale_both_sides():
    ctx = make_context(2, 3, epsilon_gt=-1)
    chi = _chars(2, 3)[0]
    cov = cover_character(chi)
    gamma = next(iter_strongly_regular(2, 3))
    base = make_context(2, 3)
    w = weyl_identity(2)
    assert orbit_character_sum(ctx, chi, w, gamma) == -orbit_character_sum(base, chi, w, gamma)
    # epsilon_chi scales theta the same way
    ctx_chi = make_context(2, 3)
    ctx_chi.epsilon_chi = -1
    assert theta(ctx_chi, cov, w, gamma) == -theta(base, cov, w, gamma)


# ---------------------------------------------------------------------------
# packets


def test_packet_single_class_with_full_group(ctx2):
    chi = _chars(2, 3)[0]
    pk = packet(ctx2, cover_character(chi))
    assert len(pk.classes) == 1
    assert set(pk.classes[0]) == {w.name for w in rational_weyl_group(2)}
    assert "summation" in pk.caveat


def test_packet_classes_with_trivial_subgroup():
    ctx = make_context(2, 3, summation=named_summation_subgroup(2, "trivial"))
    chi = _chars(2, 3)[0]
    pk = packet(ctx, cover_character(chi))
    # oracle: distinct conjugate characters on the strongly regular set
    gammas = list(iter_strongly_regular(2, 3))
    distinct = len({
        tuple(weyl_conjugate(chi, w).eval_exponent(g) for g in gammas)
        for w in rational_weyl_group(2)
    })
    assert len(pk.classes) == distinct


def test_packet_proper_subgroup_kind1():
    rotation = named_summation_subgroup(1, "rotation")
    assert len(rotation) == 4
    ctx = make_context(1, 5, summation=rotation)
    chi = _chars(1, 5)[0]
    pk = packet(ctx, cover_character(chi))
    # labels in the same right coset of the summation subgroup coincide
    for cls in pk.classes:
        assert len(cls) % 1 == 0
    assert sum(len(c) for c in pk.classes) == 8


def test_summation_subgroup_validation():
    from depthzero.tori import weyl_group

    nonrational = tuple(w for w in weyl_group(2) if w.name in ("", "a"))
    with pytest.raises(ValueError):
        make_context(2, 3, need_tower=False, summation=nonrational)
