from fractions import Fraction

import pytest

from depthzero.uniqueness import (
    CENTER_ORDER,
    conjugate_forward_check,
    excluded_count,
    excluded_count_inclusion_exclusion,
    nonvanishing_report,
    odd_prime_powers,
    regular_locus_ratio,
    restriction_rigidity_check,
    strongly_regular_count,
    threshold_scan,
)


def test_center_is_trivial_for_the_adjoint_group():
    assert CENTER_ORDER == 1


def test_excluded_counts_small_q():
    # torus 1, q=3: 12 of 16 lie on a root kernel (4 strongly regular)
    assert excluded_count(1, 3) == 12
    assert strongly_regular_count(1, 3) == 4
    # torus 2, odd q: exactly {1, -1} are excluded
    assert excluded_count(2, 3) == 2
    assert strongly_regular_count(2, 3) == 8
    assert excluded_count(2, 5) == 2


def test_kind1_excluded_is_4q():
    # union of the four root kernels has exactly 4q elements
    for q in (3, 5, 7, 9, 11, 13):
        assert excluded_count(1, q) == 4 * q


@pytest.mark.parametrize("kind", [1, 2])
@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_inclusion_exclusion_crosscheck(kind, q):
    assert excluded_count(kind, q) == excluded_count_inclusion_exclusion(kind, q)


def test_ratio_rows():
    row = regular_locus_ratio(2, 5)
    assert (row.excluded, row.torus_order) == (2, 26)
    assert row.ratio == Fraction(1, 13)
    assert row.bound == Fraction(1, 4)
    assert row.holds
    row1 = regular_locus_ratio(1, 3)
    assert row1.ratio == Fraction(3, 4)
    assert not row1.holds
    assert regular_locus_ratio(1, 47).holds


def test_odd_prime_powers():
    assert odd_prime_powers(30) == [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]


def test_threshold_scan_kind1():
    report = threshold_scan(1, 200)
    by_q = {r.q: r for r in report.rows}
    # the stated sufficient bound holds everywhere above it
    assert all(r.holds for r in report.rows if r.q > 46)
    # and is not tight: the inequality already holds from 31 on
    assert report.empirical_min == 31
    assert by_q[29].holds is False
    assert by_q[31].holds is True


def test_threshold_scan_kind2():
    report = threshold_scan(2, 200)
    assert all(r.holds for r in report.rows if r.q >= 4)
    # the q = 3 row is reported regardless of outcome; it happens to hold
    q3 = [r for r in report.rows if r.q == 3][0]
    assert q3.ratio == Fraction(1, 5) and q3.holds
    assert report.empirical_min == 3


@pytest.mark.parametrize("kind,q", [(1, 3), (2, 3), (2, 5)])
def test_restriction_rigidity(kind, q):
    res = restriction_rigidity_check(kind, q)
    assert res.passed and res.counterexample is None
    assert res.exhaustive
    assert res.coverage == 1


def test_rigidity_kind1_q5_nonvacuous():
    res = restriction_rigidity_check(1, 5)
    assert res.passed
    assert res.n_characters == 8


@pytest.mark.parametrize("kind,q", [(1, 5), (2, 3), (2, 5)])
def test_forward_direction(kind, q):
    assert conjugate_forward_check(kind, q)


def test_nonvanishing_kind2_q5():
    rep = nonvanishing_report(2, 5)
    assert rep.witness_character
    assert "not re-derived" in rep.note


def test_nonvanishing_kind1_q47():
    rep = nonvanishing_report(1, 47)
    assert rep.witness_gamma


def test_sampled_mode_reports_coverage():
    res = restriction_rigidity_check(2, 5, eval_cap=50)
    assert not res.exhaustive
    assert res.coverage < 1
    assert res.passed
