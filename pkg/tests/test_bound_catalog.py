# ---------------------------------------------------------------
# test_bound_catalog.py
#
# Purpose:
#   Unit tests for the closed-form maxima in scripts/bound_catalog.py.
#
# Requirements:
#   - Dependencies: pytest, scripts/bound_catalog, scripts/combinatorics.
#
# Output:
#   - Asserts hand-computed values, regimes, extremal lists, the
#     degenerate r-cross case and the open cases that must refuse.
# ---------------------------------------------------------------

# tests/test_bound_catalog.py

from fractions import Fraction

import pytest

from scripts.bound_catalog import (
    CROSS2,
    DEGENERATE,
    bound_cross2,
    bound_deza_erdos_frankl,
    bound_ekr,
    bound_for_mode,
    bound_pairwise_cross_intersecting,
    bound_pairwise_L,
    bound_rcross,
    bound_rcross_t,
    bound_t_intersecting_max,
    bound_wang_zhang,
    sigma,
)
from scripts.classifier import CASE_I, CASE_II, CASE_III, INFEASIBLE
from scripts.combinatorics import LSpec, all_lspecs, binom_exact
from scripts.errors import ParameterError, UnsupportedLError


def test_cross2_case_ii():
    result = bound_cross2(6, 2, LSpec.of([1, 2], 2))
    assert result.regime == CASE_II
    assert result.value == 10
    assert result.terms == [(1, 8), (2, 1)]
    assert result.extremal_classes == ["STAR_PAIR", "STAR_STAR"]


def test_cross2_case_iii_and_case_i():
    result = bound_cross2(4, 2, LSpec.of([1], 2))
    assert result.regime == CASE_III
    assert result.value == 6
    assert "COMPLEMENT_CLOSED" in result.extremal_classes
    full = bound_cross2(5, 2, LSpec.of([0, 1, 2], 2))
    assert full.regime == CASE_I and full.value == 20


def test_cross2_infeasible_report():
    result = bound_cross2(3, 2, LSpec.of([0], 2))
    assert result.infeasible
    report = result.to_report()
    assert report["value"] == INFEASIBLE
    assert report["extremal_classes"] == []


def test_sigma_over_full_spec_is_vandermonde():
    for n in range(21):
        for k in range(n + 1):
            assert sigma(n, k, LSpec.interval(0, k, k)) == binom_exact(n, k), (n, k)


def test_report_field_order():
    report = bound_cross2(6, 2, LSpec.of([1, 2], 2)).to_report()
    assert list(report)[:6] == ["mode", "n", "k", "r", "L", "regime"]
    assert report["mode"] == CROSS2
    assert report["L"] == [1, 2]


def test_ekr_and_product_bound():
    assert bound_ekr(6, 2).value == 5
    with pytest.raises(ParameterError):
        bound_ekr(3, 2)
    whole = bound_deza_erdos_frankl(10, 3, LSpec.of([0, 1], 3))
    assert whole.value == Fraction(15)
    half = bound_deza_erdos_frankl(10, 3, LSpec.of([1], 3)).to_report()
    assert half["value"] == "9/2"
    assert half["floor"] == 4
    with pytest.raises(ParameterError):
        bound_deza_erdos_frankl(10, 3, LSpec.of([3], 3))


def test_wang_zhang():
    result = bound_wang_zhang(6, 2, 2, 1)
    assert result.value == 10
    assert result.notes == []
    assert bound_wang_zhang(4, 2, 2, 1).notes


def test_pairwise_cross_intersecting_and_t_max():
    result = bound_pairwise_cross_intersecting(6, 2, 3)
    assert result.value == 15
    assert result.branch == "star"
    assert bound_t_intersecting_max(6, 2, 1) == 5
    assert bound_t_intersecting_max(8, 3, 1) == binom_exact(7, 2)


def test_pairwise_L_cases():
    assert bound_pairwise_L(5, 2, 3, LSpec.of([0, 2], 2)).value == 6
    assert bound_pairwise_L(5, 2, 2, LSpec.of([0, 2], 2)).value == 5
    assert bound_pairwise_L(5, 2, 3, LSpec.of([0, 1], 2)).value == 10
    assert bound_pairwise_L(5, 2, 3, LSpec.of([0, 1, 2], 2)).value == 30
    with pytest.raises(UnsupportedLError):
        bound_pairwise_L(7, 3, 2, LSpec.of([1], 3))


def test_rcross_interval_and_t():
    interval = bound_rcross(5, 2, 2, LSpec.of([0], 2))
    assert interval.value == 4
    assert interval.asymptotic
    t_form = bound_rcross(6, 2, 2, LSpec.of([1, 2], 2))
    assert t_form.value == 10
    assert t_form.argmax == 1
    with pytest.raises(UnsupportedLError):
        bound_rcross(7, 3, 2, LSpec.of([0, 2], 3))


def test_rcross_degenerate_regime():
    result = bound_rcross_t(3, 2, 1, 2)
    assert result.regime == DEGENERATE
    assert result.value == 6


def test_bound_for_mode_covers_every_two_family_L():
    for L in all_lspecs(2):
        result = bound_for_mode(CROSS2, 5, 2, 2, L)
        assert result.value is None or result.value > 0
    with pytest.raises(ParameterError):
        bound_for_mode("OTHER", 5, 2, 2, LSpec.of([1], 2))
