# ---------------------------------------------------------------
# test_exact_search.py
#
# Purpose:
#   Unit tests for the brute-force maxima and the witness comparison
#   in scripts/exact_search.py.
#
# Requirements:
#   - Dependencies: pytest, scripts/exact_search, scripts/bound_catalog.
#
# Output:
#   - Asserts exact maxima on instances small enough to check by hand,
#     agreement between branch and bound and the naive scan, and the
#     witness match at n = 2k.
#
# Notes:
#   - Every instance keeps C(n,k) <= 15 so the suite stays fast, except
#     the time-limit test at (8,3), which stops after about two seconds.
# ---------------------------------------------------------------

# tests/test_exact_search.py

import time

import pytest

from scripts.bound_catalog import PAIRWISE, RCROSS, bound_pairwise_L, bound_t_intersecting_max
from scripts.combinatorics import LSpec
from scripts.errors import ParameterError
from scripts.exact_search import (
    naive_tuple_max,
    oracle_cross2_max,
    oracle_pairwise_max,
    oracle_rcross_max,
    oracle_t_intersecting_max,
    verify_characterization,
)
from scripts.families import is_cross_L, is_pairwise_cross_L


def test_cross2_oracle():
    L = LSpec.of([1, 2], 2)
    result = oracle_cross2_max(6, 2, L, collect_witnesses=False)
    assert result.max_sum == 10
    a, b = result.witnesses[0]
    assert is_cross_L(a, b, L)
    assert len(a) + len(b) == 10


def test_cross2_oracle_collects_one_class_at_n_equals_2k():
    result = oracle_cross2_max(4, 2, LSpec.of([1], 2))
    assert result.max_sum == 6
    assert result.witnesses_complete
    assert len(result.keys) == 1


def test_cross2_oracle_infeasible():
    result = oracle_cross2_max(3, 2, LSpec.of([0], 2))
    assert result.infeasible
    assert result.to_report()["max_sum"] == "INFEASIBLE"


def test_pairwise_oracle_meets_the_star_bound():
    L = LSpec.of([0, 2], 2)
    three = oracle_pairwise_max(5, 2, 3, L)
    assert three.max_sum == 6 == bound_pairwise_L(5, 2, 3, L).value
    assert three.complete
    assert all(is_pairwise_cross_L(t, L) for t in three.witnesses)
    assert oracle_pairwise_max(5, 2, 2, L).max_sum == 5


def test_pairwise_oracle_with_every_size_allowed():
    result = oracle_pairwise_max(3, 2, 3, LSpec.of([1, 2], 2))
    assert result.max_sum == 9


def test_rcross_oracle():
    assert oracle_rcross_max(5, 2, 2, LSpec.of([0], 2)).max_sum == 4
    assert oracle_rcross_max(6, 2, 2, LSpec.of([1, 2], 2)).max_sum == 10


@pytest.mark.parametrize("mode, n, k, r, values", [
    (PAIRWISE, 5, 2, 3, [0, 2]),
    (PAIRWISE, 4, 2, 3, [1]),
    (RCROSS, 5, 2, 3, [1, 2]),
    (RCROSS, 5, 2, 2, [0]),
])
def test_naive_scan_agrees_with_branch_and_bound(mode, n, k, r, values):
    L = LSpec.of(values, k)
    oracle = oracle_pairwise_max if mode == PAIRWISE else oracle_rcross_max
    expected = oracle(n, k, r, L, collect_witnesses=False).max_sum
    assert naive_tuple_max(mode, n, k, r, L).max_sum == expected


def test_naive_scan_limits():
    L = LSpec.of([1], 2)
    with pytest.raises(ParameterError):
        naive_tuple_max("CROSS2", 5, 2, 2, L)
    with pytest.raises(ParameterError):
        naive_tuple_max(PAIRWISE, 5, 2, 4, L)
    with pytest.raises(ParameterError):
        naive_tuple_max(PAIRWISE, 6, 2, 2, L)


def test_t_intersecting_oracle():
    assert oracle_t_intersecting_max(5, 2, 1).max_sum == 4
    for n, k, t in [(6, 2, 1), (6, 3, 2)]:
        result = oracle_t_intersecting_max(n, k, t)
        assert result.max_sum == bound_t_intersecting_max(n, k, t)
        assert result.complete
    with pytest.raises(ParameterError):
        oracle_t_intersecting_max(6, 2, 3)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        oracle_pairwise_max(5, 2, 1, LSpec.of([1], 2))
    with pytest.raises(ParameterError):
        oracle_pairwise_max(5, 2, 3, LSpec.of([1], 3))


def test_verify_characterization_matches_at_n_equals_2k():
    report = verify_characterization(4, 2, LSpec.of([1], 2))
    assert report["bound"] == report["oracle"] == 6
    assert report["match"] is True
    assert report["witness_classes"] == ["COMPLEMENT_CLOSED", "PAIR_MIDDLE"]
    assert report["extra"] == [] and report["missing"] == []


def test_verify_characterization_infeasible_is_vacuous():
    report = verify_characterization(3, 2, LSpec.of([0], 2))
    assert report["oracle"] == "INFEASIBLE"
    assert report["match"] is True and report["vacuous"]


def test_witness_census_stops_at_the_time_limit():
    start = time.perf_counter()
    report = verify_characterization(8, 3, LSpec.of([0, 1, 2], 3), time_limit=2.0)
    assert time.perf_counter() - start < 20.0
    assert report["oracle"] == 56
    assert report["match"] == "UNKNOWN"
