# ---------------------------------------------------------------
# test_data_processor.py
#
# Purpose:
#   Unit tests for grid parsing, single-point verification and sweeps
#   in scripts/data_processor.py.
#
# Requirements:
#   - Dependencies: pandas, pytest, scripts/data_processor.
#
# Output:
#   - Asserts parsed grids, the verify report of small points and the
#     rows a sweep produces, including unsupported points.
# ---------------------------------------------------------------

# tests/test_data_processor.py

import pytest

from scripts.combinatorics import LSpec
from scripts.data_processor import (
    UNKNOWN,
    UNSUPPORTED,
    grid_points,
    is_asymptotic_gap,
    is_mismatch,
    normalize_mode,
    parse_grid,
    run_sweep,
    verify_point,
)
from scripts.errors import ParameterError


def test_parse_grid():
    grid = parse_grid("n=4..6,k=2,r=2,3,L=0,2;1..2")
    assert grid == {"n": [4, 5, 6], "k": [2], "r": [2, 3], "L": ["0,2", "1..2"]}


def test_parse_grid_defaults():
    grid = parse_grid("n=4,6,8, k=2")
    assert grid["n"] == [4, 6, 8]
    assert grid["L"] == ["all"]
    assert grid["r"] == [2]


@pytest.mark.parametrize("text", ["k=2", "x=1,n=4,k=2", "4,n=3,k=2", "n=5..3,k=2", "n=a,k=2"])
def test_parse_grid_errors(text):
    with pytest.raises(ParameterError):
        parse_grid(text)


def test_normalize_mode():
    assert normalize_mode("Cross2") == "CROSS2"
    assert normalize_mode("RCROSS") == "RCROSS"
    with pytest.raises(ParameterError):
        normalize_mode("triple")


def test_grid_points():
    points = list(grid_points("cross2", parse_grid("n=2..4,k=2..3,r=5")))
    assert len(points) == 3 * 7 + 2 * 15
    assert {r for _, _, r, _ in points} == {2}
    pairwise = list(grid_points("pairwise", parse_grid("n=5,k=1..2,r=3,4,L=1")))
    assert [(n, k, r) for n, k, r, _ in pairwise] == [(5, 2, 3), (5, 2, 4)]


def test_verify_point_with_witness_check():
    report = verify_point("cross2", 4, 2, 2, LSpec.of([1], 2))
    assert report["bound"] == report["oracle"] == 6
    assert report["equal"] and report["complete"]
    assert report["witness_match"] is True
    assert report["witness_classes"] == ["COMPLEMENT_CLOSED", "PAIR_MIDDLE"]
    assert not is_mismatch(report)


def test_verify_point_asymptotic_bound():
    report = verify_point("rcross", 5, 2, 2, LSpec.of([0], 2), witness_check=False)
    assert report["bound"] == report["oracle"] == 4
    assert report["asymptotic"]
    assert report["witness_match"] == UNKNOWN


def test_is_mismatch():
    base = {"witness_match": UNKNOWN, "complete": True, "equal": False, "asymptotic": False}
    assert is_mismatch(base)
    assert not is_mismatch({**base, "asymptotic": True})
    assert not is_mismatch({**base, "complete": False})
    assert is_mismatch({**base, "equal": True, "witness_match": False})


def test_run_sweep_marks_unsupported_points():
    df, reports = run_sweep("pairwise", "n=5,k=2,r=3,L=0,2;1")
    assert len(reports) == 2
    assert df["L"].tolist() == ["0,2", "1"]
    assert df["bound"].tolist() == [6, UNSUPPORTED]
    assert df["oracle"].iloc[0] == 6
    assert bool(df["equal"].iloc[0])
    assert df["regime"].iloc[1] == UNSUPPORTED


def test_verify_point_checks_pairwise_star_witnesses():
    report = verify_point("pairwise", 5, 2, 3, LSpec.of([0, 2], 2))
    assert report["witness_checked"]
    assert report["bound"] == report["oracle"] == 6
    assert report["witness_match"] in (True, False)
    assert "PAIRWISE_STAR" in report["witness_classes"]
    assert not is_mismatch(report)
    assert is_asymptotic_gap(report) == (report["witness_match"] is False)


def test_verify_point_skips_witnesses_without_a_star_class():
    report = verify_point("pairwise", 5, 2, 3, LSpec.of([0, 1, 2], 2))
    assert not report["witness_checked"]
    assert report["witness_match"] == UNKNOWN


def test_asymptotic_gap_is_reported_but_not_a_mismatch():
    base = {"witness_match": UNKNOWN, "complete": True, "equal": False, "asymptotic": True}
    assert is_asymptotic_gap(base) and not is_mismatch(base)
    assert not is_asymptotic_gap({**base, "equal": True})
    assert is_asymptotic_gap({**base, "equal": True, "witness_match": False})
    assert not is_asymptotic_gap({**base, "complete": False})
    assert not is_asymptotic_gap({**base, "asymptotic": False})
