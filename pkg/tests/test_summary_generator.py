# ---------------------------------------------------------------
# test_summary_generator.py
#
# Purpose:
#   Unit tests for the sweep summary and CSV export in
#   scripts/summary_generator.py.
#
# Requirements:
#   - Input: pandas DataFrame shaped like the output of run_sweep.
#   - Dependencies: pandas, pytest (tmp_path), scripts/summary_generator.
#
# Output:
#   - Asserts per-group counts, the empirical threshold and the fixed
#     CSV header.
#
# Notes:
#   - Run with: pytest tests/test_summary_generator.py
# ---------------------------------------------------------------

# tests/test_summary_generator.py

import pandas as pd
import pytest

from config.settings import SWEEP_CSV_COLUMNS
from scripts.summary_generator import (
    SUMMARY_COLUMNS,
    asymptotic_gaps,
    empirical_threshold,
    summarize_sweep,
    summary_records,
    sweep_to_csv,
)


def row(n, L, bound, oracle, equal, asymptotic=False, complete=True):
    return {
        "mode": "PAIRWISE", "n": n, "k": 2, "r": 3, "L": L, "regime": "EXACT",
        "bound": bound, "oracle": oracle, "equal": equal, "asymptotic": asymptotic,
        "complete": complete, "witness_match": "UNKNOWN", "runtime_ms": 1.5,
    }


def sample_df():
    return pd.DataFrame([
        row(4, "0,2", 5, 6, False, asymptotic=True),
        row(5, "0,2", 6, 6, True, asymptotic=True),
        row(6, "0,2", 8, 8, True, asymptotic=True),
        row(4, "0,1", 6, 6, True),
        row(5, "0,1", 10, 9, False),
        row(5, "1", "UNSUPPORTED", None, None, complete=False),
    ])


def test_empirical_threshold():
    df = sample_df()
    assert empirical_threshold(df[df["L"] == "0,2"]) == 5
    assert empirical_threshold(df[df["L"] == "0,1"]) is None
    assert empirical_threshold(df[df["L"] == "1"]) is None


def test_summarize_sweep_counts():
    summary = summarize_sweep(sample_df())
    assert list(summary.columns) == SUMMARY_COLUMNS
    summary = summary.set_index("L")
    assert summary.loc["0,2", "points"] == 3
    assert summary.loc["0,2", "equal"] == 2
    assert summary.loc["0,2", "mismatched"] == 1
    assert summary.loc["0,1", "n_max"] == 5
    assert summary.loc["1", "points"] == 1
    assert summary.loc["1", "mismatched"] == 0
    assert summary.loc["0,2", "asymptotic_gaps"] == 1
    assert summary.loc["0,1", "asymptotic_gaps"] == 0


def test_summarize_empty_sweep():
    summary = summarize_sweep(pd.DataFrame())
    assert summary.empty
    assert list(summary.columns) == SUMMARY_COLUMNS


def test_summary_records_are_plain_values():
    records = summary_records(summarize_sweep(sample_df()))
    by_L = {rec["L"]: rec for rec in records}
    assert by_L["0,2"]["empirical_threshold"] == 5
    assert by_L["0,1"]["empirical_threshold"] is None
    assert type(by_L["0,2"]["points"]) is int


def test_sweep_to_csv(tmp_path):
    path = tmp_path / "out" / "sweep.csv"
    text = sweep_to_csv(sample_df(), path)
    assert text.splitlines()[0] == ",".join(SWEEP_CSV_COLUMNS)
    assert len(text.splitlines()) == 7
    assert path.read_text(encoding="utf-8") == text


def test_sweep_to_csv_requires_columns():
    with pytest.raises(ValueError):
        sweep_to_csv(pd.DataFrame([{"mode": "CROSS2", "n": 4}]))


def test_asymptotic_gaps_count_witness_disagreements():
    df = pd.DataFrame([
        row(8, "0,2", 8, 8, True, asymptotic=True),
        row(9, "0,2", 9, 9, True, asymptotic=True),
        row(9, "0,1", 9, 8, False),
    ])
    df.loc[0, "witness_match"] = False
    assert asymptotic_gaps(df[df["L"] == "0,2"]) == 1
    assert asymptotic_gaps(df[df["L"] == "0,1"]) == 0
    summary = summarize_sweep(df).set_index("L")
    assert summary.loc["0,2", "mismatched"] == 0
    assert summary.loc["0,2", "asymptotic_gaps"] == 1
