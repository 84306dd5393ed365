# ---------------------------------------------------------------
# test_printer.py
#
# Purpose:
#   Unit tests for the centered console tables of a sweep.
#
# Requirements:
#   - pandas, pytest
#
# Output:
#   - Confirms header layout, missing-value cells and the two-table
#     sweep printout.
# ---------------------------------------------------------------

# tests/test_printer.py

import pandas as pd

from scripts.printer import SUMMARY_TABLE, SWEEP_TABLE, format_centered_table, print_sweep


def test_header_and_rule_share_width():
    df = pd.DataFrame([{"n": 4, "k": 2}])
    lines = format_centered_table(df, [("n", 6), ("k", 4)]).splitlines()
    assert lines[0] == "  n    |  k  "
    assert lines[1] == "-" * len(lines[0])
    assert lines[2] == "  4    |  2  "


def test_missing_values_print_as_dash():
    df = pd.DataFrame({"a": [None, float("nan"), 1.5]})
    df["b"] = pd.array([pd.NA, 3, 4], dtype="Int64")
    lines = format_centered_table(df, [("a", 5), ("b", 3)]).splitlines()
    assert [line.split("|")[0].strip() for line in lines[2:]] == ["-", "-", "1.50"]
    assert [line.split("|")[1].strip() for line in lines[2:]] == ["-", "3", "4"]


def test_title_is_set_off_by_blank_lines():
    text = format_centered_table(pd.DataFrame(), [("n", 3)], "Summary")
    assert text.startswith("\nSummary\n\n")


def test_print_sweep_writes_both_tables(capsys):
    df = pd.DataFrame([{"mode": "cross2", "n": 4, "k": 2, "r": 2, "L": "1", "regime": "CASE_III",
                        "bound": 6, "oracle": 6, "equal": True, "runtime_ms": 1.0}])
    summary = pd.DataFrame([{"k": 2, "r": 2, "L": "1", "points": 1, "equal": 1,
                             "mismatched": 0, "asymptotic_gaps": 0, "empirical_threshold": 4}])
    print_sweep(df, summary)
    out = capsys.readouterr().out
    assert "cross2 sweep" in out
    assert "Summary" in out
    assert out.count("CASE_III") == 1
    assert len(SWEEP_TABLE) == 9 and len(SUMMARY_TABLE) == 8
