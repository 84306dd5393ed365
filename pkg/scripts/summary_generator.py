# ---------------------------------------------------------------
# summary_generator.py
#
# Purpose:
#   Summary tables for sweep results: agreement counts per
#   (mode, k, r, L) group, the empirical threshold from which oracle
#   and bound agree, and the fixed-column CSV projection.
#
# Requirements:
#   - Input: the rows DataFrame from data_processor.run_sweep.
#   - Config: SWEEP_CSV_COLUMNS, CSV_SCHEMA_VERSION.
#
# Output:
#   - summarize_sweep returns one row per group.
#   - sweep_to_csv writes/returns CSV text in SWEEP_CSV_COLUMNS order.
#
# Notes:
#   - Points without a catalog value (open cases) are kept in the
#     point table but ignored by the agreement counts.
# ---------------------------------------------------------------

# scripts/summary_generator.py

import logging
from pathlib import Path

import pandas as pd

from config.settings import CSV_SCHEMA_VERSION, SWEEP_CSV_COLUMNS

logger = logging.getLogger(__name__)

GROUP_KEYS = ["mode", "k", "r", "L"]
SUMMARY_COLUMNS = GROUP_KEYS + [
    "points", "equal", "mismatched", "asymptotic_gaps", "n_min", "n_max", "empirical_threshold",
]


def empirical_threshold(group: pd.DataFrame):
    """
    Least tested n from which oracle = bound at every larger tested n.

    None when the largest tested n already disagrees (or nothing was
    compared).
    """
    rows = group[group["equal"].notna()].sort_values("n")
    if rows.empty:
        return None
    threshold = None
    for n, equal in zip(rows["n"].iloc[::-1], rows["equal"].iloc[::-1]):
        if not bool(equal):
            break
        threshold = int(n)
    return threshold


def asymptotic_gaps(group: pd.DataFrame) -> int:
    """Points whose asymptotic bound is missed by the oracle value or by its witnesses."""
    asymptotic = group["asymptotic"].fillna(False).astype(bool)
    missed = group["equal"].notna() & ~group["equal"].fillna(True).astype(bool)
    if "witness_match" in group:
        missed |= group["witness_match"].astype(str) == "False"
    return int((asymptotic & missed).sum())


def summarize_sweep(df: pd.DataFrame) -> pd.DataFrame:
    if df.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)

    compared = df[df["equal"].notna()]
    rows = []
    for key, group in df.groupby(GROUP_KEYS, sort=True):
        checked = compared.loc[compared.index.intersection(group.index)]
        equal = int(checked["equal"].astype(bool).sum())
        rows.append({
            **dict(zip(GROUP_KEYS, key)),
            "points": len(group),
            "equal": equal,
            "mismatched": len(checked) - equal,
            "asymptotic_gaps": asymptotic_gaps(group),
            "n_min": int(group["n"].min()),
            "n_max": int(group["n"].max()),
            "empirical_threshold": empirical_threshold(group),
        })
    summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS).astype({"empirical_threshold": "Int64"})
    gaps = int(summary["asymptotic_gaps"].sum())
    logger.info(f"sweep summary: {len(summary)} groups, {int(summary['mismatched'].sum())} mismatched points")
    if gaps:
        logger.warning(f"{gaps} points fall short of an asymptotic bound; see the asymptotic_gaps column")
    return summary


def summary_records(summary: pd.DataFrame) -> list[dict]:
    """JSON-ready rows; NaN, NA and numpy scalars become plain values."""
    records = []
    for row in summary.to_dict(orient="records"):
        clean = {}
        for key, value in row.items():
            if hasattr(value, "item"):
                value = value.item()
            if value is pd.NA or (isinstance(value, float) and value != value):
                value = None
            clean[key] = value
        records.append(clean)
    return records


def sweep_to_csv(df: pd.DataFrame, filepath=None) -> str:
    """The fixed CSV projection; written to `filepath` when given."""
    missing = [col for col in SWEEP_CSV_COLUMNS if col not in df.columns]
    if missing:
        raise ValueError(f"Missing sweep columns {missing}. Run the sweep first.")
    text = df[SWEEP_CSV_COLUMNS].to_csv(index=False)
    if filepath is not None:
        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"sweep CSV (schema v{CSV_SCHEMA_VERSION}) saved to: {path}")
    return text
