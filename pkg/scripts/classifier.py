# ---------------------------------------------------------------
# classifier.py
#
# Purpose:
#   Classifies a two-family instance (n, k, L) into the regime that
#   decides which maximum applies: CASE_I (no effective constraint),
#   CASE_II (+1 bound), CASE_III (n = 2k and L = k - L, +2 bound) or
#   INFEASIBLE (no pair of nonempty families exists).
#
# Requirements:
#   - Input: n, k and an LSpec over k; or a pandas DataFrame with
#     columns 'n', 'k' and 'L' (comma strings) for sweep tables.
#
# Output:
#   - Regime value carrying the tag and the clause that fired.
#   - apply_regime_classification adds a 'regime' column.
#
# Notes:
#   - CASE_I takes precedence over CASE_III when L = [0, k] at n = 2k.
# ---------------------------------------------------------------

# scripts/classifier.py

from dataclasses import dataclass

import pandas as pd

from scripts.combinatorics import LSpec
from scripts.errors import ParameterError

CASE_I = "CASE_I"
CASE_II = "CASE_II"
CASE_III = "CASE_III"
INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class Regime:
    tag: str
    conditions: str


def realised_window(n: int, k: int) -> range:
    """Intersection sizes [max(0, 2k-n), k] realised by k-subsets of [n]."""
    return range(max(0, 2 * k - n), k + 1)


def classify_regime(n: int, k: int, L: LSpec) -> Regime:
    if not n >= k >= 2:
        raise ParameterError(f"regime needs n >= k >= 2, got n={n}, k={k}")
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")

    window = realised_window(n, k)
    hits = [i for i in window if i in L]

    if n >= 2 * k and L.is_full():
        return Regime(CASE_I, "n >= 2k and L = [0,k]")
    if n < 2 * k and len(hits) == len(window):
        return Regime(CASE_I, f"n < 2k and [{2 * k - n},{k}] ⊆ L")
    if n < 2 * k and not hits:
        return Regime(INFEASIBLE, f"n < 2k and [{2 * k - n},{k}] ∩ L = ∅")
    if n == 2 * k and L == L.reflect():
        return Regime(CASE_III, "n = 2k and L = k - L")
    if n > 2 * k:
        return Regime(CASE_II, "n > 2k and L ≠ [0,k]")
    if n == 2 * k:
        return Regime(CASE_II, "n = 2k and L ∉ {[0,k], k - L}")
    return Regime(CASE_II, f"n < 2k and [{2 * k - n},{k}] ∩ L is a proper nonempty part")


def classify_row(row) -> str:
    k = int(row["k"])
    L = LSpec.parse(str(row["L"]), k)
    return classify_regime(int(row["n"]), k, L).tag


def apply_regime_classification(df: pd.DataFrame) -> pd.DataFrame:
    if df.empty:
        df["regime"] = pd.Series(dtype=str)
        return df
    df["regime"] = df.apply(classify_row, axis=1)
    return df
