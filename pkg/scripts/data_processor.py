# ---------------------------------------------------------------
# data_processor.py
#
# Purpose:
#   Runs the bound catalog against the exact oracles, one parameter
#   point at a time (verify_point) or over a grid (run_sweep), and
#   collects the results as report dicts and pandas DataFrames.
#
# Requirements:
#   - Input: mode (CROSS2, PAIRWISE or RCROSS), n, k, r and an LSpec;
#     for sweeps a grid string such as "n=4..8,k=2..3,L=all".
#   - Libraries: pandas.
#
# Output:
#   - verify_point returns the verify report dict.
#   - run_sweep returns (rows_df, reports) for summary and export.
#
# Notes:
#   - Bounds flagged asymptotic may differ from the oracle at small n;
#     such points are counted as asymptotic gaps, not as mismatches.
#   - Witness comparison runs for the two-family mode and for pairwise
#     points whose only listed extremal class is the star.
# ---------------------------------------------------------------

# scripts/data_processor.py

import logging
import time
from itertools import product

import pandas as pd

from config.settings import SEARCH_NODE_BUDGET, WITNESS_NODE_BUDGET
from scripts.bound_catalog import CROSS2, PAIRWISE, PAIRWISE_STAR, RCROSS, bound_for_mode
from scripts.combinatorics import LSpec, all_lspecs
from scripts.errors import ParameterError, UnsupportedLError
from scripts.exact_search import (
    oracle_cross2_max,
    oracle_pairwise_max,
    oracle_rcross_max,
    verify_characterization,
    verify_pairwise_characterization,
)

logger = logging.getLogger(__name__)

MODES = {"cross2": CROSS2, "pairwise": PAIRWISE, "rcross": RCROSS}
UNKNOWN = "UNKNOWN"
UNSUPPORTED = "UNSUPPORTED"
SWEEP_FRAME_COLUMNS = [
    "mode", "n", "k", "r", "L", "regime", "bound", "oracle",
    "equal", "asymptotic", "complete", "witness_match", "runtime_ms",
]


def normalize_mode(mode: str) -> str:
    key = mode.strip().lower()
    if key in MODES:
        return MODES[key]
    if mode in MODES.values():
        return mode
    raise ParameterError(f"unknown mode '{mode}'; expected one of {sorted(MODES)}")


# ---------------------------------------------------------------
# Grid parsing
# ---------------------------------------------------------------

def _int_values(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if lo > hi:
                raise ParameterError(f"empty range '{text}'")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as err:
        raise ParameterError(f"cannot parse '{text}' as an integer or range") from err


def parse_grid(text: str) -> dict:
    """
    "n=4..8,k=2..3,r=2,L=all" -> {"n": [...], "k": [...], "r": [...], "L": [...]}.

    A token without '=' continues the previous key, so "n=4,6,8" lists
    three values. L choices are separated by ';' ("L=0,2;1..2") and each
    choice is parsed per k later; "all" means every nonempty L.
    """
    grid = {"n": [], "k": [], "r": [], "L": []}
    key = None
    pieces = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" in token:
            key, token = (part.strip() for part in token.split("=", 1))
            if key not in grid:
                raise ParameterError(f"unknown grid key '{key}'; expected n, k, r or L")
        elif key is None:
            raise ParameterError(f"grid token '{token}' has no key")
        pieces.append((key, token))

    l_text = ",".join(token for key, token in pieces if key == "L")
    for key, token in pieces:
        if key != "L":
            grid[key].extend(_int_values(token))
    grid["L"] = [choice.strip() for choice in l_text.split(";") if choice.strip()]

    if not grid["n"] or not grid["k"]:
        raise ParameterError(f"grid '{text}' needs both n and k")
    grid["L"] = grid["L"] or ["all"]
    grid["r"] = grid["r"] or [2]
    return grid


def _lspecs_for(choice: str, k: int) -> list[LSpec]:
    if choice.lower() == "all":
        return all_lspecs(k)
    return [LSpec.parse(choice, k)]


def grid_points(mode: str, grid: dict):
    """(n, k, r, L) tuples of a parsed grid, skipping n < k and k < 2."""
    mode = normalize_mode(mode)
    rs = [2] if mode == CROSS2 else sorted(set(grid["r"]))
    for k, n, r in product(sorted(set(grid["k"])), sorted(set(grid["n"])), rs):
        if not n >= k >= 2:
            logger.debug(f"grid point n={n}, k={k} skipped")
            continue
        for choice in grid["L"]:
            for L in _lspecs_for(choice, k):
                yield n, k, r, L


# ---------------------------------------------------------------
# One point
# ---------------------------------------------------------------

def _value(x):
    return "INFEASIBLE" if x is None else x


def run_oracle(mode: str, n: int, k: int, r: int, L: LSpec, budget: int | None = None,
               threads: int = 1, collect_witnesses: bool = False):
    mode = normalize_mode(mode)
    if mode == CROSS2:
        return oracle_cross2_max(n, k, L, collect_witnesses, budget or WITNESS_NODE_BUDGET, threads)
    budget = budget or SEARCH_NODE_BUDGET
    if mode == PAIRWISE:
        return oracle_pairwise_max(n, k, r, L, budget, threads, collect_witnesses)
    return oracle_rcross_max(n, k, r, L, budget, threads, collect_witnesses)


def verify_point(mode: str, n: int, k: int, r: int, L: LSpec, budget: int | None = None,
                 threads: int = 1, witness_check: bool = True) -> dict:
    """Catalog value against the exact oracle at one point."""
    mode = normalize_mode(mode)
    r = 2 if mode == CROSS2 else r
    started = time.perf_counter()
    bound = bound_for_mode(mode, n, k, r, L)
    bound_value = bound.to_report()["value"]

    characterization = None
    if mode == CROSS2 and witness_check:
        characterization = verify_characterization(n, k, L, budget or WITNESS_NODE_BUDGET, threads)
        oracle_value = characterization["oracle"]
        complete = True
    elif mode == PAIRWISE and witness_check and bound.extremal_classes == [PAIRWISE_STAR]:
        characterization = verify_pairwise_characterization(n, k, r, L, budget or SEARCH_NODE_BUDGET, threads)
        complete = characterization["complete"]
        oracle_value = characterization["oracle"] if complete else None
    else:
        result = run_oracle(mode, n, k, r, L, budget, threads)
        complete = result.complete
        oracle_value = _value(result.max_sum) if complete or result.max_sum is not None else None

    equal = complete and oracle_value == bound_value
    report = {
        "mode": mode,
        "n": n,
        "k": k,
        "r": r,
        "L": L.as_list(),
        "regime": bound.regime,
        "bound": bound_value,
        "oracle": oracle_value,
        "equal": equal,
        "asymptotic": bound.asymptotic,
        "complete": complete,
        "witness_match": UNKNOWN,
        "witness_checked": characterization is not None,
    }
    if characterization is not None:
        report["witness_match"] = characterization["match"]
        report["witness_classes"] = characterization["witness_classes"]
        report["extra_witnesses"] = characterization["extra"]
        report["missing_witnesses"] = characterization["missing"]
    report["runtime_ms"] = round(1000 * (time.perf_counter() - started), 3)

    if not equal and complete:
        if bound.asymptotic:
            logger.warning(f"{mode} ({n},{k},r={r},L={L}): oracle {oracle_value} vs asymptotic bound {bound_value}")
        else:
            logger.warning(f"{mode} ({n},{k},r={r},L={L}): oracle {oracle_value} disagrees with bound {bound_value}")
    return report


def is_mismatch(report: dict) -> bool:
    """A falsified check: exact bound differs from a complete oracle, or witnesses disagree."""
    if report["asymptotic"]:
        return False
    if report["witness_match"] is False:
        return True
    return bool(report["complete"] and not report["equal"])


def is_asymptotic_gap(report: dict) -> bool:
    """An asymptotic bound that a complete oracle does not meet in value or in witnesses."""
    if not report["asymptotic"]:
        return False
    return report["witness_match"] is False or bool(report["complete"] and not report["equal"])


# ---------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------

def _unsupported_row(mode, n, k, r, L, err) -> dict:
    logger.info(f"{mode} ({n},{k},r={r},L={L}) skipped: {err}")
    return {
        "mode": mode, "n": n, "k": k, "r": r, "L": L.as_list(), "regime": UNSUPPORTED,
        "bound": UNSUPPORTED, "oracle": None, "equal": None, "asymptotic": False,
        "complete": False, "witness_match": UNKNOWN, "witness_checked": False, "runtime_ms": 0.0,
    }


def run_sweep(mode: str, grid: dict | str, budget: int | None = None, threads: int = 1,
              witness_check: bool = False) -> tuple[pd.DataFrame, list[dict]]:
    """One verify report per grid point, plus the flat DataFrame used for CSV and charts."""
    mode = normalize_mode(mode)
    if isinstance(grid, str):
        grid = parse_grid(grid)
    reports = []
    for n, k, r, L in grid_points(mode, grid):
        try:
            reports.append(verify_point(mode, n, k, r, L, budget, threads, witness_check))
        except UnsupportedLError as err:
            reports.append(_unsupported_row(mode, n, k, r, L, err))

    df = pd.DataFrame([
        {
            "mode": rep["mode"],
            "n": rep["n"],
            "k": rep["k"],
            "r": rep["r"],
            "L": ",".join(map(str, rep["L"])),
            "regime": rep["regime"],
            "bound": rep["bound"],
            "oracle": rep["oracle"],
            "equal": rep["equal"],
            "asymptotic": rep["asymptotic"],
            "complete": rep["complete"],
            "witness_match": rep["witness_match"],
            "runtime_ms": rep["runtime_ms"],
        }
        for rep in reports
    ], columns=SWEEP_FRAME_COLUMNS)
    logger.info(f"sweep {mode}: {len(reports)} points")
    return df, reports
