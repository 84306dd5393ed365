# ---------------------------------------------------------------
# family_loader.py
#
# Purpose:
#   Reads and writes family files: one JSON object with fields
#   n (int), k (int) and sets (sorted 1-based integer lists), with
#   the sets serialized in colex order.
#
# Requirements:
#   - Input: path to a .json family file.
#   - Libraries: json, pathlib.
#
# Output:
#   - load_family_file returns a validated SetFamily.
#   - save_family_file writes the canonical text form; loading and
#     saving a file produced here reproduces it byte for byte.
#
# Notes:
#   - Sets given out of colex order are accepted and normalized.
#   - Repeated sets are rejected.
# ---------------------------------------------------------------

# scripts/family_loader.py

import json
import logging
from pathlib import Path

from scripts.errors import FamilyFormatError, ParameterError
from scripts.families import SetFamily

logger = logging.getLogger(__name__)


def family_to_object(f: SetFamily) -> dict:
    return {"n": f.n, "k": f.k, "sets": f.to_sets()}


def family_to_text(f: SetFamily) -> str:
    return json.dumps(family_to_object(f)) + "\n"


def family_from_object(obj) -> SetFamily:
    """Validate a decoded family object and build the SetFamily."""
    if not isinstance(obj, dict) or not {"n", "k", "sets"} <= obj.keys():
        raise FamilyFormatError("family object needs the fields n, k and sets")
    n, k, sets = obj["n"], obj["k"], obj["sets"]
    if not isinstance(n, int) or not isinstance(k, int) or not isinstance(sets, list):
        raise FamilyFormatError("n and k must be integers and sets a list")
    seen = set()
    for s in sets:
        if not isinstance(s, list) or len(s) != k or not all(isinstance(e, int) for e in s):
            raise FamilyFormatError(f"set {s!r} is not a list of {k} integers")
        if list(s) != sorted(set(s)):
            raise FamilyFormatError(f"set {s!r} must be strictly increasing")
        key = tuple(s)
        if key in seen:
            raise FamilyFormatError(f"set {s!r} appears twice")
        seen.add(key)
    try:
        return SetFamily.from_sets(sets, n, k)
    except ParameterError as err:
        raise FamilyFormatError(str(err)) from err


def load_family_file(file_path) -> SetFamily:
    """Loads a single family file and returns the validated family."""
    path = Path(file_path)
    if not path.exists():
        raise FamilyFormatError(f"Missing family file: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise FamilyFormatError(f"{path} is not valid JSON: {err}") from err
    family = family_from_object(obj)
    logger.debug(f"loaded {len(family)} sets from {path}")
    return family


def save_family_file(f: SetFamily, file_path) -> Path:
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(family_to_text(f), encoding="utf-8")
    logger.info(f"wrote family of {len(f)} sets to {path}")
    return path
