# config/settings.py

from pathlib import Path

# Base directory

BASE_DIR = Path(__file__).resolve().parent.parent

# Output paths

OUTPUT_DIR = BASE_DIR / "outputs"
REPORT_DIR = OUTPUT_DIR / "reports"
FAMILY_DIR = OUTPUT_DIR / "families"
CACHE_DIR = OUTPUT_DIR / "cache"

# Engine version (part of every cache key; bump to invalidate cached reports)

ENGINE_VERSION = "1.0.0"

# Arithmetic

MAX_GROUND_SET = 63          # every k-subset fits one machine word
BISECTION_TOL = 1e-9         # absolute, on the function value
BISECTION_MAX_ITER = 200
REAL_TOL = 1e-6              # real comparisons in shadow checks

# Search budgets

ORBIT_BUDGET = 10**6         # images enumerated before a primitivity verdict gives up
SEARCH_NODE_BUDGET = 5 * 10**6
WITNESS_NODE_BUDGET = 10**7
WITNESS_MAX_SIDE = 70        # witness enumeration only when C(n,k) <= this
WITNESS_TIME_LIMIT = 30.0    # wall-clock seconds per witness census
GRAPH_MAX_SIDE = 5000        # dense conflict matrix limit
GROUP_AUDIT_MAX_N = 6        # closure audits enumerate the whole group up to this n
CANONICAL_MAX_N = 10         # full relabeling search beyond this is rejected
EXHAUSTIVE_ALPHA_MAX = 20    # one-side subset scan limited to C(n,k) <= this
NAIVE_SCAN_MAX = 12          # naive tuple scan limited to C(n,k) <= this
PERMUTATION_CHUNK = 40320

# Sweep exports

CHART_MAX_GROUPS = 8          # line-chart groups in the sweep workbook and PNG

# Randomized inputs

DEFAULT_SEED = 0
SHADOW_TRIALS = 1000

# Sweep CSV projection

CSV_SCHEMA_VERSION = 1
SWEEP_CSV_COLUMNS = [
    "mode",
    "n",
    "k",
    "r",
    "L",
    "bound",
    "oracle",
    "equal",
    "asymptotic",
    "complete",
    "runtime_ms",
]

# Exit codes

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARAMETER = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

# Logging

LOGGING_ENABLED = True
LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"
