# ---------------------------------------------------------------
# analysis_runner.py
#
# Purpose:
#   Command-line front end: bound, search, verify, fragments, shadow,
#   construct and sweep subcommands over the engines, with JSON or
#   CSV output, exit codes and an optional report cache.
#
# Requirements:
#   - Config: exit codes, logging settings, default budgets and paths.
#
# Output:
#   - Reports on stdout (JSON, CSV for sweep); logs on stderr.
#   - main(argv) returns the process exit code.
#
# Notes:
#   - Exit codes: 0 ok, 1 falsified check, 2 invalid parameters,
#     3 infeasible instance, 4 budget exhausted.
#   - Reports for bound/search/verify/fragments/shadow are cached by
#     content when --cache-dir is given; a hit replays the stored text.
# ---------------------------------------------------------------

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from config.settings import (
    DEFAULT_SEED,
    EXIT_BUDGET,
    EXIT_INFEASIBLE,
    EXIT_MISMATCH,
    EXIT_OK,
    FAMILY_DIR,
    GROUP_AUDIT_MAX_N,
    LOG_DATEFMT,
    LOG_FORMAT,
    LOG_LEVEL,
    LOGGING_ENABLED,
    SEARCH_NODE_BUDGET,
    SHADOW_TRIALS,
)
from scripts import bound_catalog as catalog
from scripts.chart_builder import export_sweep_to_excel
from scripts.charts.sweep_chart import build_sweep_chart
from scripts.combinatorics import LSpec
from scripts.constructions import (
    Cross2Variant,
    construct_cross2_extremal,
    construct_pairwise_extremal,
    construct_rcross_extremal,
)
from scripts.data_processor import (
    is_asymptotic_gap,
    is_mismatch,
    normalize_mode,
    parse_grid,
    run_oracle,
    run_sweep,
    verify_point,
)
from scripts.errors import CrossFamError, ParameterError, exit_code_for
from scripts.exact_search import BRANCH_AND_BOUND, NAIVE, SearchResult, naive_tuple_max, oracle_t_intersecting_max
from scripts.families import (
    FamilyTuple,
    is_cross_L,
    is_pairwise_cross_L,
    is_rcross_L,
    lovasz_check,
    shadow_corpus,
)
from scripts.family_loader import load_family_file, save_family_file
from scripts.fragments import (
    FAIL,
    alpha_exhaustive,
    alpha_nontrivial,
    build_graph,
    check_imprimitive_fragment,
    check_primitive_fragments,
    closure_audit,
    enumerate_fragments,
    fragments_report,
    imprimitive_are_complementary_pairs,
)
from scripts.group_action import GroupAction
from scripts.printer import print_sweep
from scripts.result_cache import ResultCache
from scripts.summary_generator import summarize_sweep, summary_records, sweep_to_csv

logger = logging.getLogger(__name__)

CACHEABLE = ("bound", "search", "verify", "fragments", "shadow")
BOUND_MODES = (
    "cross2", "pairwise", "rcross", "ekr", "product", "wang_zhang",
    "pairwise_ci", "pairwise_t", "rcross_t", "rcross_interval", "tintersect",
)
UNCACHED_ARGS = ("command", "handler", "cache_dir", "out", "verbose", "table", "xlsx", "chart", "family_dir")


def configure_logging(verbose: bool = False) -> None:
    if not LOGGING_ENABLED:
        logging.disable(logging.CRITICAL)
        return
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL),
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
        stream=sys.stderr,
    )
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def render(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _require(args, *names) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise ParameterError(f"{args.command} needs {', '.join(missing)}")


def _lspec(args) -> LSpec:
    _require(args, "k", "L")
    return LSpec.parse(args.L, args.k)


# ---------------------------------------------------------------
# Commands; each returns (report, exit code)
# ---------------------------------------------------------------

def cmd_bound(args):
    mode = args.mode
    _require(args, "n", "k")
    n, k, r = args.n, args.k, args.r
    if mode == "cross2":
        result = catalog.bound_cross2(n, k, _lspec(args))
    elif mode == "pairwise":
        result = catalog.bound_pairwise_L(n, k, r, _lspec(args))
    elif mode == "rcross":
        result = catalog.bound_rcross(n, k, r, _lspec(args))
    elif mode == "ekr":
        result = catalog.bound_ekr(n, k)
    elif mode == "product":
        result = catalog.bound_deza_erdos_frankl(n, k, _lspec(args))
    elif mode == "wang_zhang":
        _require(args, "a", "t")
        result = catalog.bound_wang_zhang(n, args.a, args.b if args.b is not None else k, args.t)
    elif mode == "pairwise_ci":
        result = catalog.bound_pairwise_cross_intersecting(n, k, r)
    elif mode == "pairwise_t":
        _require(args, "t")
        result = catalog.bound_pairwise_t(n, k, args.t, r)
    elif mode == "rcross_t":
        _require(args, "t")
        result = catalog.bound_rcross_t(n, k, args.t, r)
    elif mode == "rcross_interval":
        _require(args, "l", "s")
        result = catalog.bound_rcross_interval(n, k, r, args.l, args.s)
    else:
        _require(args, "t")
        value = catalog.bound_t_intersecting_max(n, k, args.t)
        return {"mode": catalog.TINTERSECT, "n": n, "k": k, "t": args.t, "value": value}, EXIT_OK

    report = result.to_report()
    return report, EXIT_INFEASIBLE if result.infeasible else EXIT_OK


def _search_code(result: SearchResult) -> int:
    if not result.complete:
        return EXIT_BUDGET
    return EXIT_INFEASIBLE if result.infeasible else EXIT_OK


def cmd_search(args):
    _require(args, "n", "k")
    n, k = args.n, args.k
    if args.mode == "tintersect":
        _require(args, "t")
        result = oracle_t_intersecting_max(n, k, args.t, args.budget or SEARCH_NODE_BUDGET)
        return result.to_report(), _search_code(result)

    mode = normalize_mode(args.mode)
    L = _lspec(args)
    r = 2 if mode == catalog.CROSS2 else args.r
    if args.method == NAIVE:
        if mode == catalog.CROSS2:
            value = alpha_exhaustive(build_graph(n, k, L))
            result = SearchResult(mode, n, k, 2, L, value, witnesses_complete=False, method=NAIVE)
        else:
            result = naive_tuple_max(mode, n, k, r, L)
    else:
        result = run_oracle(mode, n, k, r, L, args.budget, args.threads, not args.no_witnesses)
    return result.to_report(), _search_code(result)


def _verify_code(reports: list[dict], witness_check: bool) -> int:
    if any(is_mismatch(rep) for rep in reports):
        return EXIT_MISMATCH
    if not all(rep["complete"] for rep in reports if rep["regime"] != "UNSUPPORTED"):
        return EXIT_BUDGET
    if witness_check and any(rep["witness_match"] == "UNKNOWN" for rep in reports if rep.get("witness_checked")):
        logger.warning("witness census unavailable at some point; rerun with --no-witness-check to skip it")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args):
    witness_check = not args.no_witness_check
    if args.sweep:
        df, reports = run_sweep(args.mode, args.sweep, args.budget, args.threads, witness_check)
        summary = summarize_sweep(df)
        report = {
            "mode": normalize_mode(args.mode),
            "grid": args.sweep,
            "points": len(reports),
            "mismatches": sum(is_mismatch(rep) for rep in reports),
            "asymptotic_gaps": sum(is_asymptotic_gap(rep) for rep in reports),
            "summary": summary_records(summary),
            "rows": reports,
        }
        return report, _verify_code(reports, witness_check)

    _require(args, "n", "k")
    report = verify_point(args.mode, args.n, args.k, args.r, _lspec(args), args.budget, args.threads, witness_check)
    report["asymptotic_gap"] = is_asymptotic_gap(report)
    return report, _verify_code([report], witness_check)


def cmd_fragments(args):
    _require(args, "n", "k")
    L = _lspec(args)
    g = build_graph(args.n, args.k, L)
    alpha = alpha_nontrivial(g, threads=args.threads)
    if alpha is None:
        return {"n": args.n, "k": args.k, "L": L.as_list(), "alpha": "INFEASIBLE"}, EXIT_INFEASIBLE

    action = GroupAction.parse(args.generators, args.n) if args.generators else None
    census = enumerate_fragments(g, args.side, args.size_cap, args.budget or SEARCH_NODE_BUDGET, action, alpha)
    checks = {
        "primitive_fragments": check_primitive_fragments(census),
        "imprimitive_fragment": check_imprimitive_fragment(census, action),
    }
    if args.n <= GROUP_AUDIT_MAX_N:
        checks["closure_audit"] = closure_audit(census, action)
    if args.n == 2 * args.k and action is None:
        checks["complementary_pairs"] = imprimitive_are_complementary_pairs(census)

    report = fragments_report(census, {"checks": checks})
    failed = [name for name, check in checks.items()
              if check is False or (isinstance(check, dict) and check.get("verdict") == FAIL)]
    if failed:
        logger.warning(f"fragment checks failed: {failed}")
        return report, EXIT_MISMATCH
    return report, EXIT_OK if census.complete else EXIT_BUDGET


def cmd_shadow(args):
    if args.random:
        _require(args, "n", "k")
        report = shadow_corpus(args.n, args.k, args.trials, args.seed, args.i)
        bad = report["violations"] or report["cap_violations"] or report["equality_tight"] != report["equality_checked"]
        return report, EXIT_MISMATCH if bad else EXIT_OK

    _require(args, "family", "i")
    family = load_family_file(args.family)
    report = {"family": Path(args.family).name, "n": family.n, "k": family.k, **lovasz_check(family, args.i)}
    ok = report["satisfied"] and report["cap_satisfied"]
    return report, EXIT_OK if ok else EXIT_MISMATCH


def _construct_tuple(args):
    _require(args, "n", "k")
    n, k, r = args.n, args.k, args.r
    if args.which == "cross2":
        L = _lspec(args)
        variant = Cross2Variant(args.variant.upper()) if args.variant else None
        if variant is None:
            raise ParameterError("construct --which cross2 needs --variant")
        seed = load_family_file(args.family) if args.family else None
        a, b = construct_cross2_extremal(n, k, L, variant, seed)
        t = FamilyTuple.of(a, b)
        return t, L, is_cross_L(a, b, L), catalog.bound_cross2(n, k, L)
    if args.which == "pairwise":
        L = _lspec(args)
        t = construct_pairwise_extremal(n, k, r, L)
        return t, L, is_pairwise_cross_L(t, L), catalog.bound_pairwise_L(n, k, r, L)
    _require(args, "l", "s")
    t = construct_rcross_extremal(n, k, r, args.l, args.s)
    L = LSpec.interval(args.l, args.s - 1, k)
    return t, L, is_rcross_L(t, L), catalog.bound_rcross_interval(n, k, r, args.l, args.s)


def cmd_construct(args):
    t, L, valid, bound = _construct_tuple(args)
    directory = Path(args.family_dir)
    files = []
    for i, family in enumerate(t, start=1):
        files.append(str(save_family_file(family, directory / f"{args.which}_{i}.json")))
    report = {
        "which": args.which,
        "n": t.n,
        "k": t.k,
        "r": t.r,
        "L": L.as_list(),
        "valid": valid,
        "sizes": t.sizes,
        "total": t.total,
        "bound": bound.to_report()["value"],
        "files": files,
    }
    if not valid:
        logger.warning(f"constructed {args.which} tuple is not valid for L={L}")
        return report, EXIT_MISMATCH
    return report, EXIT_OK


def cmd_sweep(args):
    _require(args, "grid")
    df, reports = run_sweep(args.mode, parse_grid(args.grid), args.budget, args.threads, args.witness_check)
    summary = summarize_sweep(df)
    if args.xlsx:
        export_sweep_to_excel(df, summary, args.xlsx)
    if args.chart:
        build_sweep_chart(df, args.chart)
    return (df, summary), _verify_code(reports, args.witness_check)


# ---------------------------------------------------------------
# Parser
# ---------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--r", type=int, default=2)
    common.add_argument("--L", help='allowed intersection sizes, e.g. "0,2", "1..3" or "all"')
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, help="node budget for searches")
    common.add_argument("--out", help="also write the report to this path")
    common.add_argument("--cache-dir", help="reuse reports stored in this directory")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossfam",
        description="Bounds, exact maxima and fragment censuses for cross L-intersecting families",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    search_modes = ["cross2", "pairwise", "rcross"]

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--mode", choices=BOUND_MODES, default="cross2")
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=int)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("search", parents=[common], help="exact maximum by exhaustive search")
    p.add_argument("--mode", choices=search_modes + ["tintersect"], default="cross2")
    p.add_argument("--method", choices=[BRANCH_AND_BOUND, NAIVE], default=BRANCH_AND_BOUND)
    p.add_argument("--t", type=int)
    p.add_argument("--no-witnesses", action="store_true")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="compare a bound with the exact maximum")
    p.add_argument("--mode", choices=search_modes, default="cross2")
    p.add_argument("--sweep", metavar="GRID", help='grid such as "n=4..8,k=2..3,L=all"')
    p.add_argument("--no-witness-check", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fragments", parents=[common], help="fragment census of the conflict graph")
    p.add_argument("--size-cap", type=int)
    p.add_argument("--side", choices=["X", "Y"], default="X")
    p.add_argument("--generators", help='1-based image lists, e.g. "2,1,3,4;2,3,4,1"')
    p.set_defaults(handler=cmd_fragments)

    p = sub.add_parser("shadow", parents=[common], help="shadow size checks")
    p.add_argument("--family", help="family file")
    p.add_argument("--i", type=int)
    p.add_argument("--random", action="store_true")
    p.add_argument("--trials", type=int, default=SHADOW_TRIALS)
    p.set_defaults(handler=cmd_shadow)

    p = sub.add_parser("construct", parents=[common], help="write an extremal configuration to family files")
    p.add_argument("--which", choices=["cross2", "pairwise", "rcross_interval"], required=True)
    p.add_argument("--variant", help="cross2 extremal class, e.g. STAR_PAIR")
    p.add_argument("--family", help="seed family file for COMPLEMENT_SPLIT / COMPLEMENT_CLOSED")
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--family-dir", default=str(FAMILY_DIR))
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("sweep", parents=[common], help="bound vs exact maximum over a grid, as CSV")
    p.add_argument("--mode", choices=search_modes, default="cross2")
    p.add_argument("--grid", help='e.g. "n=4..8,k=2..3,L=all"')
    p.add_argument("--witness-check", action="store_true")
    p.add_argument("--xlsx", help="workbook path")
    p.add_argument("--chart", help="PNG path")
    p.add_argument("--table", action="store_true", help="print centered tables instead of CSV")
    p.set_defaults(handler=cmd_sweep)
    return parser


def _cache_params(args) -> dict:
    params = {key: value for key, value in vars(args).items() if key not in UNCACHED_ARGS}
    if getattr(args, "L", None) is not None and args.k is not None:
        params["L"] = LSpec.parse(args.L, args.k).as_list()
    if getattr(args, "family", None):
        params["family"] = hashlib.sha256(Path(args.family).read_bytes()).hexdigest()
    return params


def _emit(text: str, out) -> None:
    sys.stdout.write(text)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _run(args) -> int:
    if args.command == "sweep":
        (df, summary), code = args.handler(args)
        if args.table:
            print_sweep(df, summary)
            if args.out:
                sweep_to_csv(df, args.out)
        else:
            _emit(sweep_to_csv(df), args.out)
        return code

    cache = ResultCache(args.cache_dir) if args.cache_dir and args.command in CACHEABLE else None
    key = None
    if cache is not None:
        key = cache.key(args.command, _cache_params(args))
        hit = cache.get(key)
        if hit is not None:
            text, code = hit
            _emit(text, args.out)
            return code

    report, code = args.handler(args)
    text = render(report)
    if cache is not None:
        cache.put(key, text, code)
    _emit(text, args.out)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return _run(args)
    except CrossFamError as err:
        logger.error(str(err))
        return exit_code_for(err)


if __name__ == "__main__":
    sys.exit(main())
