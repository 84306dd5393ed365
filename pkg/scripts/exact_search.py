# ---------------------------------------------------------------
# exact_search.py
#
# Purpose:
#   Brute-force ground truth for the bound catalog: exact maxima of
#   cross, pairwise and r-cross L-intersecting tuples, the maximum
#   t-intersecting family, witness censuses up to isomorphism, and the
#   comparison of those censuses with the theorem-listed extremal
#   configurations.
#
# Requirements:
#   - numpy for the naive subset scans.
#   - fragments for the forced-pair independence number.
#   - canonical for orbit representatives and witness keys.
#
# Output:
#   - SearchResult values and characterization report dictionaries.
#
# Notes:
#   - Families in a tuple are searched with ascending sizes; the last
#     family is always the largest set compatible with the others.
#   - Python-int bitsets over colex ranks throughout.
# ---------------------------------------------------------------

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from config.settings import (
    CANONICAL_MAX_N,
    NAIVE_SCAN_MAX,
    SEARCH_NODE_BUDGET,
    WITNESS_MAX_SIDE,
    WITNESS_NODE_BUDGET,
    WITNESS_TIME_LIMIT,
)
from scripts.bound_catalog import CROSS2, PAIRWISE, RCROSS, TINTERSECT, bound_cross2, cross2_extremal_classes
from scripts.canonical import (
    CanonicalKey,
    SearchBudget,
    canonical_family,
    canonical_form,
    check_canonical_n,
    orbit_representatives,
)
from scripts.classifier import classify_regime
from scripts.combinatorics import LSpec, all_k_masks, check_ground_set, popcount
from scripts.constructions import Cross2Variant, construct_cross2_extremal, construct_pairwise_extremal
from scripts.errors import BudgetExceededError, ParameterError
from scripts.families import FamilyTuple, SetFamily
from scripts.family_loader import family_to_object
from scripts.fragments import alpha_nontrivial, build_graph, iter_bits

logger = logging.getLogger(__name__)

BRANCH_AND_BOUND = "branch_and_bound"
FORCED_PAIR = "forced_pair"
NAIVE = "naive"
CLIQUE = "clique"


@dataclass
class SearchResult:
    mode: str
    n: int
    k: int
    r: int
    L: LSpec
    max_sum: int | None
    witnesses: list[FamilyTuple] = field(default_factory=list)
    keys: list[CanonicalKey] = field(default_factory=list)
    complete: bool = True
    witnesses_complete: bool = True
    method: str = BRANCH_AND_BOUND
    nodes: int = 0

    @property
    def infeasible(self) -> bool:
        return self.max_sum is None

    def to_report(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "L": self.L.as_list(),
            "max_sum": self.max_sum if self.max_sum is not None else ("INFEASIBLE" if self.complete else None),
            "complete": self.complete,
            "witness_count": len(self.witnesses),
            "witnesses": [[family_to_object(f) for f in t] for t in self.witnesses],
            "canonical_keys": [key.hex for key in self.keys],
            "witnesses_complete": self.witnesses_complete,
            "method": self.method,
            "nodes": self.nodes,
        }


def _pack(flags: np.ndarray) -> int:
    """Boolean vector over ranks -> Python-int bitset."""
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class _WitnessBook:
    """Best value so far and its witnesses, deduplicated by canonical key."""

    def __init__(self, collect: bool):
        self.collect = collect
        self.best = 0
        self.by_key: dict[CanonicalKey, FamilyTuple] = {}
        self._lock = threading.Lock()

    def offer(self, total: int, build) -> None:
        with self._lock:
            if total < self.best:
                return
            if total == self.best and self.by_key and not self.collect:
                return
            t = build()
            if total > self.best:
                self.best = total
                self.by_key = {}
            key = canonical_form(t)
            self.by_key.setdefault(key, t)

    def results(self) -> tuple[list[FamilyTuple], list[CanonicalKey]]:
        keys = sorted(self.by_key)
        return [self.by_key[key] for key in keys], keys


def _finish(result: SearchResult, book: _WitnessBook) -> SearchResult:
    result.witnesses, result.keys = book.results()
    return result


# ---------------------------------------------------------------
# Two families: forced pairs plus a witness census
# ---------------------------------------------------------------

def oracle_cross2_max(
    n: int,
    k: int,
    L: LSpec,
    collect_witnesses: bool = True,
    budget: int | None = WITNESS_NODE_BUDGET,
    threads: int = 1,
    mode: str = CROSS2,
    time_limit: float | None = WITNESS_TIME_LIMIT,
) -> SearchResult:
    """
    Exact max |A| + |B| over nonempty cross L-intersecting pairs.

    The value never depends on `budget` or `time_limit`; they only bound
    the witness census, which is marked incomplete when either runs out.
    """
    g = build_graph(n, k, L)
    alpha = alpha_nontrivial(g, threads=threads)
    result = SearchResult(mode, n, k, 2, L, None, method=FORCED_PAIR)
    if alpha is None:
        logger.info(f"({n},{k},L={L}) is infeasible: every cross pair conflicts")
        return result
    result.max_sum = alpha.value

    if n > CANONICAL_MAX_N:
        result.witnesses = [FamilyTuple.of(alpha.x_side, alpha.y_side)]
        result.witnesses_complete = False
        return result

    book = _WitnessBook(collect=True)
    book.offer(alpha.value, lambda: FamilyTuple.of(alpha.x_side, alpha.y_side))
    if not collect_witnesses:
        result.witnesses_complete = False
        return _finish(result, book)
    if g.side_size > WITNESS_MAX_SIDE:
        logger.info(f"witness census skipped: C({n},{k}) = {g.side_size} is above {WITNESS_MAX_SIDE}")
        result.witnesses_complete = False
        return _finish(result, book)

    counter = SearchBudget(budget, time_limit)

    def accept(rep):
        return g.neighborhood(g.bits_of(rep)) != g.full

    try:
        for size, reps in orbit_representatives(g.masks, n, k, g.side_size, accept, counter):
            for rep in reps:
                bits = g.bits_of(rep)
                other = g.full & ~g.neighborhood(bits)
                if size + popcount(other) == alpha.value:
                    book.offer(alpha.value, lambda: FamilyTuple.of(g.family_of(bits), g.family_of(other)))
    except BudgetExceededError as err:
        logger.warning(f"witness census truncated: {err}")
        result.witnesses_complete = False
    result.nodes = counter.used
    return _finish(result, book)


# ---------------------------------------------------------------
# r families: branch and bound over A_1 orbit representatives
# ---------------------------------------------------------------

class _TupleSearch:
    """
    Shared skeleton for pairwise and r-cross searches.

    Pairwise: a chosen set v shrinks the future region to compat[v].
    r-cross: the state is the set of profiles (intersections of one set
    from each earlier family); a profile q keeps only sets w with
    |q ∩ w| >= min L, and the last family needs |q ∩ w| ∈ L.
    """

    def __init__(self, mode: str, n: int, k: int, r: int, L: LSpec, collect: bool, budget: int | None):
        self.mode = mode
        self.n, self.k, self.r, self.L = n, k, r, L
        self.masks = all_k_masks(n, k)
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.full = (1 << len(self.masks)) - 1
        self.arr = np.array(self.masks, dtype=np.uint64)
        self.allowed = np.array([i in L for i in range(k + 1)], dtype=bool)
        self.at_least = np.arange(k + 1) >= L.min
        self.book = _WitnessBook(collect)
        self.counter = SearchBudget(budget)
        self._future: dict[int, int] = {}
        self._final: dict[int, int] = {}
        if mode == PAIRWISE:
            self.compat = [self._bitset(self.allowed, m) for m in self.masks]

    def _bitset(self, table: np.ndarray, q: int) -> int:
        return _pack(table[np.bitwise_count(self.arr & np.uint64(q))])

    def future(self, q: int) -> int:
        hit = self._future.get(q)
        if hit is None:
            hit = self._future[q] = self._bitset(self.at_least, q)
        return hit

    def final(self, q: int) -> int:
        hit = self._final.get(q)
        if hit is None:
            hit = self._final[q] = self._bitset(self.allowed, q)
        return hit

    # -- state transitions ------------------------------------------

    def include(self, v: int, base, profiles: frozenset, acc: int):
        if self.mode == PAIRWISE:
            return profiles, acc & self.compat[v]
        m = self.masks[v]
        fresh = {p & m for p in base} - profiles
        for q in fresh:
            acc &= self.future(q)
        return profiles | fresh, acc

    def last_region(self, base, region: int) -> int:
        if self.mode == PAIRWISE:
            return region
        out = region
        for q in base:
            out &= self.final(q)
        return out

    # -- search -----------------------------------------------------

    def first_state(self, rep) -> tuple[frozenset, int]:
        profiles, acc = frozenset(), self.full
        base = (self.ground,) if self.mode == RCROSS else ()
        for m in rep:
            profiles, acc = self.include(self.index[m], base, profiles, acc)
        return profiles, acc

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def accept_first(self, rep) -> bool:
        _, acc = self.first_state(rep)
        c = popcount(acc)
        if len(rep) > c:
            return False
        bound = self.r * c
        return bound > self.book.best or (self.book.collect and bound == self.book.best)

    def run_from(self, rep) -> None:
        profiles, acc = self.first_state(rep)
        chosen = [sum(1 << self.index[m] for m in rep)]
        self._next_family(2, profiles, acc, len(rep), len(rep), chosen)

    def _next_family(self, i: int, base, region: int, fixed: int, prev_size: int, chosen: list[int]) -> None:
        if i == self.r:
            last = self.last_region(base, region)
            size = popcount(last)
            if size >= max(prev_size, 1):
                self.book.offer(fixed + size, lambda: self._tuple(chosen + [last]))
            return
        cands = list(iter_bits(region))
        self._family_dfs(i, cands, 0, 0, 0, base, frozenset(), region, fixed, prev_size, chosen)

    def _family_dfs(self, i, cands, idx, picked, size_now, base, profiles, acc, fixed, prev_size, chosen):
        self.counter.spend()
        c = popcount(acc)
        if size_now > c:
            return
        bound = fixed + min(size_now + len(cands) - idx, c) + (self.r - i) * c
        best = self.book.best
        if bound < best or (bound == best and not self.book.collect):
            return
        if idx == len(cands):
            if size_now >= max(prev_size, 1):
                self._next_family(i + 1, profiles, acc, fixed + size_now, size_now, chosen + [picked])
            return
        v = cands[idx]
        new_profiles, new_acc = self.include(v, base, profiles, acc)
        self._family_dfs(i, cands, idx + 1, picked | (1 << v), size_now + 1, base, new_profiles, new_acc,
                         fixed, prev_size, chosen)
        self._family_dfs(i, cands, idx + 1, picked, size_now, base, profiles, acc, fixed, prev_size, chosen)

    def _tuple(self, chosen: list[int]) -> FamilyTuple:
        return FamilyTuple(tuple(SetFamily(self.n, self.k, tuple(self.masks[j] for j in iter_bits(bits)))
                                 for bits in chosen))

    def solve(self, threads: int = 1) -> bool:
        """Run to completion; False when the node budget ran out."""
        try:
            for size, reps in orbit_representatives(self.masks, self.n, self.k, len(self.masks),
                                                    self.accept_first, self.counter):
                live = [rep for rep in reps if self.accept_first(rep)]
                if threads > 1:
                    with ThreadPoolExecutor(max_workers=threads) as pool:
                        list(pool.map(self.run_from, live))
                else:
                    for rep in live:
                        self.run_from(rep)
                logger.debug(f"A_1 size {size}: {len(live)} representatives, best {self.book.best}")
        except BudgetExceededError as err:
            logger.warning(f"{self.mode} search truncated: {err}")
            return False
        return True


def _realised_all(n: int, k: int, L: LSpec) -> bool:
    return all(i in L for i in range(max(0, 2 * k - n), k + 1))


def _tuple_search(mode, n, k, r, L, budget, threads, collect_witnesses) -> SearchResult:
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    if not n >= k >= 2:
        raise ParameterError(f"need n >= k >= 2, got n={n}, k={k}")
    check_ground_set(n, k)
    check_canonical_n(n)
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")

    result = SearchResult(mode, n, k, r, L, None)
    if mode == PAIRWISE and _realised_all(n, k, L):
        full = SetFamily.complete(n, k)
        t = FamilyTuple(tuple([full] * r))
        result.max_sum = t.total
        result.witnesses, result.keys = [t], [canonical_form(t)]
        return result

    search = _TupleSearch(mode, n, k, r, L, collect_witnesses, budget)
    started = time.perf_counter()
    result.complete = search.solve(threads)
    result.witnesses_complete = result.complete and collect_witnesses
    result.nodes = search.counter.used
    if search.book.best:
        result.max_sum = search.book.best
    logger.info(f"{mode} ({n},{k},r={r},L={L}): {result.max_sum} in {time.perf_counter() - started:.2f}s, "
                f"{result.nodes} nodes")
    return _finish(result, search.book)


def oracle_pairwise_max(n: int, k: int, r: int, L: LSpec, budget: int | None = SEARCH_NODE_BUDGET,
                        threads: int = 1, collect_witnesses: bool = True) -> SearchResult:
    """Exact max of Σ|A_i| over nonempty pairwise cross L-intersecting r-tuples."""
    return _tuple_search(PAIRWISE, n, k, r, L, budget, threads, collect_witnesses)


def oracle_rcross_max(n: int, k: int, r: int, L: LSpec, budget: int | None = SEARCH_NODE_BUDGET,
                      threads: int = 1, collect_witnesses: bool = True) -> SearchResult:
    """Exact max of Σ|A_i| over nonempty r-cross L-intersecting r-tuples."""
    if r == 2:
        return oracle_cross2_max(n, k, L, collect_witnesses, budget, threads, mode=RCROSS)
    return _tuple_search(RCROSS, n, k, r, L, budget, threads, collect_witnesses)


# ---------------------------------------------------------------
# Naive scan
# ---------------------------------------------------------------

def _subset_and_table(bits: np.ndarray, identity: int) -> np.ndarray:
    """table[S] = AND of bits[j] over j in S."""
    c = len(bits)
    table = np.empty(1 << c, dtype=np.uint64)
    table[0] = np.uint64(identity)
    for b in range(c):
        table[1 << b:1 << (b + 1)] = table[:1 << b] & bits[b]
    return table


def naive_tuple_max(mode: str, n: int, k: int, r: int, L: LSpec) -> SearchResult:
    """Every A_1, A_2 as subset indices; the last family is the maximal compatible one. r <= 3."""
    if mode not in (PAIRWISE, RCROSS):
        raise ParameterError(f"naive scan covers PAIRWISE and RCROSS, got {mode}")
    if r not in (2, 3):
        raise ParameterError(f"naive scan covers r in {{2, 3}}, got r={r}")
    masks = all_k_masks(n, k)
    c = len(masks)
    if c > NAIVE_SCAN_MAX:
        raise ParameterError(f"naive scan is limited to C(n,k) <= {NAIVE_SCAN_MAX}, got {c}")

    arr = np.array(masks, dtype=np.uint64)
    allowed = np.array([i in L for i in range(k + 1)], dtype=bool)
    full = (1 << c) - 1

    def final_bits(q: int) -> int:
        return _pack(allowed[np.bitwise_count(arr & np.uint64(q))])

    subsets = np.arange(1 << c, dtype=np.uint64)
    sizes = np.bitwise_count(subsets).astype(np.int64)
    best = -1

    if mode == PAIRWISE or r == 2:
        compat = np.array([final_bits(m) for m in masks], dtype=np.uint64)
        last_of = _subset_and_table(compat, full)
        if r == 2:
            valid = (subsets > 0) & (last_of > 0)
            totals = sizes + np.bitwise_count(last_of).astype(np.int64)
            best = int(totals[valid].max()) if valid.any() else -1
        else:
            for a1 in range(1, 1 << c):
                region = last_of[a1]
                if not region:
                    continue
                last = region & last_of
                valid = (subsets > 0) & ((subsets & ~region) == 0) & (last > 0)
                if valid.any():
                    totals = sizes + np.bitwise_count(last).astype(np.int64)
                    best = max(best, int(sizes[a1] + totals[valid].max()))
    else:
        per_member = [
            _subset_and_table(np.array([final_bits(f & g) for g in masks], dtype=np.uint64), full)
            for f in masks
        ]
        for a1 in range(1, 1 << c):
            acc = np.full(1 << c, np.uint64(full))
            for j in iter_bits(a1):
                acc &= per_member[j]
            valid = (subsets > 0) & (acc > 0)
            if valid.any():
                totals = sizes + np.bitwise_count(acc).astype(np.int64)
                best = max(best, int(sizes[a1] + totals[valid].max()))

    return SearchResult(mode, n, k, r, L, best if best >= 0 else None,
                        witnesses_complete=False, method=NAIVE)


# ---------------------------------------------------------------
# Maximum t-intersecting family
# ---------------------------------------------------------------

def _greedy_colour(candidates: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Vertices in colour order with the running colour count; each class is pairwise non-adjacent."""
    order, bounds = [], []
    uncoloured = candidates
    colour = 0
    while uncoloured:
        colour += 1
        pool = uncoloured
        while pool:
            v = (pool & -pool).bit_length() - 1
            pool &= ~adj[v] & ~(1 << v)
            uncoloured &= ~(1 << v)
            order.append(v)
            bounds.append(colour)
    return order, bounds


def oracle_t_intersecting_max(n: int, k: int, t: int, budget: int | None = SEARCH_NODE_BUDGET) -> SearchResult:
    """Largest family with all pairwise intersections >= t, by colour-bounded clique search."""
    if not 0 <= t <= k:
        raise ParameterError(f"need 0 <= t <= k, got t={t}, k={k}")
    check_ground_set(n, k)
    masks = all_k_masks(n, k)
    adj = [sum(1 << j for j, w in enumerate(masks) if j != i and popcount(m & w) >= t)
           for i, m in enumerate(masks)]
    counter = SearchBudget(budget)
    best = [1, 1]

    def expand(clique: int, size: int, candidates: int) -> None:
        counter.spend()
        if not candidates:
            if size > best[0]:
                best[0], best[1] = size, clique
            return
        order, bounds = _greedy_colour(candidates, adj)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if size + bound <= best[0]:
                return
            expand(clique | (1 << v), size + 1, candidates & adj[v])
            candidates &= ~(1 << v)

    result = SearchResult(TINTERSECT, n, k, 1, LSpec.interval(t, k, k), None, method=CLIQUE)
    try:
        # vertex-transitive: some maximum family contains [k], rank 0
        expand(1, 1, adj[0])
    except BudgetExceededError as err:
        logger.warning(f"t-intersecting search truncated: {err}")
        result.complete = False
    family = SetFamily(n, k, tuple(masks[j] for j in iter_bits(best[1])))
    result.max_sum = best[0]
    result.witnesses = [FamilyTuple.of(family)]
    result.witnesses_complete = False
    result.nodes = counter.used
    return result


# ---------------------------------------------------------------
# Extremal configurations
# ---------------------------------------------------------------

def _complement_closed_seeds(n: int, k: int) -> list[SetFamily]:
    """Complement-closed proper nonempty families, one per isomorphism class."""
    ground = (1 << n) - 1
    pairs = sorted({min(m, ground ^ m) for m in all_k_masks(n, k)})
    seen = set()
    out = []
    for choice in range(1, (1 << len(pairs)) - 1):
        members = []
        for j in iter_bits(choice):
            members += [pairs[j], ground ^ pairs[j]]
        key = canonical_family(sorted(members), n, k)
        if key not in seen:
            seen.add(key)
            out.append(SetFamily.of(members, n, k))
    return out


def _proper_subfamily_seeds(n: int, k: int, budget: int | None, time_limit: float | None) -> list[SetFamily]:
    universe = all_k_masks(n, k)
    out = []
    counter = SearchBudget(budget, time_limit)
    for _, reps in orbit_representatives(universe, n, k, len(universe) - 1, None, counter):
        out += [SetFamily(n, k, rep) for rep in reps]
    return out


def theorem_configurations(n: int, k: int, L: LSpec, budget: int | None = WITNESS_NODE_BUDGET,
                           time_limit: float | None = WITNESS_TIME_LIMIT) -> dict:
    """Every (A, B) the two-family theorem lists at (n, k, L), by class name."""
    regime = classify_regime(n, k, L)
    out = {}
    for name in cross2_extremal_classes(n, k, L, regime.tag):
        variant = Cross2Variant(name)
        if variant is Cross2Variant.COMPLEMENT_SPLIT:
            seeds = _proper_subfamily_seeds(n, k, budget, time_limit)
        elif variant is Cross2Variant.COMPLEMENT_CLOSED:
            seeds = _complement_closed_seeds(n, k)
        else:
            seeds = [None]
        pairs = []
        for seed in seeds:
            try:
                a, b = construct_cross2_extremal(n, k, L, variant, seed)
            except ParameterError as err:
                logger.debug(f"{name} skipped: {err}")
                continue
            pairs.append(FamilyTuple.of(a, b))
        out[name] = pairs
    return out


def _compare_keys(oracle_keys, theory: dict) -> dict:
    theory_keys = {}
    for name, tuples in theory.items():
        for t in tuples:
            theory_keys.setdefault(canonical_form(t), set()).add(name)
    oracle_keys = set(oracle_keys)
    classes = sorted({name for key in oracle_keys & set(theory_keys) for name in theory_keys[key]})
    return {
        "match": oracle_keys == set(theory_keys),
        "witness_classes": classes,
        "extra": sorted(key.hex for key in oracle_keys - set(theory_keys)),
        "missing": sorted(key.hex for key in set(theory_keys) - oracle_keys),
    }


def verify_characterization(n: int, k: int, L: LSpec, budget: int | None = WITNESS_NODE_BUDGET,
                            threads: int = 1, time_limit: float | None = WITNESS_TIME_LIMIT) -> dict:
    """Oracle witnesses of the two-family problem against the theorem's extremal list, up to isomorphism."""
    bound = bound_cross2(n, k, L)
    report = {"n": n, "k": k, "L": L.as_list(), "regime": bound.regime,
              "bound": bound.to_report()["value"]}
    oracle = oracle_cross2_max(n, k, L, True, budget, threads, time_limit=time_limit)
    report["oracle"] = "INFEASIBLE" if oracle.infeasible else oracle.max_sum
    if oracle.infeasible:
        report.update(match=True, vacuous=True, witness_classes=[], extra=[], missing=[])
        return report
    if not oracle.witnesses_complete:
        report.update(match="UNKNOWN", witness_classes=[], extra=[], missing=[])
        return report
    try:
        theory = theorem_configurations(n, k, L, budget, time_limit)
    except BudgetExceededError as err:
        logger.warning(f"theorem configuration list truncated: {err}")
        report.update(match="UNKNOWN", witness_classes=[], extra=[], missing=[])
        return report
    report.update(_compare_keys(oracle.keys, theory))
    return report


def verify_pairwise_characterization(n: int, k: int, r: int, L: LSpec, budget: int | None = SEARCH_NODE_BUDGET,
                                     threads: int = 1) -> dict:
    """Oracle witnesses of the pairwise problem against the single star-type configuration (k ∈ L)."""
    theory = {"PAIRWISE_STAR": [construct_pairwise_extremal(n, k, r, L)]}
    oracle = oracle_pairwise_max(n, k, r, L, budget, threads)
    report = {"n": n, "k": k, "r": r, "L": L.as_list(),
              "bound": theory["PAIRWISE_STAR"][0].total,
              "oracle": "INFEASIBLE" if oracle.infeasible else oracle.max_sum,
              "complete": oracle.complete}
    if not oracle.witnesses_complete:
        report.update(match="UNKNOWN", witness_classes=[], extra=[], missing=[])
        return report
    report.update(_compare_keys(oracle.keys, theory))
    return report

