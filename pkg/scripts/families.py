# ---------------------------------------------------------------
# families.py
#
# Purpose:
#   Set-family values (SetFamily, FamilyTuple), every intersection
#   predicate, shadows, restrictions, the threshold families used by
#   the pairwise and r-cross arguments, and complement operations.
#
# Requirements:
#   - combinatorics for masks, ranks and LSpec.
#   - numpy only for seeded random families.
#
# Output:
#   - Immutable families; every operation returns a new value.
#
# Notes:
#   - Members are masks kept in strictly increasing (colex) order.
#   - A set shared by two families counts as a pair with intersection k.
#   - Threshold comparisons use exact Fractions.
# ---------------------------------------------------------------

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from config.settings import REAL_TOL
from scripts.combinatorics import (
    KSubset,
    LSpec,
    all_k_masks,
    binom_exact,
    binom_real,
    check_ground_set,
    elements_of,
    mask_from_elements,
    popcount,
    solve_binom_inverse,
)
from scripts.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SetFamily:
    n: int
    k: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        check_ground_set(self.n, self.k)
        previous = -1
        for mask in self.members:
            if mask <= previous:
                raise ParameterError("family members must be duplicate-free and in colex order")
            if mask >> self.n or popcount(mask) != self.k:
                raise ParameterError(f"mask {mask:#x} is not a {self.k}-subset of [{self.n}]")
            previous = mask

    @classmethod
    def of(cls, masks, n: int, k: int) -> "SetFamily":
        """Build from any iterable of masks; sorts and drops repeats."""
        return cls(n, k, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, sets, n: int, k: int | None = None) -> "SetFamily":
        sets = [list(s) for s in sets]
        if k is None:
            if not sets:
                raise ParameterError("cannot infer k from an empty list of sets")
            k = len(sets[0])
        return cls.of((mask_from_elements(s, n) for s in sets), n, k)

    @classmethod
    def complete(cls, n: int, k: int) -> "SetFamily":
        return cls(n, k, tuple(all_k_masks(n, k)))

    @classmethod
    def empty(cls, n: int, k: int) -> "SetFamily":
        return cls(n, k, ())

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        if isinstance(mask, KSubset):
            mask = mask.mask
        return mask in set(self.members)

    def to_sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def subsets(self) -> list[KSubset]:
        return [KSubset(m, self.n, self.k) for m in self.members]

    def union(self, other: "SetFamily") -> "SetFamily":
        _check_same(self, other)
        return SetFamily.of(self.members + other.members, self.n, self.k)

    def intersection(self, other: "SetFamily") -> "SetFamily":
        _check_same(self, other)
        keep = set(other.members)
        return SetFamily(self.n, self.k, tuple(m for m in self.members if m in keep))

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.to_sets()) + "}"


@dataclass(frozen=True)
class FamilyTuple:
    families: tuple[SetFamily, ...]

    def __post_init__(self):
        if not self.families:
            raise ParameterError("a family tuple needs at least one family")
        n, k = self.families[0].n, self.families[0].k
        for f in self.families:
            if (f.n, f.k) != (n, k):
                raise ParameterError("all families of a tuple must share (n, k)")

    @classmethod
    def of(cls, *families: SetFamily) -> "FamilyTuple":
        return cls(tuple(families))

    @property
    def r(self) -> int:
        return len(self.families)

    @property
    def n(self) -> int:
        return self.families[0].n

    @property
    def k(self) -> int:
        return self.families[0].k

    @property
    def sizes(self) -> list[int]:
        return [len(f) for f in self.families]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def all_nonempty(self) -> bool:
        return all(len(f) > 0 for f in self.families)

    def __iter__(self):
        return iter(self.families)

    def __getitem__(self, i):
        return self.families[i]


def _check_same(a: SetFamily, b: SetFamily) -> None:
    if (a.n, a.k) != (b.n, b.k):
        raise ParameterError(f"families over different parameters: ({a.n},{a.k}) vs ({b.n},{b.k})")


def _check_L(L: LSpec, k: int) -> None:
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k} but families are {k}-uniform")


def _allowed(L: LSpec, size: int) -> bool:
    return bool(L.allowed >> size & 1)


# ---------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------

def intersection_size(a: KSubset, b: KSubset) -> int:
    if (a.n, a.k) != (b.n, b.k):
        raise ParameterError(f"subsets over different parameters: ({a.n},{a.k}) vs ({b.n},{b.k})")
    return popcount(a.mask & b.mask)


def is_cross_L(a: SetFamily, b: SetFamily, L: LSpec) -> bool:
    _check_same(a, b)
    _check_L(L, a.k)
    return all(_allowed(L, popcount(x & y)) for x in a.members for y in b.members)


def is_pairwise_cross_L(t: FamilyTuple, L: LSpec) -> bool:
    if t.r < 2:
        raise ParameterError(f"pairwise condition needs r >= 2, got r={t.r}")
    return all(is_cross_L(t[i], t[j], L) for i, j in combinations(range(t.r), 2))


def rwise_profiles(t: FamilyTuple, upto: int | None = None) -> set[int]:
    """All intersections F_1 ∩ ... ∩ F_upto over choices of one set per family."""
    upto = t.r if upto is None else upto
    profiles = set(t[0].members)
    for f in t.families[1:upto]:
        profiles = {p & v for p in profiles for v in f.members}
    return profiles


def is_rcross_L(t: FamilyTuple, L: LSpec) -> bool:
    if t.r < 2:
        raise ParameterError(f"r-cross condition needs r >= 2, got r={t.r}")
    _check_L(L, t.k)
    return all(_allowed(L, popcount(p)) for p in rwise_profiles(t))


def is_L_intersecting(f: SetFamily, L: LSpec) -> bool:
    _check_L(L, f.k)
    return all(_allowed(L, popcount(x & y)) for x, y in combinations(f.members, 2))


# ---------------------------------------------------------------
# Shadows and restrictions
# ---------------------------------------------------------------

def subsets_of_size(mask: int, i: int):
    for combo in combinations(elements_of(mask), i):
        yield mask_from_elements(combo)


def shadow(f: SetFamily, i: int) -> SetFamily:
    if not 0 <= i <= f.k:
        raise ParameterError(f"shadow level i={i} outside [0, {f.k}]")
    if i == f.k:
        return f
    out = set()
    for mask in f.members:
        out.update(subsets_of_size(mask, i))
    return SetFamily.of(out, f.n, i)


def _check_shadow_level(k: int, i: int) -> None:
    if not 1 <= i < k:
        raise ParameterError(f"shadow bound needs 1 <= i < k, got i={i}, k={k}")


def _close(a: float, b: float) -> float:
    return REAL_TOL * max(1.0, abs(a), abs(b))


def lovasz_check(f: SetFamily, i: int) -> dict:
    """
    Real-valued shadow bound on one family.

    With |F| = C(x, k) for real x >= k, the i-shadow has at least C(x, i)
    members; read the other way, a shadow of size C(y, i) caps |F| at
    C(y, k). Both directions are checked with a relative tolerance.
    """
    _check_shadow_level(f.k, i)
    shadow_size = len(shadow(f, i))
    report = {
        "size": len(f),
        "i": i,
        "x": None,
        "shadow_size": shadow_size,
        "lovasz_lower_bound": 0.0,
        "satisfied": True,
        "y": None,
        "size_cap": 0.0,
        "cap_satisfied": True,
        "slack": float(shadow_size),
    }
    if not f.members:
        return report
    x = solve_binom_inverse(len(f), f.k)
    lower = binom_real(x, i)
    y = solve_binom_inverse(shadow_size, i)
    cap = binom_real(y, f.k)
    report.update(
        x=x,
        lovasz_lower_bound=lower,
        satisfied=shadow_size >= lower - _close(shadow_size, lower),
        y=y,
        size_cap=cap,
        cap_satisfied=len(f) <= cap + _close(len(f), cap),
        slack=shadow_size - lower,
    )
    if not (report["satisfied"] and report["cap_satisfied"]):
        logger.warning(f"shadow bound failed on a family of size {len(f)} at level {i}: {report}")
    return report


def shadow_corpus(n: int, k: int, trials: int, seed: int, i: int | None = None) -> dict:
    """
    Run lovasz_check over seeded random families and over the complete
    layers C([m], k), m = k..n, where the bound is attained; on a layer
    the shadow must be exactly C([m], i), compared as integers.
    """
    check_ground_set(n, k)
    levels = [i] if i is not None else list(range(1, k))
    for level in levels:
        _check_shadow_level(k, level)
    if trials < 0:
        raise ParameterError(f"trials must be >= 0, got {trials}")
    rng = np.random.default_rng(seed)
    side = binom_exact(n, k)
    checked = violations = cap_violations = 0
    min_slack = None
    for _ in range(trials):
        size = int(rng.integers(1, side + 1))
        f = random_family(n, k, size, rng)
        for level in levels:
            report = lovasz_check(f, level)
            checked += 1
            violations += not report["satisfied"]
            cap_violations += not report["cap_satisfied"]
            if min_slack is None or report["slack"] < min_slack:
                min_slack = report["slack"]
    tight = tight_checked = 0
    for m in range(k, n + 1):
        layer = SetFamily.of(all_k_masks(m, k), n, k)
        for level in levels:
            report = lovasz_check(layer, level)
            tight_checked += 1
            tight += report["shadow_size"] == binom_exact(m, level)
    return {
        "n": n,
        "k": k,
        "levels": levels,
        "trials": trials,
        "seed": seed,
        "checked": checked,
        "violations": violations,
        "cap_violations": cap_violations,
        "min_slack": min_slack,
        "equality_checked": tight_checked,
        "equality_tight": tight,
    }


def restrict(f: SetFamily, S: int) -> SetFamily:
    """F(S): members containing the set S (given as a mask)."""
    if popcount(S) > f.k:
        return SetFamily.empty(f.n, f.k)
    return SetFamily(f.n, f.k, tuple(m for m in f.members if m & S == S))


def strip(f: SetFamily, S: int) -> SetFamily:
    """{F minus S : F in F(S)}, (k-|S|)-uniform, keeping the original labels."""
    s = popcount(S)
    if s > f.k:
        return SetFamily.empty(f.n, 0)
    return SetFamily.of((m & ~S for m in restrict(f, S).members), f.n, f.k - s)


def _degree_counts(f: SetFamily, s: int) -> Counter:
    counts = Counter()
    for mask in f.members:
        counts.update(subsets_of_size(mask, s))
    return counts


def _threshold_family(f: SetFamily, s: int, threshold: Fraction, strict: bool) -> SetFamily:
    if not 1 <= s <= f.k:
        raise ParameterError(f"threshold level s={s} outside [1, {f.k}]")
    counts = _degree_counts(f, s)

    def passes(c):
        return c > threshold if strict else c >= threshold

    if passes(0):
        # every s-set qualifies regardless of degree
        return SetFamily.of((S for S in all_k_masks(f.n, s) if passes(counts.get(S, 0))), f.n, s)
    return SetFamily.of((S for S, c in counts.items() if passes(c)), f.n, s)


def threshold_S_value(n: int, k: int, s: int) -> Fraction:
    return Fraction(3, 2) * binom_exact(n - s, k - s) - binom_exact(n - k, k - s)


def threshold_T_value(n: int, k: int, s: int) -> Fraction:
    return Fraction(binom_exact(n - s, k - s) - binom_exact(n - k, k - s))


def threshold_S(f: SetFamily, s: int) -> SetFamily:
    """s-sets S with |F(S)| > (3/2)C(n-s,k-s) - C(n-k,k-s)."""
    return _threshold_family(f, s, threshold_S_value(f.n, f.k, s), strict=True)


def threshold_T(f: SetFamily, s: int) -> SetFamily:
    """s-sets T with |F(T)| >= C(n-s,k-s) - C(n-k,k-s)."""
    return _threshold_family(f, s, threshold_T_value(f.n, f.k, s), strict=False)


# ---------------------------------------------------------------
# Complements
# ---------------------------------------------------------------

def complement_family(f: SetFamily) -> SetFamily:
    present = set(f.members)
    return SetFamily(f.n, f.k, tuple(m for m in all_k_masks(f.n, f.k) if m not in present))


def complement_sets(f: SetFamily) -> SetFamily:
    full = (1 << f.n) - 1
    return SetFamily.of((full ^ m for m in f.members), f.n, f.n - f.k)


def is_complement_closed(f: SetFamily) -> bool:
    return f.n == 2 * f.k and complement_sets(f) == f


# ---------------------------------------------------------------
# Threshold-family audit for pairwise tuples
# ---------------------------------------------------------------

def threshold_separation_audit(t: FamilyTuple, L: LSpec) -> dict:
    """
    Checks that the S_s threshold families of a pairwise cross
    L-intersecting tuple are pairwise cross [0, max(0, 2s-k-1)]-intersecting,
    where s is the least size missing from L.

    Applies when 0 and k are in L, L is not of the form [t, k] and n >= 2k.
    """
    n, k = t.n, t.k
    applicable = (
        0 in L and k in L and L.upper_interval_start() is None and n >= 2 * k
        and is_pairwise_cross_L(t, L)
    )
    report = {"applicable": applicable, "s": None, "allowed": None, "sizes": [], "violations": []}
    if not applicable:
        return report
    s = min(L.complement_values())
    top = max(0, 2 * s - k - 1)
    allowed = LSpec.interval(0, top, s)
    reduced = [threshold_S(f, s) for f in t.families]
    report["s"] = s
    report["allowed"] = allowed.as_list()
    report["sizes"] = [len(f) for f in reduced]
    for i, j in combinations(range(t.r), 2):
        for x in reduced[i].members:
            for y in reduced[j].members:
                if not _allowed(allowed, popcount(x & y)):
                    report["violations"].append([i, j, elements_of(x), elements_of(y)])
    if report["violations"]:
        logger.warning(f"threshold audit found {len(report['violations'])} violating pairs at n={n}, k={k}, L={L}")
    return report


# ---------------------------------------------------------------
# Seeded random inputs
# ---------------------------------------------------------------

def random_family(n: int, k: int, size: int, rng: np.random.Generator) -> SetFamily:
    universe = all_k_masks(n, k)
    if not 1 <= size <= len(universe):
        raise ParameterError(f"family size {size} outside [1, {len(universe)}]")
    picks = rng.choice(len(universe), size=size, replace=False)
    return SetFamily.of((universe[i] for i in picks), n, k)


def random_pairwise_tuple(n: int, k: int, r: int, L: LSpec, rng: np.random.Generator) -> FamilyTuple:
    """
    Greedy random pairwise cross L-intersecting tuple with nonempty families.

    Sets are visited in random order and each is offered to the families
    in random order; a family accepts a set compatible with every member
    of every other family.
    """
    universe = all_k_masks(n, k)
    chosen = [set() for _ in range(r)]
    order = rng.permutation(len(universe))
    for idx in order:
        v = universe[idx]
        for i in rng.permutation(r):
            others = (m for j in range(r) if j != i for m in chosen[j])
            if all(_allowed(L, popcount(v & m)) for m in others):
                chosen[i].add(v)
                break
    if not all(chosen):
        # fall back to r copies of a single set when k is allowed
        if k not in L:
            raise ParameterError(f"random tuple generation left a family empty for L={L}")
        v = universe[int(order[0])]
        chosen = [{v} for _ in range(r)]
    return FamilyTuple(tuple(SetFamily.of(c, n, k) for c in chosen))
