# ---------------------------------------------------------------
# bound_catalog.py
#
# Purpose:
#   Closed-form evaluation of every maximum-size bound the engine
#   certifies: the two-family cross bound with its regime split and
#   extremal lists, EKR, the Deza-Erdős-Frankl product, the
#   Wang-Zhang non-uniform bound, the pairwise cross-intersecting and
#   cross t-intersecting maxima, the pairwise L-intersecting cases and
#   the two r-cross maxima.
#
# Requirements:
#   - combinatorics for exact binomials and LSpec.
#   - classifier for the two-family regime.
#
# Output:
#   - BoundResult values; to_report() gives the fixed-order report dict.
#
# Notes:
#   - Bounds that only hold for large n carry asymptotic=True.
#   - Open cases raise UnsupportedLError instead of returning a number.
# ---------------------------------------------------------------

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from scripts.classifier import CASE_I, CASE_II, CASE_III, INFEASIBLE, classify_regime
from scripts.combinatorics import LSpec, binom_exact
from scripts.constructions import (
    Cross2Variant,
    complement_closed_applies,
    complement_split_applies,
    star_star_applies,
    subcube_applies,
)
from scripts.errors import ParameterError, UnsupportedLError

logger = logging.getLogger(__name__)

# Report mode tags
CROSS2 = "CROSS2"
PAIRWISE = "PAIRWISE"
RCROSS = "RCROSS"
EKR = "EKR"
DEZA_ERDOS_FRANKL = "DEZA_ERDOS_FRANKL"
WANG_ZHANG = "WANG_ZHANG"
PAIRWISE_CI = "PAIRWISE_CI"
PAIRWISE_T = "PAIRWISE_T"
TINTERSECT = "TINTERSECT"

# Extremal descriptors beyond the two-family variants
PARTITION = "PARTITION"
PAIRWISE_STAR = "PAIRWISE_STAR"
RCROSS_INTERVAL = "RCROSS_INTERVAL"

DEGENERATE = "DEGENERATE"
EXACT = "EXACT"


@dataclass
class BoundResult:
    mode: str
    n: int
    k: int
    r: int | None
    L: LSpec | None
    value: int | Fraction | None
    regime: str = EXACT
    conditions: str = ""
    asymptotic: bool = False
    terms: list = field(default_factory=list)
    extremal_classes: list = field(default_factory=list)
    branch: str | None = None
    argmax: int | None = None
    notes: list = field(default_factory=list)

    @property
    def infeasible(self) -> bool:
        return self.value is None

    def to_report(self) -> dict:
        if self.value is None:
            value = INFEASIBLE
        elif isinstance(self.value, Fraction) and self.value.denominator != 1:
            value = f"{self.value.numerator}/{self.value.denominator}"
        else:
            value = int(self.value)
        report = {
            "mode": self.mode,
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "L": self.L.as_list() if self.L is not None else None,
            "regime": self.regime,
            "value": value,
            "asymptotic": self.asymptotic,
            "terms": [[i, a] for i, a in self.terms],
            "extremal_classes": list(self.extremal_classes),
        }
        if isinstance(self.value, Fraction):
            report["floor"] = math.floor(self.value)
        if self.branch is not None:
            report["branch"] = self.branch
        if self.argmax is not None:
            report["argmax_m"] = self.argmax
        if self.conditions:
            report["conditions"] = self.conditions
        if self.notes:
            report["notes"] = list(self.notes)
        return report


def sigma_terms(n: int, k: int, L: LSpec) -> list[tuple[int, int]]:
    """(i, C(k,i)·C(n-k,k-i)) for i in L."""
    return [(i, binom_exact(k, i) * binom_exact(n - k, k - i)) for i in L]


def sigma(n: int, k: int, L: LSpec) -> int:
    return sum(a for _, a in sigma_terms(n, k, L))


def _check_r(r: int) -> None:
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")


def _branch(first: int, second: int, first_name: str, second_name: str) -> str:
    if first == second:
        return "tie"
    return first_name if first > second else second_name


# ---------------------------------------------------------------
# Two families
# ---------------------------------------------------------------

def cross2_extremal_classes(n: int, k: int, L: LSpec, tag: str) -> list[str]:
    if tag == CASE_I:
        return [Cross2Variant.COMPLETE.value]
    if tag == CASE_II:
        out = [Cross2Variant.STAR_PAIR.value]
        if complement_split_applies(n, k, L):
            out.append(Cross2Variant.COMPLEMENT_SPLIT.value)
        if star_star_applies(n, k, L):
            out.append(Cross2Variant.STAR_STAR.value)
        if subcube_applies(n, k, L):
            out.append(Cross2Variant.SUBCUBE.value)
        return out
    if tag == CASE_III:
        out = [Cross2Variant.PAIR_MIDDLE.value]
        if complement_closed_applies(n, k, L):
            out.append(Cross2Variant.COMPLEMENT_CLOSED.value)
        return out
    return []


def bound_cross2(n: int, k: int, L: LSpec) -> BoundResult:
    regime = classify_regime(n, k, L)
    terms = sigma_terms(n, k, L)
    total = sum(a for _, a in terms)
    if regime.tag == CASE_I:
        value = 2 * binom_exact(n, k)
    elif regime.tag == CASE_II:
        value = total + 1
    elif regime.tag == CASE_III:
        value = total + 2
    else:
        value = None
    return BoundResult(
        mode=CROSS2, n=n, k=k, r=2, L=L, value=value,
        regime=regime.tag, conditions=regime.conditions, terms=terms,
        extremal_classes=cross2_extremal_classes(n, k, L, regime.tag),
    )


def bound_ekr(n: int, k: int) -> BoundResult:
    if n < 2 * k:
        raise ParameterError(f"EKR needs n >= 2k, got n={n}, k={k}")
    return BoundResult(mode=EKR, n=n, k=k, r=None, L=None, value=binom_exact(n - 1, k - 1))


def bound_deza_erdos_frankl(n: int, k: int, L: LSpec) -> BoundResult:
    """Product over l in L of (n-l)/(k-l), exact."""
    if k in L:
        raise ParameterError(f"the product bound needs k ∉ L, got L={L}")
    value = Fraction(1)
    for l in L:
        value *= Fraction(n - l, k - l)
    result = BoundResult(mode=DEZA_ERDOS_FRANKL, n=n, k=k, r=None, L=L, value=value)
    if n < 2 ** k * k ** 3:
        result.notes.append(f"n={n} is below the stated range n >= 2^k k^3 = {2 ** k * k ** 3}")
    return result


def bound_wang_zhang(n: int, a: int, b: int, t: int) -> BoundResult:
    """C(n,b) - Σ_{i<t} C(a,i)C(n-a,b-i) + 1; side conditions are reported, not enforced."""
    value = binom_exact(n, b) - sum(binom_exact(a, i) * binom_exact(n - a, b - i) for i in range(t)) + 1
    result = BoundResult(mode=WANG_ZHANG, n=n, k=b, r=2, L=None, value=value,
                         terms=[(i, binom_exact(a, i) * binom_exact(n - a, b - i)) for i in range(t)])
    checks = [
        (n >= 4, "n >= 4"),
        (a >= 2 and b >= 2, "a, b >= 2"),
        (t < min(a, b), "t < min(a, b)"),
        (a + b < n + t, "a + b < n + t"),
        ((n, t) != (a + b, 1), "(n, t) ≠ (a + b, 1)"),
        (binom_exact(n, a) <= binom_exact(n, b), "C(n,a) <= C(n,b)"),
    ]
    for ok, text in checks:
        if not ok:
            result.notes.append(f"side condition violated: {text}")
            logger.warning(f"Wang-Zhang side condition violated at n={n}, a={a}, b={b}, t={t}: {text}")
    return result


# ---------------------------------------------------------------
# Pairwise families
# ---------------------------------------------------------------

def bound_pairwise_cross_intersecting(n: int, k: int, r: int) -> BoundResult:
    _check_r(r)
    if n < 2 * k:
        raise ParameterError(f"pairwise cross-intersecting bound needs n >= 2k, got n={n}, k={k}")
    hilton_milner = binom_exact(n, k) - binom_exact(n - k, k) + r - 1
    star = r * binom_exact(n - 1, k - 1)
    return BoundResult(
        mode=PAIRWISE_CI, n=n, k=k, r=r, L=LSpec.interval(1, k, k),
        value=max(hilton_milner, star), branch=_branch(hilton_milner, star, "hilton_milner", "star"),
    )


def bound_t_intersecting_max(n: int, k: int, t: int) -> int:
    """M(n,k,t): largest of the families {F : |F ∩ [t+2i]| >= t+i}, 0 <= i <= k-t."""
    if not 1 <= t <= k <= n:
        raise ParameterError(f"M(n,k,t) needs 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    best = 0
    for i in range(k - t + 1):
        width = t + 2 * i
        size = sum(binom_exact(width, j) * binom_exact(n - width, k - j) for j in range(t + i, k + 1))
        best = max(best, size)
    return best


def bound_pairwise_t(n: int, k: int, t: int, r: int) -> BoundResult:
    _check_r(r)
    if not k > t >= 1:
        raise ParameterError(f"pairwise t-intersecting bound needs k > t >= 1, got k={k}, t={t}")
    if n < 2 * k - t + 1:
        raise ParameterError(f"pairwise t-intersecting bound needs n >= 2k-t+1, got n={n}")
    removed = [(i, binom_exact(k, i) * binom_exact(n - k, k - i)) for i in range(t)]
    first = binom_exact(n, k) - sum(a for _, a in removed) + r - 1
    second = r * bound_t_intersecting_max(n, k, t)
    return BoundResult(
        mode=PAIRWISE_T, n=n, k=k, r=r, L=LSpec.interval(t, k, k),
        value=max(first, second), terms=removed,
        branch=_branch(first, second, "complement", "t_intersecting"),
    )


def bound_pairwise_L(n: int, k: int, r: int, L: LSpec) -> BoundResult:
    _check_r(r)
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")

    if L.is_full():
        return BoundResult(mode=PAIRWISE, n=n, k=k, r=r, L=L, value=r * binom_exact(n, k),
                           conditions="L = [0,k]", extremal_classes=[Cross2Variant.COMPLETE.value])

    t = L.upper_interval_start()
    if t is not None:
        removed = [(i, binom_exact(k, i) * binom_exact(n - k, k - i)) for i in range(t)]
        first = binom_exact(n, k) - sum(a for _, a in removed) + r - 1
        second = r * binom_exact(n - t, k - t)
        return BoundResult(
            mode=PAIRWISE, n=n, k=k, r=r, L=L, value=max(first, second),
            conditions=f"L = [{t},k]", asymptotic=True, terms=removed,
            branch=_branch(first, second, "complement", "t_star"),
        )

    if L.is_interval(0, k - 1):
        return BoundResult(mode=PAIRWISE, n=n, k=k, r=r, L=L, value=binom_exact(n, k),
                           conditions="L = [0,k-1]", asymptotic=True, extremal_classes=[PARTITION])

    if k in L:
        terms = sigma_terms(n, k, L)
        return BoundResult(
            mode=PAIRWISE, n=n, k=k, r=r, L=L, value=sum(a for _, a in terms) + r - 1,
            conditions="k ∈ L and L ≠ [t,k]", asymptotic=True, terms=terms,
            extremal_classes=[PAIRWISE_STAR],
        )

    raise UnsupportedLError(
        f"no proven pairwise bound for L={L} with k ∉ L and L ≠ [0,k-1]; "
        "this is the open problem on pairwise cross L-intersecting families with k ∉ L"
    )


# ---------------------------------------------------------------
# r-cross families
# ---------------------------------------------------------------

def min_rwise_intersection(n: int, k: int, r: int) -> int:
    return max(0, r * k - (r - 1) * n)


def bound_rcross_t(n: int, k: int, t: int, r: int) -> BoundResult:
    """Max over m in [t,k] of Σ_{i=t}^k C(m,i)C(n-m,k-i) + (r-1)C(n-m,k-m); smallest m on ties."""
    _check_r(r)
    if not 1 <= t <= k:
        raise ParameterError(f"r-cross t-intersecting bound needs 1 <= t <= k, got t={t}, k={k}")
    if n < 2 * k - t:
        raise ParameterError(f"r-cross t-intersecting bound needs n >= 2k-t, got n={n}")
    L = LSpec.interval(t, k, k)

    if min_rwise_intersection(n, k, r) >= t:
        return BoundResult(
            mode=RCROSS, n=n, k=k, r=r, L=L, value=r * binom_exact(n, k), regime=DEGENERATE,
            conditions=f"every {r}-wise intersection already has size >= {t}",
            extremal_classes=[Cross2Variant.COMPLETE.value],
            notes=["all families complete; the max-over-m expression undercounts here"],
        )

    best, argmax, terms = -1, None, []
    for m in range(t, k + 1):
        value = sum(binom_exact(m, i) * binom_exact(n - m, k - i) for i in range(t, k + 1))
        value += (r - 1) * binom_exact(n - m, k - m)
        terms.append((m, value))
        if value > best:
            best, argmax = value, m
    return BoundResult(mode=RCROSS, n=n, k=k, r=r, L=L, value=best, terms=terms, argmax=argmax)


def bound_rcross_interval(n: int, k: int, r: int, l: int, s: int) -> BoundResult:
    """(r-1)C(n-l,k-l) - Σ_{i=s-l}^{k-l} C(k-l,i)C(n-k,k-l-i) + 1, for r-cross [l, s-1]."""
    _check_r(r)
    if not 0 <= l < s <= k:
        raise ParameterError(f"interval bound needs 0 <= l < s <= k, got l={l}, s={s}, k={k}")
    removed = [(i, binom_exact(k - l, i) * binom_exact(n - k, k - l - i)) for i in range(s - l, k - l + 1)]
    value = (r - 1) * binom_exact(n - l, k - l) - sum(a for _, a in removed) + 1
    return BoundResult(
        mode=RCROSS, n=n, k=k, r=r, L=LSpec.interval(l, s - 1, k), value=value,
        conditions=f"L = [{l},{s - 1}]", asymptotic=True, terms=removed,
        extremal_classes=[RCROSS_INTERVAL],
    )


def bound_rcross(n: int, k: int, r: int, L: LSpec) -> BoundResult:
    """Dispatch an r-cross instance to the interval form that covers it."""
    _check_r(r)
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")
    if L.is_full():
        return BoundResult(mode=RCROSS, n=n, k=k, r=r, L=L, value=r * binom_exact(n, k),
                           conditions="L = [0,k]", extremal_classes=[Cross2Variant.COMPLETE.value])
    t = L.upper_interval_start()
    if t is not None:
        return bound_rcross_t(n, k, t, r)
    if L.is_interval(L.min, L.max):
        return bound_rcross_interval(n, k, r, L.min, L.max + 1)
    raise UnsupportedLError(
        f"no proven r-cross bound for the non-interval L={L}; "
        "this is the open problem on r-cross L-intersecting families for general L"
    )


def bound_for_mode(mode: str, n: int, k: int, r: int, L: LSpec) -> BoundResult:
    """Catalog entry the verify pipeline compares an oracle against."""
    if mode == CROSS2:
        return bound_cross2(n, k, L)
    if mode == PAIRWISE:
        return bound_pairwise_L(n, k, r, L)
    if mode == RCROSS:
        return bound_rcross(n, k, r, L)
    raise ParameterError(f"unknown mode {mode}")
