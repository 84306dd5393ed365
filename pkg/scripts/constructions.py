# ---------------------------------------------------------------
# constructions.py
#
# Purpose:
#   Builders for every extremal configuration named by the cross,
#   pairwise and r-cross maximum theorems.
#
# Requirements:
#   - families for SetFamily / FamilyTuple and complements.
#
# Output:
#   - (SetFamily, SetFamily) pairs for the two-family variants and
#     FamilyTuple values for the r-family constructions.
#
# Notes:
#   - Side conditions are checked before building; a violated side
#     condition raises ParameterError naming it.
# ---------------------------------------------------------------

import logging
from enum import Enum

from scripts.combinatorics import LSpec, all_k_masks, binom_exact, popcount
from scripts.errors import ParameterError
from scripts.families import (
    FamilyTuple,
    SetFamily,
    complement_family,
    complement_sets,
)

logger = logging.getLogger(__name__)


class Cross2Variant(str, Enum):
    COMPLETE = "COMPLETE"
    STAR_PAIR = "STAR_PAIR"
    COMPLEMENT_SPLIT = "COMPLEMENT_SPLIT"
    STAR_STAR = "STAR_STAR"
    SUBCUBE = "SUBCUBE"
    PAIR_MIDDLE = "PAIR_MIDDLE"
    COMPLEMENT_CLOSED = "COMPLEMENT_CLOSED"


def _first_k(k: int) -> int:
    return (1 << k) - 1


def _meets_first_k_in(n: int, k: int, L: LSpec) -> SetFamily:
    """{F : |F ∩ [k]| ∈ L}."""
    core = _first_k(k)
    return SetFamily(n, k, tuple(m for m in all_k_masks(n, k) if popcount(m & core) in L))


def distinct_pair_sizes(n: int, k: int) -> range:
    """Intersection sizes realised by two distinct k-subsets of [n]."""
    return range(max(0, 2 * k - n), k)


def complement_split_applies(n: int, k: int, L: LSpec) -> bool:
    return all(i in L for i in distinct_pair_sizes(n, k))


def star_star_applies(n: int, k: int, L: LSpec) -> bool:
    return k == 2 and L.values == (1, 2)


def subcube_applies(n: int, k: int, L: LSpec) -> bool:
    if k != n - 2:
        return False
    window = {i for i in range(max(0, k - 2), k + 1) if i in L}
    return window == {k - 1, k}


def pair_middle_applies(n: int, k: int, L: LSpec) -> bool:
    return n == 2 * k and L == L.reflect()


def complement_closed_applies(n: int, k: int, L: LSpec) -> bool:
    return n == 2 * k and L.is_interval(1, k - 1)


def construct_cross2_extremal(n: int, k: int, L: LSpec, variant, seed: SetFamily | None = None):
    """Return the (A, B) pair named by `variant`."""
    variant = Cross2Variant(variant)
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")

    if variant is Cross2Variant.COMPLETE:
        full = SetFamily.complete(n, k)
        if not all(i in L for i in range(max(0, 2 * k - n), k + 1)):
            raise ParameterError(f"COMPLETE needs every realised intersection size in L, got L={L}")
        return full, full

    if variant is Cross2Variant.STAR_PAIR:
        b = _meets_first_k_in(n, k, L)
        if not len(b):
            raise ParameterError(f"STAR_PAIR is empty on the second side at n={n}, k={k}, L={L}")
        return SetFamily(n, k, (_first_k(k),)), b

    if variant is Cross2Variant.PAIR_MIDDLE:
        if not pair_middle_applies(n, k, L):
            raise ParameterError(f"PAIR_MIDDLE needs n = 2k and L = k - L, got n={n}, k={k}, L={L}")
        core = _first_k(k)
        a = SetFamily.of([core, ((1 << n) - 1) ^ core], n, k)
        return a, _meets_first_k_in(n, k, L)

    if variant is Cross2Variant.STAR_STAR:
        if not star_star_applies(n, k, L):
            raise ParameterError(f"STAR_STAR needs k = 2 and L = {{1,2}}, got k={k}, L={L}")
        star = SetFamily(n, k, tuple(m for m in all_k_masks(n, k) if m & 1))
        return star, star

    if variant is Cross2Variant.SUBCUBE:
        if not subcube_applies(n, k, L):
            raise ParameterError(f"SUBCUBE needs k = n - 2 and L ∩ [k-2,k] = {{k-1,k}}, got n={n}, k={k}, L={L}")
        cube = SetFamily(n, k, tuple(all_k_masks(n - 1, k)))
        return cube, cube

    if seed is None or not len(seed):
        raise ParameterError(f"{variant.value} needs a nonempty seed family")
    if (seed.n, seed.k) != (n, k):
        raise ParameterError(f"seed family is over ({seed.n},{seed.k}), expected ({n},{k})")

    if variant is Cross2Variant.COMPLEMENT_SPLIT:
        if not complement_split_applies(n, k, L):
            raise ParameterError(f"COMPLEMENT_SPLIT needs [max(0,2k-n), k-1] ⊆ L, got L={L}")
        other = complement_family(seed)
        if not len(other):
            raise ParameterError("COMPLEMENT_SPLIT seed must be a proper subfamily")
        return seed, other

    # COMPLEMENT_CLOSED
    if not complement_closed_applies(n, k, L):
        raise ParameterError(f"COMPLEMENT_CLOSED needs n = 2k and L = [1, k-1], got n={n}, k={k}, L={L}")
    closed = seed.union(complement_sets(seed))
    other = complement_family(closed)
    if not len(other):
        raise ParameterError("COMPLEMENT_CLOSED seed closes up to the whole layer")
    return closed, other


def construct_pairwise_extremal(n: int, k: int, r: int, L: LSpec) -> FamilyTuple:
    """r-1 copies of {[k]} and the family {A : |A ∩ [k]| ∈ L}."""
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    if k not in L:
        raise ParameterError(f"the pairwise star construction needs k ∈ L, got L={L}")
    single = SetFamily(n, k, (_first_k(k),))
    return FamilyTuple(tuple([single] * (r - 1) + [_meets_first_k_in(n, k, L)]))


def construct_rcross_extremal(n: int, k: int, r: int, l: int, s: int) -> FamilyTuple:
    """
    A_1 = {[k]}, A_2 = {A : |A ∩ [k]| <= s-1, [l] ⊆ A}, A_3..A_r = {A : [l] ⊆ A};
    r-cross [l, s-1]-intersecting.
    """
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    if not 0 <= l < s <= k:
        raise ParameterError(f"need 0 <= l < s <= k, got l={l}, s={s}, k={k}")
    core = _first_k(k)
    head = _first_k(l)
    universe = all_k_masks(n, k)
    second = tuple(m for m in universe if m & head == head and popcount(m & core) <= s - 1)
    if not second:
        raise ParameterError(f"the second family is empty at n={n}, k={k}, s={s}; n is too small")
    star = SetFamily(n, k, tuple(m for m in universe if m & head == head))
    families = [SetFamily(n, k, (core,)), SetFamily(n, k, second)] + [star] * (r - 2)
    return FamilyTuple(tuple(families))


def rcross_second_family_size(n: int, k: int, l: int, s: int) -> int:
    """|A_2| by counting, independent of enumeration."""
    return binom_exact(n - l, k - l) - sum(
        binom_exact(k - l, j) * binom_exact(n - k, k - l - j) for j in range(s - l, k - l + 1)
    )
