# ---------------------------------------------------------------
# combinatorics.py
#
# Purpose:
#   Exact and real-extended binomial arithmetic, k-subset bit-mask
#   encoding with colexicographic rank/unrank, and the intersection
#   spec (LSpec) algebra used by every other module.
#
# Requirements:
#   - Standard library math for exact binomials.
#
# Output:
#   - Pure functions and immutable value types.
#
# Notes:
#   - Element i of [n] is bit i-1 of the mask. Colex order on
#     k-subsets is then plain numeric order of the masks.
#   - Counts are Python ints, so formula evaluation never overflows.
# ---------------------------------------------------------------

import logging
import math
from dataclasses import dataclass

from config.settings import BISECTION_MAX_ITER, BISECTION_TOL, MAX_GROUND_SET
from scripts.errors import ParameterError

logger = logging.getLogger(__name__)


def binom_exact(a: int, b: int) -> int:
    """C(a, b) with the convention C(a, b) = 0 whenever b > a (or either is negative)."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binom_real(x: float, k: int) -> float:
    """Generalized binomial x(x-1)...(x-k+1)/k! for real x."""
    if k < 0:
        raise ParameterError(f"binom_real needs k >= 0, got {k}")
    value = 1.0
    for j in range(k):
        value *= (x - j)
    return value / math.factorial(k)


def solve_binom_inverse(m: int, k: int) -> float:
    """
    Return the unique x > k-1 with binom_real(x, k) = m.

    Monotone bisection on (k-1, hi); stops once the function value is
    within BISECTION_TOL of m or after BISECTION_MAX_ITER halvings.
    """
    if m < 1 or k < 1:
        raise ParameterError(f"solve_binom_inverse needs m >= 1 and k >= 1, got m={m}, k={k}")
    lo = float(k - 1)
    hi = float(max(k, 2))
    while binom_real(hi, k) < m:
        hi *= 2.0
    mid = hi
    for _ in range(BISECTION_MAX_ITER):
        mid = (lo + hi) / 2.0
        value = binom_real(mid, k)
        if abs(value - m) <= BISECTION_TOL:
            return mid
        if value < m:
            lo = mid
        else:
            hi = mid
    logger.debug(f"bisection hit the iteration cap for m={m}, k={k}; returning {mid}")
    return mid


# ---------------------------------------------------------------
# k-subset encoding
# ---------------------------------------------------------------

def check_ground_set(n: int, k: int) -> None:
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n > MAX_GROUND_SET:
        raise ParameterError(f"ground set n={n} exceeds the word-size cap {MAX_GROUND_SET}")


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_from_elements(elements, n: int | None = None) -> int:
    """Encode 1-based elements as a bit mask."""
    mask = 0
    for e in elements:
        if e < 1 or (n is not None and e > n):
            raise ParameterError(f"element {e} outside the ground set [1, {n}]")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ParameterError(f"element {e} repeated")
        mask |= bit
    return mask


def elements_of(mask: int) -> list[int]:
    """1-based sorted elements of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def rank_subset(mask: int) -> int:
    """Colex rank of the subset encoded by mask."""
    return sum(math.comb(c, j + 1) for j, c in enumerate(e - 1 for e in elements_of(mask)))


def unrank_subset(rank: int, n: int, k: int) -> int:
    """Mask of the k-subset of [n] with colex rank `rank`."""
    total = binom_exact(n, k)
    if not 0 <= rank < total:
        raise ParameterError(f"rank {rank} out of range [0, {total}) for n={n}, k={k}")
    mask = 0
    while k > 0:
        n -= 1
        offset = math.comb(n, k)
        if rank >= offset:
            rank -= offset
            k -= 1
            mask |= 1 << n
    return mask


def all_k_masks(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, in colex order (Gosper's successor)."""
    check_ground_set(n, k)
    if k == 0:
        return [0]
    limit = 1 << n
    mask = (1 << k) - 1
    out = []
    while mask < limit:
        out.append(mask)
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple
    return out


@dataclass(frozen=True, order=True)
class KSubset:
    """A k-subset of [n] stored as a bit mask; ordering is colex."""
    mask: int
    n: int
    k: int

    def __post_init__(self):
        check_ground_set(self.n, self.k)
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"mask {self.mask:#x} has bits above position {self.n}")
        if popcount(self.mask) != self.k:
            raise ParameterError(f"mask {self.mask:#x} does not have popcount {self.k}")

    @classmethod
    def from_elements(cls, elements, n: int) -> "KSubset":
        elements = list(elements)
        return cls(mask_from_elements(elements, n), n, len(elements))

    @property
    def elements(self) -> list[int]:
        return elements_of(self.mask)

    @property
    def rank(self) -> int:
        return rank_subset(self.mask)

    def __str__(self):
        return "{" + ",".join(str(e) for e in self.elements) + "}"


# ---------------------------------------------------------------
# Intersection specs
# ---------------------------------------------------------------

@dataclass(frozen=True)
class LSpec:
    """Nonempty set L of allowed intersection sizes within [0, k], as a bit mask."""
    allowed: int
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ParameterError(f"LSpec needs k >= 0, got {self.k}")
        if self.allowed <= 0:
            raise ParameterError("L must be nonempty")
        if self.allowed >> (self.k + 1):
            raise ParameterError(f"L must lie within [0, {self.k}], got {sorted(self._values())}")

    def _values(self):
        return [i for i in range(self.allowed.bit_length()) if self.allowed >> i & 1]

    @classmethod
    def of(cls, values, k: int) -> "LSpec":
        allowed = 0
        for i in values:
            if i < 0 or i > k:
                raise ParameterError(f"intersection size {i} outside [0, {k}]")
            allowed |= 1 << i
        return cls(allowed, k)

    @classmethod
    def interval(cls, lo: int, hi: int, k: int) -> "LSpec":
        if lo > hi:
            raise ParameterError(f"empty interval [{lo}, {hi}]")
        return cls.of(range(lo, hi + 1), k)

    @classmethod
    def parse(cls, text: str, k: int) -> "LSpec":
        """Accepts "0,2", "1..3", "all", or a mix such as "0,2..3"."""
        text = text.strip()
        if text.lower() == "all":
            return cls.interval(0, k, k)
        values = set()
        try:
            for part in text.split(","):
                part = part.strip()
                if not part:
                    continue
                if ".." in part:
                    lo, hi = part.split("..", 1)
                    lo, hi = int(lo), int(hi)
                    if lo > hi:
                        raise ParameterError(f"empty interval '{part}'")
                    values.update(range(lo, hi + 1))
                else:
                    values.add(int(part))
        except ValueError as err:
            if isinstance(err, ParameterError):
                raise
            raise ParameterError(f"cannot parse L from '{text}'") from err
        return cls.of(sorted(values), k)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(self._values())

    def __contains__(self, i: int) -> bool:
        return 0 <= i <= self.k and bool(self.allowed >> i & 1)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return popcount(self.allowed)

    def __str__(self):
        return ",".join(str(i) for i in self.values)

    @property
    def min(self) -> int:
        return self.values[0]

    @property
    def max(self) -> int:
        return self.values[-1]

    @property
    def full_mask(self) -> int:
        return (1 << (self.k + 1)) - 1

    def complement_values(self) -> tuple[int, ...]:
        """[0, k] minus L; may be empty so it is returned as a tuple, not an LSpec."""
        return tuple(i for i in range(self.k + 1) if i not in self)

    def reflect(self) -> "LSpec":
        """k - L."""
        return LSpec.of((self.k - i for i in self.values), self.k)

    def is_full(self) -> bool:
        return self.allowed == self.full_mask

    def is_interval(self, lo: int, hi: int) -> bool:
        if lo > hi:
            return False
        return self.allowed == ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)

    def upper_interval_start(self) -> int | None:
        """t when L = [t, k], else None."""
        t = self.min
        return t if self.is_interval(t, self.k) else None

    def issubset(self, other: "LSpec") -> bool:
        return self.allowed & ~other.allowed == 0

    def as_list(self) -> list[int]:
        return list(self.values)


def all_lspecs(k: int) -> list[LSpec]:
    """Every nonempty L within [0, k], ordered by mask."""
    return [LSpec(mask, k) for mask in range(1, 1 << (k + 1))]
