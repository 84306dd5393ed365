# ---------------------------------------------------------------
# group_action.py
#
# Purpose:
#   Permutation groups on [n] given by generators, acting on
#   k-subsets and on sets of k-subsets, with orbit closure and the
#   imprimitive / semi-imprimitive classification of vertex sets.
#
# Requirements:
#   - config: ORBIT_BUDGET.
#
# Output:
#   - GroupAction with orbit(), elements() and classify_primitivity().
#
# Notes:
#   - Permutations are 0-based tuples: p[i] is the image of element i+1.
#   - Orbits are closed breadth-first under the generators; the budget
#     caps the number of distinct images ever stored.
# ---------------------------------------------------------------

import logging
from dataclasses import dataclass
from enum import Enum

from config.settings import ORBIT_BUDGET
from scripts.combinatorics import binom_exact
from scripts.errors import BudgetExceededError, ParameterError
from scripts.families import SetFamily

logger = logging.getLogger(__name__)


class Primitivity(str, Enum):
    IMPRIMITIVE = "IMPRIMITIVE"
    SEMI_IMPRIMITIVE = "SEMI_IMPRIMITIVE"
    PRIMITIVE = "PRIMITIVE"
    UNKNOWN = "UNKNOWN"


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """p after q."""
    return tuple(p[i] for i in q)


def act_mask(p: tuple[int, ...], mask: int) -> int:
    image = 0
    i = 0
    while mask:
        if mask & 1:
            image |= 1 << p[i]
        mask >>= 1
        i += 1
    return image


def act_set(p: tuple[int, ...], masks) -> frozenset:
    return frozenset(act_mask(p, m) for m in masks)


def mulclose(gens, maxsize: int | None = None) -> set:
    """Every product of the generators, breadth first."""
    els = set(gens)
    bdy = list(els)
    while bdy:
        _bdy = []
        for a in gens:
            for b in bdy:
                c = compose(a, b)
                if c not in els:
                    els.add(c)
                    _bdy.append(c)
                    if maxsize and len(els) > maxsize:
                        raise BudgetExceededError(f"group closure passed {maxsize} elements")
        bdy = _bdy
    return els


@dataclass(frozen=True)
class GroupAction:
    n: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"need n >= 1, got {self.n}")
        for g in self.generators:
            if sorted(g) != list(range(self.n)):
                raise ParameterError(f"{[x + 1 for x in g]} is not a permutation of [1, {self.n}]")

    @classmethod
    def symmetric(cls, n: int) -> "GroupAction":
        """S_n from a transposition and the n-cycle."""
        identity = tuple(range(n))
        if n < 2:
            return cls(n, (identity,))
        swap = (1, 0) + tuple(range(2, n))
        cycle = tuple(range(1, n)) + (0,)
        return cls(n, (swap, cycle))

    @classmethod
    def from_one_based(cls, n: int, generators) -> "GroupAction":
        return cls(n, tuple(tuple(x - 1 for x in g) for g in generators))

    @classmethod
    def parse(cls, text: str, n: int) -> "GroupAction":
        """'2,1,3;2,3,1' -> generators given as 1-based image lists."""
        try:
            gens = [[int(x) for x in part.split(",")] for part in text.split(";") if part.strip()]
        except ValueError as err:
            raise ParameterError(f"cannot parse generators from '{text}'") from err
        if not gens:
            raise ParameterError("at least one generator is required")
        return cls.from_one_based(n, gens)

    def elements(self, budget: int = ORBIT_BUDGET) -> list[tuple[int, ...]]:
        els = mulclose(self.generators, maxsize=budget)
        els.add(tuple(range(self.n)))
        return sorted(els)

    def orbit(self, masks, budget: int = ORBIT_BUDGET) -> set[frozenset]:
        """All images of a set of k-subsets; BudgetExceededError past `budget` images."""
        start = frozenset(masks)
        seen = {start}
        bdy = [start]
        while bdy:
            _bdy = []
            for g in self.generators:
                for b in bdy:
                    c = act_set(g, b)
                    if c not in seen:
                        seen.add(c)
                        _bdy.append(c)
                        if len(seen) > budget:
                            raise BudgetExceededError(f"orbit passed {budget} images")
            bdy = _bdy
        return seen


def _check_proper(masks, universe_size: int) -> frozenset:
    b = frozenset(masks)
    if not 1 < len(b) < universe_size:
        raise ParameterError(f"need 1 < |B| < {universe_size}, got |B| = {len(b)}")
    return b


def is_imprimitive_set(family: SetFamily, action: GroupAction, budget: int = ORBIT_BUDGET) -> bool:
    """Every image of B is disjoint from B or equal to it."""
    b = _check_proper(family.members, binom_exact(family.n, family.k))
    return all(not (c & b) or c == b for c in action.orbit(b, budget))


def is_semi_imprimitive(family: SetFamily, action: GroupAction, budget: int = ORBIT_BUDGET) -> bool:
    """Every image meets B in 0, 1 or |B| elements."""
    b = _check_proper(family.members, binom_exact(family.n, family.k))
    return all(len(c & b) in (0, 1, len(b)) for c in action.orbit(b, budget))


def classify_primitivity(family: SetFamily, action: GroupAction, budget: int = ORBIT_BUDGET) -> Primitivity:
    """Total classification; sizes 1 and |X| are PRIMITIVE, a blown orbit budget is UNKNOWN."""
    b = frozenset(family.members)
    if not 1 < len(b) < binom_exact(family.n, family.k):
        return Primitivity.PRIMITIVE
    try:
        images = action.orbit(b, budget)
    except BudgetExceededError:
        logger.warning(f"orbit budget {budget} exhausted on a set of size {len(b)}")
        return Primitivity.UNKNOWN
    sizes = {len(c & b) for c in images}
    if sizes <= {0, len(b)}:
        return Primitivity.IMPRIMITIVE
    if sizes <= {0, 1, len(b)}:
        return Primitivity.SEMI_IMPRIMITIVE
    return Primitivity.PRIMITIVE
