# ---------------------------------------------------------------
# canonical.py
#
# Purpose:
#   Isomorphism keys for families and family tuples under relabeling
#   of the ground set, and level-wise enumeration of orbit
#   representatives of subfamilies of the k-subset layer.
#
# Requirements:
#   - numpy for vectorized images of families under all permutations.
#   - config: CANONICAL_MAX_N, PERMUTATION_CHUNK.
#
# Output:
#   - canonical_family: minimal sorted image of one family.
#   - canonical_form: CanonicalKey (bytes + hex) of a FamilyTuple.
#   - extend_level: orbit representatives one size up.
#
# Notes:
#   - Masks compare in colex order, so every minimum below is taken
#     on masks directly.
#   - Tuple keys sort families by (size, masks); role order is not part
#     of the isomorphism type.
# ---------------------------------------------------------------

import logging
import threading
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, permutations

import numpy as np

from config.settings import CANONICAL_MAX_N, PERMUTATION_CHUNK
from scripts.combinatorics import elements_of
from scripts.errors import BudgetExceededError, ParameterError
from scripts.families import FamilyTuple, SetFamily

logger = logging.getLogger(__name__)


class SearchBudget:
    """
    Shared node counter; spend() raises BudgetExceededError past the limit.

    `seconds` adds a wall-clock deadline measured from construction, checked
    on every spend.
    """

    def __init__(self, limit: int | None, seconds: float | None = None):
        self.limit = limit
        self.seconds = seconds
        self.used = 0
        self._deadline = None if seconds is None else time.monotonic() + seconds
        self._lock = threading.Lock()

    def spend(self, count: int = 1) -> None:
        with self._lock:
            self.used += count
            if self.limit is not None and self.used > self.limit:
                raise BudgetExceededError(f"search budget of {self.limit} nodes exhausted")
            if self._deadline is not None and time.monotonic() > self._deadline:
                raise BudgetExceededError(f"search time limit of {self.seconds:g} s exceeded after {self.used} nodes")


def check_canonical_n(n: int) -> None:
    if n > CANONICAL_MAX_N:
        raise ParameterError(f"exact canonicalization is limited to n <= {CANONICAL_MAX_N}, got n={n}")


@lru_cache(maxsize=None)
def symmetric_group_array(n: int) -> np.ndarray:
    """All permutations of range(n) as an (n!, n) int8 array, lexicographic order."""
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def permutation_chunks(n: int):
    """Yield the symmetric group in blocks of at most PERMUTATION_CHUNK rows."""
    check_canonical_n(n)
    if n <= 9:
        table = symmetric_group_array(n)
        for start in range(0, len(table), PERMUTATION_CHUNK):
            yield table[start:start + PERMUTATION_CHUNK]
        return
    source = permutations(range(n))
    while True:
        block = list(islice(source, PERMUTATION_CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int8)


def _element_matrix(members, k: int) -> np.ndarray:
    """(m, k) matrix of 0-based elements of each member."""
    if not members:
        return np.zeros((0, k), dtype=np.int64)
    return np.array([[e - 1 for e in elements_of(m)] for m in members], dtype=np.int64).reshape(len(members), k)


def image_masks(perms: np.ndarray, members, k: int) -> np.ndarray:
    """(c, m) array of image masks of every member under every permutation, each row sorted."""
    elems = _element_matrix(members, k)
    if elems.shape[0] == 0:
        return np.zeros((len(perms), 0), dtype=np.uint64)
    images = perms[:, elems].astype(np.uint64)
    masks = np.bitwise_or.reduce(np.left_shift(np.uint64(1), images), axis=2)
    masks.sort(axis=1)
    return masks


def canonical_family(members, n: int, k: int, perms: np.ndarray | None = None) -> tuple[int, ...]:
    """Lexicographically least sorted image of a family over the full symmetric group."""
    members = tuple(members)
    if not members:
        return ()
    best = None
    chunks = [perms] if perms is not None else permutation_chunks(n)
    for chunk in chunks:
        imgs = image_masks(chunk, members, k)
        order = np.lexsort(imgs.T[::-1])
        row = tuple(int(x) for x in imgs[order[0]])
        if best is None or row < best:
            best = row
    return best


@dataclass(frozen=True, order=True)
class CanonicalKey:
    data: bytes

    @property
    def hex(self) -> str:
        return self.data.hex()

    def __str__(self):
        return self.hex


def _row_bytes(imgs: np.ndarray) -> list[bytes]:
    width = imgs.shape[1] * 8
    buf = imgs.astype(">u8").tobytes()
    return [buf[i * width:(i + 1) * width] for i in range(imgs.shape[0])]


def _family_order(blob: bytes):
    return (len(blob), blob)


def _best_body(t: FamilyTuple) -> bytes:
    best = None
    for chunk in permutation_chunks(t.n):
        per_family = [_row_bytes(image_masks(chunk, f.members, t.k)) for f in t.families]
        for row in zip(*per_family):
            body = b"".join(sorted(row, key=_family_order))
            if best is None or body < best:
                best = body
    return best


def canonical_form(t: FamilyTuple) -> CanonicalKey:
    """Key equal for two tuples iff a relabeling of [n] maps one onto the other (up to role order)."""
    check_canonical_n(t.n)
    sizes = sorted(t.sizes)
    header = bytes([t.n, t.k, t.r]) + b"".join(s.to_bytes(4, "big") for s in sizes)
    return CanonicalKey(header + _best_body(t))


def canonical_image(t: FamilyTuple) -> FamilyTuple:
    """The tuple encoded by the canonical key, families ordered by (size, masks)."""
    key = canonical_form(t)
    return tuple_from_key(key)


def tuple_from_key(key: CanonicalKey) -> FamilyTuple:
    data = key.data
    n, k, r = data[0], data[1], data[2]
    sizes = [int.from_bytes(data[3 + 4 * i:7 + 4 * i], "big") for i in range(r)]
    pos = 3 + 4 * r
    families = []
    for size in sizes:
        masks = [int.from_bytes(data[pos + 8 * j:pos + 8 * (j + 1)], "big") for j in range(size)]
        pos += 8 * size
        families.append(SetFamily(n, k, tuple(masks)))
    return FamilyTuple(tuple(families))


def orbit_of_family(members, n: int, k: int) -> list[tuple[int, ...]]:
    """Every distinct image of a family under the symmetric group, sorted."""
    check_canonical_n(n)
    seen = set()
    for chunk in permutation_chunks(n):
        imgs = image_masks(chunk, tuple(members), k)
        for row in np.unique(imgs, axis=0):
            seen.add(tuple(int(x) for x in row))
    return sorted(seen)


def extend_level(reps, universe, n: int, k: int, accept=None, budget: SearchBudget | None = None):
    """
    Orbit representatives one size larger than `reps`.

    Every representative gets each missing member in turn; the result is
    canonicalized and kept once. `accept` must be invariant under
    relabeling and closed under taking subfamilies, so rejected
    representatives never have accepted extensions.
    """
    check_canonical_n(n)
    perms = symmetric_group_array(n) if n <= 8 else None
    out = set()
    for rep in reps:
        present = set(rep)
        for x in universe:
            if x in present:
                continue
            if budget is not None:
                budget.spend()
            key = canonical_family(rep + (x,), n, k, perms)
            if key in out:
                continue
            if accept is None or accept(key):
                out.add(key)
    return sorted(out)


def orbit_representatives(universe, n: int, k: int, max_size: int, accept=None,
                          budget: SearchBudget | None = None):
    """Yield (size, representatives) level by level up to max_size."""
    level = [()]
    for size in range(1, max_size + 1):
        level = extend_level(level, universe, n, k, accept, budget)
        logger.debug(f"orbit level {size}: {len(level)} representatives")
        if not level:
            return
        yield size, level
