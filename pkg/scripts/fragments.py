# ---------------------------------------------------------------
# fragments.py
#
# Purpose:
#   The conflict graph G(X,Y) on two copies of the k-subset layer,
#   its independence number over nontrivial independent sets,
#   the deficiency ε, fragments and their partner map φ, and the
#   instance checks of the part-transitive bipartite theorems.
#
# Requirements:
#   - numpy for the dense conflict matrix and the subset scan.
#   - scipy.sparse.csgraph.maximum_bipartite_matching for ν.
#   - canonical / group_action for orbit pruning and primitivity.
#
# Output:
#   - IntersectionGraph, AlphaResult, FragmentRecord, FragmentCensus
#     and report dictionaries for the fragments command.
#
# Notes:
#   - Vertex sets on either side are Python-int bitsets over colex ranks.
#   - The graph is symmetric across sides: rank i in X and rank i in Y
#     are the same k-subset, so one adjacency list serves both.
# ---------------------------------------------------------------

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from config.settings import (
    EXHAUSTIVE_ALPHA_MAX,
    GRAPH_MAX_SIDE,
    GROUP_AUDIT_MAX_N,
    ORBIT_BUDGET,
    SEARCH_NODE_BUDGET,
)
from scripts.canonical import SearchBudget, check_canonical_n, orbit_of_family, orbit_representatives
from scripts.combinatorics import LSpec, all_k_masks, binom_exact, check_ground_set, popcount
from scripts.errors import BudgetExceededError, InvariantError, ParameterError
from scripts.families import SetFamily
from scripts.group_action import GroupAction, Primitivity, act_set, classify_primitivity

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
UNKNOWN = "UNKNOWN"


def iter_bits(x: int):
    """Indices of the set bits of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class IntersectionGraph:
    n: int
    k: int
    L: LSpec
    masks: list[int]
    conflict: np.ndarray
    adj: list[int]
    index: dict = field(repr=False, default_factory=dict)

    @property
    def side_size(self) -> int:
        return len(self.masks)

    @property
    def full(self) -> int:
        return (1 << self.side_size) - 1

    @property
    def degree(self) -> int:
        return popcount(self.adj[0]) if self.adj else 0

    def bits_of(self, masks) -> int:
        out = 0
        for m in masks:
            try:
                out |= 1 << self.index[m]
            except KeyError:
                raise ParameterError(f"mask {m:#x} is not a {self.k}-subset of [{self.n}]") from None
        return out

    def masks_of(self, bits: int) -> tuple[int, ...]:
        return tuple(self.masks[i] for i in iter_bits(bits))

    def family_of(self, bits: int) -> SetFamily:
        return SetFamily(self.n, self.k, self.masks_of(bits))

    def neighborhood(self, bits: int) -> int:
        out = 0
        for i in iter_bits(bits):
            out |= self.adj[i]
        return out


def closed_form_degree(n: int, k: int, L: LSpec) -> int:
    return sum(binom_exact(k, i) * binom_exact(n - k, k - i) for i in L.complement_values())


def build_graph(n: int, k: int, L: LSpec) -> IntersectionGraph:
    """Edge A-B iff |A ∩ B| ∉ L."""
    if not n >= k >= 2:
        raise ParameterError(f"the conflict graph needs n >= k >= 2, got n={n}, k={k}")
    check_ground_set(n, k)
    if L.k != k:
        raise ParameterError(f"L is specified over k={L.k}, not k={k}")
    side = binom_exact(n, k)
    if side > GRAPH_MAX_SIDE:
        raise ParameterError(f"C({n},{k}) = {side} exceeds the graph size limit {GRAPH_MAX_SIDE}")

    masks = all_k_masks(n, k)
    arr = np.array(masks, dtype=np.uint64)
    inter = np.bitwise_count(arr[:, None] & arr[None, :])
    allowed = np.array([i in L for i in range(k + 1)], dtype=bool)
    conflict = ~allowed[inter]
    packed = np.packbits(conflict, axis=1, bitorder="little")
    adj = [int.from_bytes(row.tobytes(), "little") for row in packed]

    g = IntersectionGraph(n, k, L, masks, conflict, adj, {m: i for i, m in enumerate(masks)})
    expected = closed_form_degree(n, k, L)
    if g.degree != expected:
        raise InvariantError(f"degree {g.degree} of G({n},{k},L={L}) disagrees with the closed form {expected}")
    logger.debug(f"built G({n},{k},L={L}): {side}+{side} vertices, degree {expected}")
    return g


# ---------------------------------------------------------------
# Independence number over nontrivial independent sets
# ---------------------------------------------------------------

@dataclass
class AlphaResult:
    value: int
    x_side: SetFamily
    y_side: SetFamily
    pair: tuple[int, int]


def _konig_cover(sub: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Minimum vertex cover (rows, cols) of a bipartite biadjacency matrix."""
    n_u, n_v = sub.shape
    cover_u = np.zeros(n_u, dtype=bool)
    cover_v = np.zeros(n_v, dtype=bool)
    if n_u == 0 or n_v == 0 or not sub.any():
        return cover_u, cover_v

    match_v = maximum_bipartite_matching(csr_matrix(sub.astype(np.int8)), perm_type="row")
    visit_u = np.zeros(n_u, dtype=bool)
    visit_v = np.zeros(n_v, dtype=bool)
    matched_rows = {int(u) for u in match_v if u >= 0}
    wait_u = set(range(n_u)) - matched_rows
    while wait_u:
        u = wait_u.pop()
        visit_u[u] = True
        for v in np.flatnonzero(sub[u]):
            if not visit_v[v]:
                visit_v[v] = True
                wait_u.add(int(match_v[v]))
    return ~visit_u, visit_v


def _bits_to_index(bits: int) -> np.ndarray:
    return np.fromiter(iter_bits(bits), dtype=np.int64)


def forced_pair_value(g: IntersectionGraph, x: int, y: int) -> AlphaResult | None:
    """Largest independent set containing X-vertex x and Y-vertex y, or None if xy is an edge."""
    if g.conflict[x, y]:
        return None
    xs_bits = g.full & ~((1 << x) | g.adj[y])
    ys_bits = g.full & ~((1 << y) | g.adj[x])
    xs = _bits_to_index(xs_bits)
    ys = _bits_to_index(ys_bits)
    cover_u, cover_v = _konig_cover(g.conflict[np.ix_(xs, ys)])

    a_bits = 1 << x
    for i in xs[~cover_u]:
        a_bits |= 1 << int(i)
    b_bits = 1 << y
    for j in ys[~cover_v]:
        b_bits |= 1 << int(j)
    return AlphaResult(popcount(a_bits) + popcount(b_bits), g.family_of(a_bits), g.family_of(b_bits), (x, y))


def representative_pairs(g: IntersectionGraph) -> list[tuple[int, int]]:
    """One nonadjacent pair per allowed intersection size: x = [k], y meets [k] in its first i points."""
    n, k = g.n, g.k
    x_mask = (1 << k) - 1
    pairs = []
    for i in range(max(0, 2 * k - n), k + 1):
        if i not in g.L:
            continue
        y_mask = ((1 << i) - 1) | (((1 << (k - i)) - 1) << k)
        pairs.append((g.index[x_mask], g.index[y_mask]))
    return pairs


def all_nonadjacent_pairs(g: IntersectionGraph) -> list[tuple[int, int]]:
    xs, ys = np.nonzero(~g.conflict)
    return [(int(x), int(y)) for x, y in zip(xs, ys)]


def alpha_nontrivial(g: IntersectionGraph, use_symmetry: bool = True, threads: int = 1) -> AlphaResult | None:
    """
    Maximum |A| + |B| over independent sets with A ⊆ X and B ⊆ Y both nonempty.

    Every such set contains a nonadjacent pair (x, y); forcing the pair
    removes x, y and their neighborhoods and leaves a bipartite graph
    whose maximum independent set is |vertices| - ν. With symmetry on,
    only one pair per orbit of nonadjacent pairs is forced.
    """
    pairs = representative_pairs(g) if use_symmetry else all_nonadjacent_pairs(g)
    if not pairs:
        return None

    def evaluate(pair):
        return forced_pair_value(g, *pair)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, pairs))
    else:
        results = [evaluate(p) for p in pairs]

    best = None
    for res in results:
        if res is not None and (best is None or res.value > best.value):
            best = res
    return best


def alpha_exhaustive(g: IntersectionGraph) -> int | None:
    """Same quantity by scanning every nonempty A ⊆ X with N(A) ≠ Y and taking B = Y \\ N(A)."""
    c = g.side_size
    if c > EXHAUSTIVE_ALPHA_MAX:
        raise ParameterError(f"exhaustive scan is limited to C(n,k) <= {EXHAUSTIVE_ALPHA_MAX}, got {c}")
    adj = np.array(g.adj, dtype=np.uint64)
    nbhd = np.zeros(1 << c, dtype=np.uint64)
    for b in range(c):
        nbhd[1 << b:1 << (b + 1)] = nbhd[:1 << b] | adj[b]
    full = np.uint64(g.full)
    subsets = np.arange(1 << c, dtype=np.uint64)
    value = np.bitwise_count(subsets).astype(np.int64) + np.bitwise_count(full ^ nbhd).astype(np.int64)
    valid = (subsets > 0) & (nbhd != full)
    if not valid.any():
        return None
    return int(value[valid].max())


def epsilon(g: IntersectionGraph, side: str = "X", alpha: AlphaResult | None = None) -> int:
    """ε(side) = |opposite| − α; both sides have C(n,k) vertices."""
    _check_side(side)
    alpha = alpha or alpha_nontrivial(g)
    if alpha is None:
        raise ParameterError("ε is undefined on a complete bipartite graph")
    return g.side_size - alpha.value


def _check_side(side: str) -> None:
    if side not in ("X", "Y"):
        raise ParameterError(f"side must be X or Y, got {side!r}")


def _is_fragment_bits(g: IntersectionGraph, bits: int, eps: int) -> bool:
    nbhd = g.neighborhood(bits)
    return nbhd != g.full and popcount(nbhd) - popcount(bits) == eps


def is_fragment(g: IntersectionGraph, family: SetFamily, side: str = "X", eps: int | None = None) -> bool:
    _check_side(side)
    if not len(family):
        raise ParameterError("a fragment must be nonempty")
    if eps is None:
        eps = epsilon(g, side)
    return _is_fragment_bits(g, g.bits_of(family.members), eps)


# ---------------------------------------------------------------
# Fragment census
# ---------------------------------------------------------------

@dataclass
class FragmentRecord:
    side: str
    vertices: SetFamily
    deficiency: int
    phi_image: SetFamily
    balanced: bool
    primitivity: Primitivity

    def to_report(self) -> dict:
        return {
            "side": self.side,
            "size": len(self.vertices),
            "deficiency": self.deficiency,
            "balanced": self.balanced,
            "primitivity": self.primitivity.value,
            "vertices": self.vertices.to_sets(),
        }


@dataclass
class FragmentCensus:
    graph: IntersectionGraph
    side: str
    alpha: AlphaResult
    epsilon: int
    size_cap: int
    records: list[FragmentRecord]
    complete: bool

    def covers(self, size: int) -> bool:
        """True when every fragment of size <= `size` is in the census."""
        return self.complete and self.size_cap >= min(size, self.graph.side_size)

    @property
    def exhaustive(self) -> bool:
        return self.covers(self.graph.side_size)

    def with_primitivity(self, *kinds: Primitivity) -> list[FragmentRecord]:
        return [rec for rec in self.records if rec.primitivity in kinds]


def _make_record(g: IntersectionGraph, side: str, bits: int, eps: int, primitivity: Primitivity) -> FragmentRecord:
    other = g.full & ~g.neighborhood(bits)
    return FragmentRecord(
        side=side,
        vertices=g.family_of(bits),
        deficiency=eps,
        phi_image=g.family_of(other),
        balanced=popcount(bits) == popcount(other),
        primitivity=primitivity,
    )


def enumerate_fragments(
    g: IntersectionGraph,
    side: str = "X",
    size_cap: int | None = None,
    budget: int | None = SEARCH_NODE_BUDGET,
    action: GroupAction | None = None,
    alpha: AlphaResult | None = None,
    orbit_budget: int = ORBIT_BUDGET,
) -> FragmentCensus:
    """
    All fragments of size <= size_cap on one side.

    Vertex subsets are extended one orbit representative at a time;
    N(A) = Y is inherited by supersets, so those branches are cut.
    Each fragment representative is expanded back to its full orbit.
    """
    _check_side(side)
    if size_cap is not None and size_cap < 1:
        raise ParameterError(f"size cap must be >= 1, got {size_cap}")
    check_canonical_n(g.n)
    alpha = alpha or alpha_nontrivial(g)
    if alpha is None:
        raise ParameterError("a complete bipartite graph has no fragments")
    eps = g.side_size - alpha.value
    cap = g.side_size if size_cap is None else min(size_cap, g.side_size)
    per_record = action is not None
    action = action or GroupAction.symmetric(g.n)
    counter = SearchBudget(budget)

    def accept(rep):
        return g.neighborhood(g.bits_of(rep)) != g.full

    records = []
    complete = True
    try:
        for size, reps in orbit_representatives(g.masks, g.n, g.k, cap, accept, counter):
            for rep in reps:
                if not _is_fragment_bits(g, g.bits_of(rep), eps):
                    continue
                shared = None
                if not per_record:
                    shared = classify_primitivity(SetFamily(g.n, g.k, rep), action, orbit_budget)
                for members in orbit_of_family(rep, g.n, g.k):
                    kind = shared
                    if kind is None:
                        kind = classify_primitivity(SetFamily(g.n, g.k, members), action, orbit_budget)
                    records.append(_make_record(g, side, g.bits_of(members), eps, kind))
    except BudgetExceededError as err:
        complete = False
        logger.warning(f"fragment census truncated: {err}")

    records.sort(key=lambda rec: (len(rec.vertices), rec.vertices.members))
    logger.info(f"fragment census: {len(records)} fragments of size <= {cap}, complete={complete}")
    return FragmentCensus(g, side, alpha, eps, cap, records, complete)


def phi(g: IntersectionGraph, record: FragmentRecord, action: GroupAction | None = None) -> FragmentRecord:
    """The partner fragment Y \\ N(A) on the opposite side."""
    bits = g.bits_of(record.vertices.members)
    eps = epsilon(g, record.side)
    if not len(record.vertices) or not _is_fragment_bits(g, bits, eps):
        raise ParameterError("φ is only defined on fragments")
    other = g.full & ~g.neighborhood(bits)
    action = action or GroupAction.symmetric(g.n)
    kind = classify_primitivity(g.family_of(other), action)
    opposite = "Y" if record.side == "X" else "X"
    return _make_record(g, opposite, other, eps, kind)


# ---------------------------------------------------------------
# Fragment-structure checks on one instance
# ---------------------------------------------------------------

def _star_bound(g: IntersectionGraph) -> int:
    return g.side_size - g.degree + 1


def _implication_verdict(census: FragmentCensus, kinds) -> str:
    if census.with_primitivity(*kinds):
        return PASS
    if not census.exhaustive or census.with_primitivity(Primitivity.UNKNOWN):
        return UNKNOWN
    return FAIL


def check_primitive_fragments(census: FragmentCensus) -> dict:
    """
    All fragments primitive ⇒ α = |Y| − d(X) + 1, checked in contrapositive form,
    plus the size diagnostic for equal sides.
    """
    g = census.graph
    alpha = census.alpha.value
    base = _star_bound(g)
    report = {"theorem": "part_transitive_primitive", "alpha": alpha, "dX": g.degree, "star_bound": base}

    if g.degree == 0:
        report.update(verdict=PASS, branch="edgeless")
        return report
    if alpha == base:
        report.update(verdict=PASS, branch="equality")
    else:
        # every fragment of Y is φ of one in X, so the X census decides
        report.update(verdict=_implication_verdict(census, [Primitivity.IMPRIMITIVE]), branch="imprimitive_fragment")

    if not census.exhaustive:
        report["size_diagnostic"] = UNKNOWN
    elif census.with_primitivity(Primitivity.IMPRIMITIVE, Primitivity.UNKNOWN):
        report["size_diagnostic"] = "NOT_APPLICABLE"
    elif census.with_primitivity(Primitivity.SEMI_IMPRIMITIVE):
        report["size_diagnostic"] = "EXEMPT"
    else:
        allowed = {1, g.side_size - g.degree}
        bad = [len(rec.vertices) for rec in census.records if len(rec.vertices) not in allowed]
        report["size_diagnostic"] = "VIOLATED" if bad else "HOLDS"
    return report


def check_imprimitive_fragment(census: FragmentCensus, action: GroupAction | None = None) -> dict:
    """α > |Y| − d(X) + 1 ⇒ an imprimitive fragment exists in X, plus the small-fragment diagnostic."""
    g = census.graph
    alpha = census.alpha.value
    base = _star_bound(g)
    report = {"theorem": "imprimitive_fragment_exists", "alpha": alpha, "dX": g.degree, "star_bound": base}

    if g.degree == 0:
        report.update(verdict=PASS, hypothesis=False, branch="edgeless")
        return report
    if alpha <= base:
        report.update(verdict=PASS, hypothesis=False)
        return report
    report.update(verdict=_implication_verdict(census, [Primitivity.IMPRIMITIVE]), hypothesis=True)
    report["small_fragment_diagnostic"] = _small_fragment_diagnostic(census, action)
    return report


def _small_fragment_diagnostic(census: FragmentCensus, action: GroupAction | None) -> str:
    g = census.graph
    half = census.alpha.value // 2
    if not census.covers(half):
        return UNKNOWN
    small = [rec for rec in census.records if len(rec.vertices) <= half]
    if all(rec.primitivity is Primitivity.IMPRIMITIVE for rec in small):
        return "HOLDS"
    if any(rec.primitivity is Primitivity.UNKNOWN for rec in small) or g.n > GROUP_AUDIT_MAX_N:
        return UNKNOWN

    action = action or GroupAction.symmetric(g.n)
    elements = action.elements()
    imprimitive = {frozenset(rec.vertices.members) for rec in census.with_primitivity(Primitivity.IMPRIMITIVE)}
    for rec in small:
        if rec.primitivity is Primitivity.IMPRIMITIVE:
            continue
        a = frozenset(rec.vertices.members)
        if all(_meet_is_tame(a, act_set(p, a), imprimitive) for p in elements):
            return "EXEMPT"
    return "VIOLATED"


def _meet_is_tame(a: frozenset, image: frozenset, imprimitive: set) -> bool:
    meet = a & image
    return not meet or meet == a or meet in imprimitive


def closure_audit(census: FragmentCensus, action: GroupAction | None = None) -> dict:
    """
    For each fragment A with |A| <= |φ(A)| and each γ with ∅ ≠ γ(A) ∩ A ≠ A,
    both γ(A) ∪ A and γ(A) ∩ A must be fragments.
    """
    g = census.graph
    if g.n > GROUP_AUDIT_MAX_N:
        raise ParameterError(f"closure audit enumerates the whole group; limited to n <= {GROUP_AUDIT_MAX_N}")
    action = action or GroupAction.symmetric(g.n)
    elements = action.elements()
    checked = 0
    failures = []
    for rec in census.records:
        if len(rec.vertices) > len(rec.phi_image):
            continue
        a = frozenset(rec.vertices.members)
        for p in elements:
            image = act_set(p, a)
            meet = image & a
            if not meet or meet == a:
                continue
            checked += 1
            for combined in (image | a, meet):
                if not _is_fragment_bits(g, g.bits_of(combined), census.epsilon):
                    failures.append(SetFamily.of(combined, g.n, g.k).to_sets())
    return {"checked": checked, "failures": failures[:10], "verdict": PASS if not failures else FAIL}


def imprimitive_are_complementary_pairs(census: FragmentCensus) -> bool:
    """At n = 2k every imprimitive fragment is {A, [n] \\ A}."""
    g = census.graph
    if g.n != 2 * g.k:
        raise ParameterError(f"complementary pairs need n = 2k, got n={g.n}, k={g.k}")
    ground = (1 << g.n) - 1
    for rec in census.with_primitivity(Primitivity.IMPRIMITIVE):
        members = rec.vertices.members
        if len(members) != 2 or members[0] ^ members[1] != ground:
            return False
    return True


def fragments_report(census: FragmentCensus, checks: dict | None = None) -> dict:
    g = census.graph
    report = {
        "n": g.n,
        "k": g.k,
        "L": g.L.as_list(),
        "alpha": census.alpha.value,
        "epsilonX": census.epsilon,
        "epsilonY": census.epsilon,
        "dX": g.degree,
        "size_cap": census.size_cap,
        "complete": census.complete,
        "fragments": [rec.to_report() for rec in census.records],
    }
    if checks:
        report.update(checks)
    return report
