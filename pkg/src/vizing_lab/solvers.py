"""Exact solvers for domination and clique-cover invariants.

Two independent routes exist for each invariant: an optimized
branch-and-bound solver and a brute-force oracle (subset enumeration for
gamma, exhaustive partition search for theta). The oracles are
deliberately naive; the test suite cross-checks the fast path against
them on small corpora.

Work is metered in search-node expansions, never wall-clock, so runs are
reproducible across machines. A solver that hits its budget reports an
explicit "unknown" outcome carrying the best proven bounds instead of
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from .graphs import (
    CliquePartition,
    Graph,
    GraphError,
    bits,
    closed_neighborhood,
    complement,
    mask_of,
    validate_partition,
)

DEFAULT_BUDGET = 10_000_000

OPTIMAL = "optimal"
UNKNOWN = "unknown"
INFEASIBLE = "infeasible"


class _OutOfBudget(Exception):
    pass


class Budget:
    """Deterministic work meter; one unit per expanded search node."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        if self.used + amount > self.limit:
            raise _OutOfBudget
        self.used += amount

    @property
    def remaining(self) -> int:
        return self.limit - self.used


BudgetLike = Union[Budget, int, None]


def as_budget(budget: BudgetLike) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominationCertificate:
    """A vertex set claimed to dominate a target set."""

    dominator_set: frozenset
    target_set: frozenset
    cardinality: int


def check_domination_certificate(g: Graph, cert: DominationCertificate) -> Optional[str]:
    """None when the certificate re-validates, else what broke."""
    if cert.cardinality != len(cert.dominator_set):
        return f"cardinality {cert.cardinality} != |dominator_set| {len(cert.dominator_set)}"
    for v in cert.dominator_set | cert.target_set:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
    uncovered = cert.target_set - closed_neighborhood(g, cert.dominator_set)
    if uncovered:
        return f"vertex {min(uncovered)} not dominated"
    return None


@dataclass(frozen=True)
class CliqueCoverCertificate:
    partition: CliquePartition
    size: int


def check_clique_cover_certificate(g: Graph, cert: CliqueCoverCertificate) -> Optional[str]:
    if cert.size != cert.partition.size:
        return f"size {cert.size} != partition size {cert.partition.size}"
    violation = validate_partition(g, cert.partition)
    return str(violation) if violation else None


@dataclass(frozen=True)
class GammaResult:
    status: str  # OPTIMAL | UNKNOWN
    value: Optional[int]
    lower: int
    upper: int
    certificate: Optional[DominationCertificate]
    nodes: int


@dataclass(frozen=True)
class ThetaResult:
    status: str
    value: Optional[int]
    lower: int
    upper: int
    certificate: Optional[CliqueCoverCertificate]
    nodes: int


@dataclass(frozen=True)
class ExternalDominationResult:
    status: str  # OPTIMAL | INFEASIBLE | UNKNOWN
    certificate: Optional[DominationCertificate]
    nodes: int


@dataclass(frozen=True)
class EnumerationResult:
    gamma: Optional[int]
    sets: tuple[frozenset, ...]
    complete: bool
    nodes: int


# ---------------------------------------------------------------------------
# Brute-force oracles
# ---------------------------------------------------------------------------

BRUTE_GAMMA_CAP = 20
BRUTE_THETA_CAP = 10


def brute_force_gamma(g: Graph) -> int:
    """Minimum k with a dominating k-subset, by plain subset enumeration."""
    if g.n == 0:
        raise GraphError("empty graph has no dominating set")
    if g.n > BRUTE_GAMMA_CAP:
        raise GraphError(f"brute_force_gamma capped at {BRUTE_GAMMA_CAP} vertices")
    full = (1 << g.n) - 1
    closed = g.closed
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            m = 0
            for v in combo:
                m |= closed[v]
            if m == full:
                return k
    raise AssertionError("V(G) always dominates")


def brute_force_theta(g: Graph) -> int:
    """Minimum clique-partition size by exhaustive partition search.

    Independent of the coloring route used by clique_cover_number: covers
    the lowest uncovered vertex by every clique through it and recurses.
    """
    if g.n == 0:
        raise GraphError("empty graph has no clique partition")
    if g.n > BRUTE_THETA_CAP:
        raise GraphError(f"brute_force_theta capped at {BRUTE_THETA_CAP} vertices")
    full = (1 << g.n) - 1
    adj = g.adj
    best = g.n

    def grow(base_vertex, clique_mask, candidates, remaining, cells):
        nonlocal best
        rest = remaining & ~clique_mask
        finish(rest, cells + 1)
        c = candidates
        while c:
            u = (c & -c).bit_length() - 1
            c &= c - 1
            grow(base_vertex, clique_mask | (1 << u), c & adj[u], remaining, cells)

    def finish(remaining, cells):
        nonlocal best
        if remaining == 0:
            best = min(best, cells)
            return
        if cells + 1 >= best:
            return
        v = (remaining & -remaining).bit_length() - 1
        grow(v, 1 << v, adj[v] & remaining, remaining, cells)

    finish(full, 0)
    return best


# ---------------------------------------------------------------------------
# Domination number: branch and bound
# ---------------------------------------------------------------------------


def _greedy_dominating(closed: tuple, allowed: int, target: int) -> Optional[list]:
    """Greedy cover of target by allowed vertices; None when stuck."""
    chosen = []
    covered = 0
    while covered & target != target:
        best_v = -1
        best_gain = 0
        m = allowed
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            gain = (closed[v] & target & ~covered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_v < 0:
            return None
        chosen.append(best_v)
        covered |= closed[best_v]
    return chosen


def _cover_lower_bound(closed: tuple, uncovered: int, allowed: int) -> int:
    """ceil(|uncovered| / best single-vertex coverage), 0 when nothing uncovered."""
    if not uncovered:
        return 0
    maxcov = 0
    m = allowed
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        c = (closed[v] & uncovered).bit_count()
        if c > maxcov:
            maxcov = c
    if maxcov == 0:
        return 1 << 30  # uncoverable
    return -(-uncovered.bit_count() // maxcov)


def _min_cover_search(closed, target, allowed0, incumbent_size, incumbent_mask, work):
    """Exact minimum set of allowed vertices covering target (branch and bound).

    Branches on the uncovered vertex with fewest usable dominators, trying
    them in decreasing fresh-coverage order; a candidate already tried is
    excluded from the rest of its sibling subtrees. Ties break on ascending
    vertex index everywhere, so the returned witness is deterministic.
    """
    best_size = incumbent_size
    best_mask = incumbent_mask

    def rec(count, covered, allowed, chosen):
        nonlocal best_size, best_mask
        work.tick()
        uncovered = target & ~covered
        if not uncovered:
            if count < best_size:
                best_size, best_mask = count, chosen
            return
        lb = _cover_lower_bound(closed, uncovered, allowed)
        if count + lb >= best_size:
            return
        # most constrained uncovered vertex
        branch_v = -1
        branch_cands = 0
        branch_width = 1 << 30
        m = uncovered
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            cands = closed[v] & allowed
            w = cands.bit_count()
            if w == 0:
                return  # v cannot be dominated on this branch
            if w < branch_width:
                branch_v, branch_cands, branch_width = v, cands, w
        order = sorted(
            bits(branch_cands),
            key=lambda u: (-(closed[u] & uncovered).bit_count(), u),
        )
        a = allowed
        for u in order:
            rec(count + 1, covered | closed[u], a, chosen | (1 << u))
            a &= ~(1 << u)

    rec(0, 0, allowed0, 0)
    return best_size, best_mask


def domination_number(g: Graph, budget: BudgetLike = None) -> GammaResult:
    """Exact gamma(G) with a deterministic minimum dominating set witness."""
    if g.n == 0:
        raise GraphError("empty graph has no dominating set")
    work = as_budget(budget)
    full = (1 << g.n) - 1
    closed = g.closed
    greedy = _greedy_dominating(closed, full, full)
    ub_size, ub_mask = len(greedy), mask_of(greedy)
    lb0 = _cover_lower_bound(closed, full, full)
    target_set = frozenset(range(g.n))
    start = work.used
    try:
        size, mask = _min_cover_search(closed, full, full, ub_size, ub_mask, work)
    except _OutOfBudget:
        cert = DominationCertificate(frozenset(bits(ub_mask)), target_set, ub_size)
        return GammaResult(UNKNOWN, None, lb0, ub_size, cert, work.used - start)
    cert = DominationCertificate(frozenset(bits(mask)), target_set, size)
    return GammaResult(OPTIMAL, size, size, size, cert, work.used - start)


def exists_dominating_set_within(g_closed: tuple, full: int, limit: int, work: Budget) -> bool:
    """True iff some dominating set of size <= limit exists. Exact, budgeted."""
    if limit <= 0:
        return full == 0
    size, _ = _min_cover_search(g_closed, full, full, limit + 1, 0, work)
    return size <= limit


# ---------------------------------------------------------------------------
# Clique cover number via exact coloring of the complement
# ---------------------------------------------------------------------------


def _greedy_clique(g: Graph) -> list:
    """Deterministic greedy clique: seed max degree, grow by degree inside."""
    if g.n == 0:
        return []
    v0 = max(range(g.n), key=lambda v: (g.degree(v), -v))
    clique = [v0]
    cands = g.adj[v0]
    while cands:
        u = max(bits(cands), key=lambda u: ((g.adj[u] & cands).bit_count(), -u))
        clique.append(u)
        cands &= g.adj[u]
    return clique


def _dsatur_greedy(g: Graph) -> list:
    """Greedy DSATUR coloring; returns color per vertex."""
    n = g.n
    colors = [-1] * n
    neighbor_colors = [0] * n  # bitmask of colors seen in the neighborhood
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (neighbor_colors[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while neighbor_colors[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            neighbor_colors[u] |= 1 << c
    return colors


def _chromatic_exact(g: Graph, work: Budget) -> tuple[str, int, int, list]:
    """Exact chromatic number by DSATUR-ordered branch and bound.

    Returns (status, lower, upper, best_coloring). The greedy clique is
    pre-colored with distinct colors (valid symmetry breaking: its vertices
    are pairwise adjacent), and branches try used colors plus at most one
    fresh color.
    """
    n = g.n
    if n == 0:
        return OPTIMAL, 0, 0, []
    clique = _greedy_clique(g)
    lb = len(clique)
    greedy_colors = _dsatur_greedy(g)
    ub = max(greedy_colors) + 1
    best_colors = list(greedy_colors)
    if lb == ub:
        return OPTIMAL, lb, ub, best_colors

    colors = [-1] * n
    neighbor_colors = [0] * n
    for c, v in enumerate(clique):
        colors[v] = c
        for u in bits(g.adj[v]):
            neighbor_colors[u] |= 1 << c
    incumbent = ub

    def rec(colored_count, used):
        nonlocal incumbent, best_colors
        work.tick()
        if used >= incumbent:
            return
        if colored_count == n:
            incumbent = used
            best_colors = list(colors)
            return
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (neighbor_colors[u].bit_count(), g.degree(u), -u),
        )
        cap = min(used + 1, incumbent - 1)
        for c in range(cap):
            if neighbor_colors[v] >> c & 1:
                continue
            colors[v] = c
            touched = []
            for u in bits(g.adj[v]):
                if not neighbor_colors[u] >> c & 1:
                    neighbor_colors[u] |= 1 << c
                    touched.append(u)
            rec(colored_count + 1, max(used, c + 1))
            colors[v] = -1
            for u in touched:
                neighbor_colors[u] &= ~(1 << c)
            if incumbent == lb:
                return

    rec(lb, lb)
    status = OPTIMAL
    return status, lb, incumbent, best_colors


def clique_cover_number(g: Graph, budget: BudgetLike = None) -> ThetaResult:
    """Exact theta(G) = chromatic number of the complement, with a witness
    clique partition (color classes of the complement are cliques of G)."""
    if g.n == 0:
        raise GraphError("empty graph has no clique partition")
    work = as_budget(budget)
    start = work.used
    comp = complement(g)
    try:
        status, lb, ub, coloring = _chromatic_exact(comp, work)
    except _OutOfBudget:
        # keep the greedy witness as the upper bound
        coloring = _dsatur_greedy(comp)
        ub = max(coloring) + 1
        lb = len(_greedy_clique(comp))
        cert = CliqueCoverCertificate(_cells_from_coloring(coloring), ub)
        return ThetaResult(UNKNOWN, None, lb, ub, cert, work.used - start)
    cert = CliqueCoverCertificate(_cells_from_coloring(coloring), ub)
    return ThetaResult(OPTIMAL, ub, ub, ub, cert, work.used - start)


def _cells_from_coloring(coloring: list) -> CliquePartition:
    groups: dict[int, list] = {}
    for v, c in enumerate(coloring):
        groups.setdefault(c, []).append(v)
    return CliquePartition.from_cells(groups.values())


# ---------------------------------------------------------------------------
# External domination of clique unions
# ---------------------------------------------------------------------------


def external_domination(
    g: Graph,
    p: CliquePartition,
    targets: Iterable[int],
    budget: BudgetLike = None,
) -> ExternalDominationResult:
    """Minimum D outside the target cells with N[D] covering their union.

    Infeasible (a normal outcome) when some target vertex has no neighbor
    outside the target cells.
    """
    work = as_budget(budget)
    target_cells = sorted(set(targets))
    if not target_cells:
        raise GraphError("targets must be nonempty")
    if any(not 0 <= i < p.size for i in target_cells):
        raise GraphError("target cell index out of range")
    if len(target_cells) >= p.size:
        raise GraphError("targets must be a proper subset of the cells")
    masks = p.masks()
    target_mask = 0
    for i in target_cells:
        target_mask |= masks[i]
    full = (1 << g.n) - 1
    allowed = full & ~target_mask
    closed = g.closed

    m = target_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if closed[v] & allowed == 0:
            return ExternalDominationResult(INFEASIBLE, None, 0)

    target_set = frozenset(bits(target_mask))
    greedy = _greedy_dominating(closed, allowed, target_mask)
    assert greedy is not None  # feasibility established vertexwise above
    start = work.used
    try:
        size, mask = _min_cover_search(
            closed, target_mask, allowed, len(greedy), mask_of(greedy), work
        )
    except _OutOfBudget:
        return ExternalDominationResult(UNKNOWN, None, work.used - start)
    cert = DominationCertificate(frozenset(bits(mask)), target_set, size)
    return ExternalDominationResult(OPTIMAL, cert, work.used - start)


# ---------------------------------------------------------------------------
# Enumeration of minimum dominating sets
# ---------------------------------------------------------------------------


def enumerate_min_dominating_sets(
    g: Graph, limit: int = 1000, budget: BudgetLike = None
) -> EnumerationResult:
    """Distinct gamma-sets in lexicographic order of their sorted members.

    complete=True means the returned sets are all of them; a hit limit or
    an exhausted budget leaves the list valid but flagged incomplete.
    """
    work = as_budget(budget)
    start = work.used
    res = domination_number(g, work)
    if res.status != OPTIMAL:
        return EnumerationResult(None, (), False, work.used - start)
    gamma = res.value
    full = (1 << g.n) - 1
    closed = g.closed
    found: list[frozenset] = []
    complete = True
    try:
        for combo in combinations(range(g.n), gamma):
            work.tick()
            m = 0
            for v in combo:
                m |= closed[v]
            if m == full:
                if len(found) == limit:
                    complete = False
                    break
                found.append(frozenset(combo))
    except _OutOfBudget:
        complete = False
    return EnumerationResult(gamma, tuple(found), complete, work.used - start)
