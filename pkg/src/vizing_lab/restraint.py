"""Restraining-set machinery over clique partitions.

For a clique partition C of V(G) and a nonempty vertex set D, the profile
of D records the cells D intersects (t of them) and the cells disjoint
from D that lie entirely inside N[D] (l of them, always the maximal such
list). D is then (|D|, l+t)-restraining; l+t is its restraint and
l+t-|D| its excess. A single j-restraining vertex is the (1, j) case.

Two facts proved by pigeonhole counting are verified exhaustively here on
small instances; both reduce to "otherwise G would have a dominating set
of size gamma(G)-1", so any reported counterexample is a solver or
partition bug, not mathematics:

  * tool inequality: for any l target cells and a MINIMUM external
    dominating set D of their union, sum over intersected cells of
    (|C cap D| - 1) >= l - n, where the partition has gamma(G)+n cells.
  * restraining bound: after deleting the cells dominated or intersected
    by a restraining set D, the remainder contains no set E of restraint
    at least |D|+|E|+n-(l+t)+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .graphs import (
    CliquePartition,
    Graph,
    GraphError,
    bits,
    emit_graph6,
    mask_of,
    validate_partition,
)
from .solvers import (
    Budget,
    BudgetLike,
    INFEASIBLE,
    OPTIMAL,
    UNKNOWN,
    _OutOfBudget,
    as_budget,
    domination_number,
    external_domination,
)

RESTRAINING_VERIFY_CAP = 14  # lemma verifiers enumerate all D and E exhaustively

FOUND = "found"
ABSENT = "absent"
OK = "ok"
COUNTEREXAMPLE = "counterexample"
PARTIAL = "partial"


@dataclass(frozen=True)
class RestraintRecord:
    set_d: frozenset
    dominated_cells: tuple[int, ...]  # disjoint from D, fully inside N[D]; maximal
    intersected_cells: tuple[int, ...]
    l: int
    t: int
    restraint: int  # l + t
    excess: int  # l + t - |D|


def _profile_masks(closed, cell_masks, d_mask: int, d_size: int) -> RestraintRecord:
    nbhd = 0
    m = d_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        nbhd |= closed[v]
    dominated = []
    intersected = []
    for i, cm in enumerate(cell_masks):
        if cm & d_mask:
            intersected.append(i)
        elif cm & ~nbhd == 0:
            dominated.append(i)
    l, t = len(dominated), len(intersected)
    return RestraintRecord(
        frozenset(bits(d_mask)), tuple(dominated), tuple(intersected),
        l, t, l + t, l + t - d_size,
    )


def restraint_profile(g: Graph, p: CliquePartition, d: Iterable[int]) -> RestraintRecord:
    """Profile of d against partition p, with the maximal dominated-cell list.

    Any sub-list of the dominated cells is also a valid choice in the
    definition; taking all of them gives the strongest restraint and makes
    minimum restraining sets well defined.
    """
    d_mask = mask_of(d)
    if d_mask == 0:
        raise GraphError("restraint profile needs a nonempty vertex set")
    if d_mask >> g.n:
        raise GraphError("vertex out of range")
    return _profile_masks(g.closed, p.masks(), d_mask, d_mask.bit_count())


@dataclass(frozen=True)
class MinRestraintResult:
    status: str  # FOUND | ABSENT | UNKNOWN
    size: Optional[int]  # |D| = restraint - excess_target
    record: Optional[RestraintRecord]
    nodes: int


def min_restraining_set(
    g: Graph, p: CliquePartition, excess_target: int, budget: BudgetLike = None
) -> MinRestraintResult:
    """Smallest D with excess exactly excess_target (minimizing restraint).

    For fixed excess the restraint is |D| + excess, so sets are enumerated
    in increasing size, lexicographically, capped at |D| <= gamma(G); the
    first hit is the minimum. ABSENT is a normal outcome.
    """
    violation = validate_partition(g, p)
    if violation is not None:
        raise GraphError(f"invalid partition: {violation}")
    work = as_budget(budget)
    start = work.used
    gamma_res = domination_number(g, work)
    if gamma_res.status != OPTIMAL:
        return MinRestraintResult(UNKNOWN, None, None, work.used - start)
    cap = gamma_res.value
    cell_masks = p.masks()
    closed = g.closed
    try:
        for s in range(1, cap + 1):
            for combo in combinations(range(g.n), s):
                work.tick()
                rec = _profile_masks(closed, cell_masks, mask_of(combo), s)
                if rec.excess == excess_target:
                    return MinRestraintResult(FOUND, s, rec, work.used - start)
    except _OutOfBudget:
        return MinRestraintResult(UNKNOWN, None, None, work.used - start)
    return MinRestraintResult(ABSENT, None, None, work.used - start)


# ---------------------------------------------------------------------------
# Lemma verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    status: str  # OK | COUNTEREXAMPLE | PARTIAL
    checked: int
    skipped_infeasible: int
    total: int
    counterexample: Optional[dict]
    nodes: int

    @property
    def ok(self) -> bool:
        return self.status == OK


def _require_partition_size(g: Graph, p: CliquePartition, n: int, work: Budget) -> int:
    violation = validate_partition(g, p)
    if violation is not None:
        raise GraphError(f"invalid partition: {violation}")
    gamma_res = domination_number(g, work)
    if gamma_res.status != OPTIMAL:
        raise _OutOfBudget
    if p.size != gamma_res.value + n:
        raise GraphError(
            f"partition has {p.size} cells, expected gamma+n = {gamma_res.value}+{n}"
        )
    return gamma_res.value


def verify_lemma_tool(
    g: Graph, p: CliquePartition, n: int, budget: BudgetLike = None
) -> LemmaReport:
    """Exhaustively check the tool inequality over all proper nonempty
    target cell subsets, with minimum external dominating sets.

    Targets whose union cannot be dominated from outside are skipped and
    counted; the lemma presumes D exists. A violation is returned as a
    re-checkable instance payload (it would mean a defect, the inequality
    is a theorem for any clique partition of size gamma+n).
    """
    work = as_budget(budget)
    start = work.used
    try:
        _require_partition_size(g, p, n, work)
    except _OutOfBudget:
        return LemmaReport(PARTIAL, 0, 0, 2 ** p.size - 2, None, work.used - start)

    m = p.size
    cell_masks = p.masks()
    total = 2 ** m - 2
    checked = skipped = 0
    for l in range(1, m):
        for targets in combinations(range(m), l):
            try:
                work.tick()
                ext = external_domination(g, p, targets, work)
            except _OutOfBudget:
                return LemmaReport(PARTIAL, checked, skipped, total, None, work.used - start)
            if ext.status == INFEASIBLE:
                skipped += 1
                continue
            if ext.status != OPTIMAL:
                return LemmaReport(PARTIAL, checked, skipped, total, None, work.used - start)
            d = ext.certificate.dominator_set
            d_mask = mask_of(d)
            lhs = 0
            t = 0
            for cm in cell_masks:
                inter = (cm & d_mask).bit_count()
                if inter:
                    t += 1
                    lhs += inter - 1
            checked += 1
            if lhs < l - n:
                payload = {
                    "graph6": emit_graph6(g),
                    "partition": p.as_lists(),
                    "targets": list(targets),
                    "d": sorted(d),
                    "l": l,
                    "t": t,
                    "sum": lhs,
                    "n": n,
                }
                return LemmaReport(
                    COUNTEREXAMPLE, checked, skipped, total, payload, work.used - start
                )
    return LemmaReport(OK, checked, skipped, total, None, work.used - start)


def verify_lemma_restraining(
    g: Graph, p: CliquePartition, n: int, budget: BudgetLike = None
) -> LemmaReport:
    """Exhaustively check the restraining bound on a small instance.

    Enumerates every record D with |D| <= gamma(G); for each, every
    nonempty E inside the graph left after deleting D's dominated and
    intersected cells, profiled against the surviving cells. E must never
    reach restraint |D|+|E|+n-(l+t)+1.
    """
    if g.n > RESTRAINING_VERIFY_CAP:
        raise GraphError(
            f"exhaustive verification capped at {RESTRAINING_VERIFY_CAP} vertices"
        )
    work = as_budget(budget)
    start = work.used
    try:
        gamma = _require_partition_size(g, p, n, work)
    except _OutOfBudget:
        return LemmaReport(PARTIAL, 0, 0, 0, None, work.used - start)

    cell_masks = p.masks()
    closed = g.closed
    checked = 0
    try:
        for s in range(1, gamma + 1):
            for combo in combinations(range(g.n), s):
                work.tick()
                rec = _profile_masks(closed, cell_masks, mask_of(combo), s)
                removed_cells = set(rec.dominated_cells) | set(rec.intersected_cells)
                removed_mask = 0
                for i in removed_cells:
                    removed_mask |= cell_masks[i]
                rest = [v for v in range(g.n) if not removed_mask >> v & 1]
                if not rest:
                    continue
                sub = g.induced(rest)
                pos = {v: i for i, v in enumerate(rest)}
                sub_cells = CliquePartition(
                    tuple(
                        frozenset(pos[v] for v in p.cells[i])
                        for i in range(p.size)
                        if i not in removed_cells
                    )
                )
                sub_masks = sub_cells.masks()
                for es in range(1, len(rest) + 1):
                    for e_combo in combinations(range(len(rest)), es):
                        work.tick()
                        e_rec = _profile_masks(sub.closed, sub_masks, mask_of(e_combo), es)
                        threshold = s + es + n - rec.restraint + 1
                        checked += 1
                        if e_rec.restraint >= threshold:
                            payload = {
                                "graph6": emit_graph6(g),
                                "partition": p.as_lists(),
                                "d": sorted(rec.set_d),
                                "d_restraint": rec.restraint,
                                "d_l": rec.l,
                                "d_t": rec.t,
                                "e": sorted(rest[i] for i in e_combo),
                                "e_restraint": e_rec.restraint,
                                "threshold": threshold,
                                "n": n,
                            }
                            return LemmaReport(
                                COUNTEREXAMPLE, checked, 0, checked, payload,
                                work.used - start,
                            )
    except _OutOfBudget:
        return LemmaReport(PARTIAL, checked, 0, checked, None, work.used - start)
    return LemmaReport(OK, checked, 0, checked, None, work.used - start)
