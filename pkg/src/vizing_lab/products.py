"""Cartesian-product domination analysis and exact bound checks.

All bound decisions are exact integer or rational arithmetic. The only
irrational bound, gamma_product >= (k - sqrt(k)) * gamma_h, is decided by
a signed-square comparison: with s = k*gamma_h - gamma_product it holds
iff s <= 0 or s^2 <= k*gamma_h^2, i.e. iff k*gamma_h^2 >= s*|s|. Perfect
squares therefore never wobble the way a floating sqrt would.

Cell bookkeeping follows the canonical product layout from graphs.py:
the G-fiber at height h is the index block [h*|V(G)|, (h+1)*|V(G)|), and
the cell (i, h) is clique i of the G-partition shifted into that block.
A cell is missing for h when the dominating set avoids C_i x N_H[h]
entirely; such cells are dominated horizontally inside their own fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .classify import class_index
from .graphs import (
    CliquePartition,
    Graph,
    GraphError,
    bits,
    cartesian_product,
    emit_graph6,
    mask_of,
)
from .restraint import FOUND, min_restraining_set
from .solvers import (
    BudgetLike,
    GammaResult,
    OPTIMAL,
    as_budget,
    domination_number,
    enumerate_min_dominating_sets,
)


class CellId(NamedTuple):
    clique_index: int
    h: int


def g_fiber_vertices(n_g: int, h: int) -> range:
    """Flat indices of the G-fiber at height h (contiguous by layout)."""
    return range(h * n_g, (h + 1) * n_g)


def h_fiber_vertices(n_g: int, n_h: int, g_vertex: int) -> range:
    """Flat indices of the H-fiber over g_vertex (stride n_g by layout)."""
    return range(g_vertex, g_vertex + n_g * n_h, n_g)


def product_gamma(g: Graph, h: Graph, budget: BudgetLike = None) -> GammaResult:
    """Exact domination number of the Cartesian product, with witness."""
    return domination_number(cartesian_product(g, h), budget)


# ---------------------------------------------------------------------------
# Bound checks (pure integer / rational arithmetic)
# ---------------------------------------------------------------------------


def check_vizing(gamma_g: int, gamma_h: int, gamma_product: int) -> bool:
    """The conjectured product bound; a False here on exact solver output
    would be a publishable counterexample, so callers treat it as a halt."""
    _require_positive(gamma_g, gamma_h, gamma_product)
    return gamma_product >= gamma_g * gamma_h


def check_theorem_a1(gamma_g: int, gamma_h: int, gamma_product: int) -> bool:
    """gamma_product >= (gamma_g - sqrt(gamma_g)) * gamma_h, exactly.

    Callers guarantee the hypothesis (class index of G is 1); the decision
    itself is the squared comparison described in the module docstring.
    """
    _require_positive(gamma_g, gamma_h, gamma_product)
    s = gamma_g * gamma_h - gamma_product
    return s <= 0 or s * s <= gamma_g * gamma_h * gamma_h


def check_corollary(gamma_g: int, gamma_h: int, gamma_product: int, r: int) -> bool:
    """gamma_product >= (gamma_g - r) * gamma_h for a minimum restraining
    set of size r (excess equal to the class index of G)."""
    _require_positive(gamma_g, gamma_h, gamma_product, r)
    return gamma_product >= (gamma_g - r) * gamma_h


def check_suen_tarr(gamma_g: int, gamma_h: int, gamma_product: int) -> bool:
    """2*gamma_product >= gamma_g*gamma_h + min(gamma_g, gamma_h)."""
    _require_positive(gamma_g, gamma_h, gamma_product)
    return 2 * gamma_product >= gamma_g * gamma_h + min(gamma_g, gamma_h)


def minmax_bound(gamma_g: int, gamma_h: int) -> Fraction:
    """min over r in [1, gamma_g] of
    max{(gamma_g - r)*gamma_h, r/(r+1)*(gamma_g+1)*gamma_h}, exactly."""
    if gamma_g < 1 or gamma_h < 1:
        raise GraphError("gamma values must be positive")
    best = None
    for r in range(1, gamma_g + 1):
        undercount = Fraction((gamma_g - r) * gamma_h)
        overcount = Fraction(r, r + 1) * (gamma_g + 1) * gamma_h
        value = max(undercount, overcount)
        if best is None or value < best:
            best = value
    return best


def _require_positive(*values: int):
    for v in values:
        if v <= 0:
            raise GraphError(f"expected positive integers, got {values}")


# ---------------------------------------------------------------------------
# Cells, missing cells, simple labeling
# ---------------------------------------------------------------------------


def _check_product_inputs(gh: Graph, g_partition: CliquePartition, d, h_graph: Graph):
    if h_graph.n == 0 or gh.n % h_graph.n:
        raise GraphError("product size is not a multiple of |V(H)|")
    n_g = gh.n // h_graph.n
    union = 0
    covered = 0
    for cm in g_partition.masks():
        if cm & union:
            raise GraphError("partition cells overlap")
        union |= cm
        covered += cm.bit_count()
    if union != (1 << n_g) - 1 or covered != n_g:
        raise GraphError(f"partition does not cover the {n_g} G-vertices")
    d_mask = mask_of(d)
    if d_mask >> gh.n:
        raise GraphError("dominating-set vertex out of product range")
    seen = 0
    m = d_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        seen |= gh.closed[v]
    if seen != (1 << gh.n) - 1:
        missing = next(bits(~seen & ((1 << gh.n) - 1)))
        raise GraphError(f"set does not dominate the product: vertex {missing} uncovered")
    return n_g, d_mask


def missing_cells(
    gh: Graph, g_partition: CliquePartition, d, h_graph: Graph
) -> dict[int, tuple[int, ...]]:
    """For each h, the clique indices i with D disjoint from C_i x N_H[h]."""
    n_g, d_mask = _check_product_inputs(gh, g_partition, d, h_graph)
    cell_masks = g_partition.masks()
    out = {}
    for h in range(h_graph.n):
        missing = []
        for i, cm in enumerate(cell_masks):
            hit = 0
            for hh in bits(h_graph.closed[h]):
                hit |= cm << (hh * n_g)
            if d_mask & hit == 0:
                missing.append(i)
        out[h] = tuple(missing)
    return out


def simple_labeling(
    gh: Graph, g_partition: CliquePartition, d, h_graph: Graph
) -> dict[int, int]:
    """Label every dominating-set vertex by the clique index of its
    G-projection, then verify the projection consequence: for every h and
    cell i met by D inside C_i x N_H[h], the H-projection of label-i
    vertices reaches h within a closed neighborhood."""
    n_g, d_mask = _check_product_inputs(gh, g_partition, d, h_graph)
    cell_masks = g_partition.masks()
    labels = {}
    projections: dict[int, set] = {}
    m = d_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        gv, hv = v % n_g, v // n_g
        for i, cm in enumerate(cell_masks):
            if cm >> gv & 1:
                labels[v] = i
                projections.setdefault(i, set()).add(hv)
                break
    for h in range(h_graph.n):
        for i, cm in enumerate(cell_masks):
            hit = 0
            for hh in bits(h_graph.closed[h]):
                hit |= cm << (hh * n_g)
            if d_mask & hit:
                proj_closed = 0
                for hv in projections.get(i, ()):
                    proj_closed |= h_graph.closed[hv]
                if not proj_closed >> h & 1:
                    raise RuntimeError(
                        f"labeling postcondition failed at cell {CellId(i, h)}"
                    )
    return labels


# ---------------------------------------------------------------------------
# Whole-product analysis and the fiber probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    """One exact comparison, oriented so holds == (lhs >= rhs)."""

    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    note: str = ""

    def to_json_dict(self) -> dict:
        d = {
            "name": self.name,
            "lhs": {"num": self.lhs.numerator, "den": self.lhs.denominator},
            "rhs": {"num": self.rhs.numerator, "den": self.rhs.denominator},
            "holds": self.holds,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class ProductAnalysisReport:
    g_g6: str
    h_g6: str
    gamma_g: Optional[int]
    gamma_h: Optional[int]
    gamma_product: Optional[int]
    class_index_g: Optional[int]
    min_restraint_r: Optional[int]
    bound_results: tuple[BoundCheck, ...]
    missing_cell_counts: tuple[tuple[int, int], ...]  # (h, count), empty if unknown
    max_missing_per_fiber: Optional[int]
    product_witness: tuple[int, ...]
    nodes: int

    @property
    def vizing_ok(self) -> Optional[bool]:
        for b in self.bound_results:
            if b.name == "vizing":
                return b.holds
        return None

    def to_json_dict(self) -> dict:
        return {
            "g_g6": self.g_g6,
            "h_g6": self.h_g6,
            "gamma_g": self.gamma_g,
            "gamma_h": self.gamma_h,
            "gamma_product": self.gamma_product,
            "class_index_g": self.class_index_g,
            "min_restraint_r": self.min_restraint_r,
            "bounds": [b.to_json_dict() for b in self.bound_results],
            "missing_cell_counts": {str(h): c for h, c in self.missing_cell_counts},
            "max_missing_per_fiber": self.max_missing_per_fiber,
            "product_witness": list(self.product_witness),
            "nodes": self.nodes,
        }


def analyze_product(g: Graph, h: Graph, budget: BudgetLike = None) -> ProductAnalysisReport:
    """Exact gammas, class index of G, and every applicable bound check.

    An unknown gamma or class propagates as absent fields and skipped
    bounds, never as a guessed number.
    """
    work = as_budget(budget)
    start = work.used
    gg = domination_number(g, work)
    hh = domination_number(h, work)
    gp = product_gamma(g, h, work)
    gamma_g = gg.value if gg.status == OPTIMAL else None
    gamma_h = hh.value if hh.status == OPTIMAL else None
    gamma_p = gp.value if gp.status == OPTIMAL else None

    cls = class_index(g, work)
    cls_value = cls.value if cls.status == OPTIMAL else None

    r_min = None
    if cls_value is not None:
        mrs = min_restraining_set(g, cls.certificate.witness_partition, cls_value, work)
        if mrs.status == FOUND:
            r_min = mrs.size

    bounds = []
    if gamma_g and gamma_h and gamma_p:
        bounds.append(
            BoundCheck(
                "vizing",
                Fraction(gamma_p),
                Fraction(gamma_g * gamma_h),
                check_vizing(gamma_g, gamma_h, gamma_p),
            )
        )
        bounds.append(
            BoundCheck(
                "suen_tarr",
                Fraction(2 * gamma_p),
                Fraction(gamma_g * gamma_h + min(gamma_g, gamma_h)),
                check_suen_tarr(gamma_g, gamma_h, gamma_p),
            )
        )
        if cls_value == 1:
            s = gamma_g * gamma_h - gamma_p
            bounds.append(
                BoundCheck(
                    "theorem_a1",
                    Fraction(gamma_g * gamma_h * gamma_h),
                    Fraction(s * abs(s)),
                    check_theorem_a1(gamma_g, gamma_h, gamma_p),
                    note="signed-square form of gamma_product >= "
                    "(gamma_g - sqrt(gamma_g)) * gamma_h",
                )
            )
            bounds.append(
                BoundCheck(
                    "minmax",
                    Fraction(gamma_p),
                    minmax_bound(gamma_g, gamma_h),
                    Fraction(gamma_p) >= minmax_bound(gamma_g, gamma_h),
                    note="min-max undercount/overcount bound for class 1",
                )
            )
        if cls_value is not None and r_min is not None:
            bounds.append(
                BoundCheck(
                    "corollary",
                    Fraction(gamma_p),
                    Fraction((gamma_g - r_min) * gamma_h),
                    check_corollary(gamma_g, gamma_h, gamma_p, r_min),
                )
            )

    counts: tuple[tuple[int, int], ...] = ()
    max_missing = None
    if cls_value is not None and gamma_p is not None:
        product = cartesian_product(g, h)
        mc = missing_cells(
            product, cls.certificate.witness_partition,
            gp.certificate.dominator_set, h,
        )
        counts = tuple((h0, len(cells)) for h0, cells in sorted(mc.items()))
        max_missing = max((len(c) for c in mc.values()), default=0)

    witness = tuple(sorted(gp.certificate.dominator_set)) if gamma_p is not None else ()
    return ProductAnalysisReport(
        g_g6=emit_graph6(g),
        h_g6=emit_graph6(h),
        gamma_g=gamma_g,
        gamma_h=gamma_h,
        gamma_product=gamma_p,
        class_index_g=cls_value,
        min_restraint_r=r_min,
        bound_results=tuple(bounds),
        missing_cell_counts=counts,
        max_missing_per_fiber=max_missing,
        product_witness=witness,
        nodes=work.used - start,
    )


@dataclass(frozen=True)
class FiberProfileResult:
    class_index_g: Optional[int]
    gamma_product: Optional[int]
    sets_examined: int
    complete: bool
    max_missing_per_fiber: Optional[int]
    evidence: tuple[dict, ...]  # fibers with >= 2 missing cells, capped
    nodes: int


def fiber_missing_profile(
    g: Graph,
    h: Graph,
    enumeration_limit: int = 1000,
    budget: BudgetLike = None,
    evidence_cap: int = 20,
) -> FiberProfileResult:
    """Empirical probe of the per-fiber missing-cell count.

    Scans up to enumeration_limit minimum dominating sets of the product
    and reports the worst per-fiber count seen. Purely evidence-gathering
    for the observation that class-1 partitions leave at most one missing
    cell per fiber: fibers with two or more are collected, never asserted
    against.
    """
    work = as_budget(budget)
    start = work.used
    cls = class_index(g, work)
    if cls.status != OPTIMAL:
        return FiberProfileResult(None, None, 0, False, None, (), work.used - start)
    partition = cls.certificate.witness_partition
    product = cartesian_product(g, h)
    enum = enumerate_min_dominating_sets(product, enumeration_limit, work)
    if enum.gamma is None:
        return FiberProfileResult(cls.value, None, 0, False, None, (), work.used - start)
    max_missing = 0
    evidence = []
    for dset in enum.sets:
        mc = missing_cells(product, partition, dset, h)
        for h0, cells in mc.items():
            if len(cells) > max_missing:
                max_missing = len(cells)
            if len(cells) >= 2 and len(evidence) < evidence_cap:
                evidence.append(
                    {
                        "dominating_set": sorted(dset),
                        "h": h0,
                        "missing_cells": list(cells),
                    }
                )
    return FiberProfileResult(
        cls.value, enum.gamma, len(enum.sets), enum.complete,
        max_missing, tuple(evidence), work.used - start,
    )
