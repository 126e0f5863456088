"""Class-index computation: the minimal clique-cover gap over gamma-preserving
spanning supergraphs.

The class index of G is

    min{ theta(H) - gamma(G) : H spanning supergraph of G, gamma(H) = gamma(G) }.

Every graph gets exactly one index (H = G itself bounds it by
theta(G) - gamma(G)), index 0 is the classical decomposable case, and any
witness H attaining the minimum realizes the gap: no gamma-equal supergraph
of H can do better, else it would beat the minimum for G too.

The search runs over vertex partitions rather than edge subsets. Completing
each part of a partition P into a clique yields a supergraph H(P) with a
clique partition of size |P|; conversely a theta-optimal partition of any
valid witness H, completed over G, is again a valid witness sandwiched
between G and H (adding edges never raises gamma, so gamma stays pinned).
Hence

    class_index(G) = min{ |P| - gamma(G) : gamma(G + completion of P) = gamma(G) }

and the partition side is searched by restricted-growth enumeration with an
exact prune: a partial assignment whose completed graph already admits a
dominating set of size gamma(G) - 1 can never recover, since the remaining
assignments only add edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import (
    CliquePartition,
    Graph,
    GraphError,
    bits,
    emit_graph6,
    parse_graph6,
    validate_partition,
)
from .solvers import (
    Budget,
    BudgetLike,
    OPTIMAL,
    UNKNOWN,
    _OutOfBudget,
    _min_cover_search,
    as_budget,
    clique_cover_number,
    domination_number,
)


@dataclass(frozen=True)
class ClassCertificate:
    """Witness that base_graph lies in class `class_index`: a gamma-preserving
    spanning supergraph together with a clique partition of it whose size is
    gamma + class_index. Verification of the upper bound is cheap; minimality
    is only guaranteed by the search that produced the certificate."""

    base_graph: Graph
    witness_supergraph: Graph
    witness_partition: CliquePartition
    gamma: int
    class_index: int

    def to_json_dict(self) -> dict:
        return {
            "base_g6": emit_graph6(self.base_graph),
            "witness_g6": emit_graph6(self.witness_supergraph),
            "partition": self.witness_partition.as_lists(),
            "gamma": self.gamma,
            "class_index": self.class_index,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ClassCertificate":
        return ClassCertificate(
            base_graph=parse_graph6(d["base_g6"]),
            witness_supergraph=parse_graph6(d["witness_g6"]),
            witness_partition=CliquePartition.from_cells(d["partition"]),
            gamma=int(d["gamma"]),
            class_index=int(d["class_index"]),
        )


@dataclass(frozen=True)
class ClassifyResult:
    status: str  # OPTIMAL | UNKNOWN
    value: Optional[int]
    lower: int  # proven: class_index >= lower
    upper: Optional[int]  # proven: class_index <= upper (theta - gamma when known)
    certificate: Optional[ClassCertificate]
    nodes: int


def _exists_small_dominating_set(closed, full, limit, work) -> bool:
    if limit <= 0:
        return full == 0
    size, _ = _min_cover_search(closed, full, full, limit + 1, 0, work)
    return size <= limit


def _gamma_preserving_partition(g: Graph, k: int, m: int, work: Budget):
    """First partition of V(g) into exactly m parts whose clique completion
    keeps gamma at k, or None. Restricted-growth order, so deterministic."""
    n = g.n
    full = (1 << n) - 1
    closed = list(g.closed)
    parts: list[int] = []

    def assign(v: int):
        work.tick()
        if v == n:
            return list(parts)
        tail = n - v - 1  # vertices still unassigned after v
        can_open = len(parts) < m
        for idx in range(len(parts) + (1 if can_open else 0)):
            opening = idx == len(parts)
            if len(parts) + (1 if opening else 0) + tail < m:
                continue  # cannot reach m nonempty parts any more
            if opening:
                parts.append(0)
            bit = 1 << v
            added = []
            members = parts[idx]
            mm = members & ~g.adj[v]
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                closed[u] |= bit
                closed[v] |= 1 << u
                added.append(u)
            parts[idx] |= bit
            # completion only ever adds edges: once a (k-1)-dominating set
            # appears it never goes away, so prune exactly here
            ok = not added or not _exists_small_dominating_set(closed, full, k - 1, work)
            found = assign(v + 1) if ok else None
            parts[idx] &= ~bit
            for u in added:
                closed[u] &= ~bit
                closed[v] &= ~(1 << u)
            if opening:
                parts.pop()
            if found is not None:
                return found
        return None

    return assign(0)


def _completion_edges(g: Graph, part_masks) -> list:
    edges = []
    for mask in part_masks:
        members = list(bits(mask))
        for i, u in enumerate(members):
            for w in members[i + 1:]:
                if not g.has_edge(u, w):
                    edges.append((u, w))
    return edges


def class_index(g: Graph, budget: BudgetLike = None) -> ClassifyResult:
    """Exact class index with witness certificate.

    Iterates the target partition size m upward from gamma(G). Level m is
    exhausted before level m+1 starts, so the first success is the minimum
    and the witness supergraph has theta exactly m (a smaller theta would
    have surfaced at its own level).
    """
    if g.n == 0:
        raise GraphError("empty graph has no class index")
    if not g.is_connected():
        raise GraphError("class index requires a connected graph")
    work = as_budget(budget)
    start = work.used

    gamma_res = domination_number(g, work)
    if gamma_res.status != OPTIMAL:
        return ClassifyResult(UNKNOWN, None, 0, None, None, work.used - start)
    k = gamma_res.value

    theta_res = clique_cover_number(g, work)
    if theta_res.status != OPTIMAL:
        return ClassifyResult(UNKNOWN, None, 0, None, None, work.used - start)
    theta = theta_res.value

    if theta == k:
        cert = ClassCertificate(g, g, theta_res.certificate.partition, k, 0)
        return ClassifyResult(OPTIMAL, 0, 0, 0, cert, work.used - start)

    m = k
    try:
        for m in range(k, theta):
            parts = _gamma_preserving_partition(g, k, m, work)
            if parts is not None:
                witness = g.with_edges(_completion_edges(g, parts))
                partition = CliquePartition.from_cells(frozenset(bits(p)) for p in parts)
                cert = ClassCertificate(g, witness, partition, k, m - k)
                return ClassifyResult(OPTIMAL, m - k, m - k, m - k, cert, work.used - start)
    except _OutOfBudget:
        # levels below m are refuted, theta always works
        return ClassifyResult(UNKNOWN, None, m - k, theta - k, None, work.used - start)

    cert = ClassCertificate(g, g, theta_res.certificate.partition, k, theta - k)
    return ClassifyResult(OPTIMAL, theta - k, theta - k, theta - k, cert, work.used - start)


@dataclass(frozen=True)
class A0Result:
    status: str
    value: Optional[bool]
    certificate: Optional[ClassCertificate]
    nodes: int


def is_in_A0(g: Graph, budget: BudgetLike = None) -> A0Result:
    """Whether the class index is 0 (the decomposable-closure class).

    The theta(G) == gamma(G) shortcut is inherited from class_index, which
    returns immediately in that case."""
    res = class_index(g, budget)
    value = None if res.status != OPTIMAL else res.value == 0
    return A0Result(res.status, value, res.certificate, res.nodes)


def verify_class_certificate(cert: ClassCertificate, budget: BudgetLike = None) -> list:
    """Independent re-check of a certificate's verifiable claims.

    Recomputes both domination numbers, validates the partition and the
    spanning relation, and checks the arithmetic. Deliberately does NOT
    re-establish minimality of the class index; that requires re-running
    class_index.
    """
    work = as_budget(budget)
    problems = []
    base, wit = cert.base_graph, cert.witness_supergraph
    if base.n != wit.n or not base.is_spanning_subgraph_of(wit):
        problems.append("witness is not a spanning supergraph of the base")
        return problems

    gb = domination_number(base, work)
    gw = domination_number(wit, work)
    if gb.status != OPTIMAL or gw.status != OPTIMAL:
        problems.append("budget exhausted while recomputing gamma")
        return problems
    if gb.value != cert.gamma:
        problems.append(f"gamma(base)={gb.value} but certificate says {cert.gamma}")
    if gw.value != gb.value:
        problems.append(f"gamma not preserved: base {gb.value}, witness {gw.value}")

    violation = validate_partition(wit, cert.witness_partition)
    if violation is not None:
        if violation.kind == "not_clique":
            problems.append(f"cell not complete: {violation}")
        else:
            problems.append(f"invalid partition: {violation}")
    if cert.witness_partition.size != cert.gamma + cert.class_index:
        problems.append(
            f"partition size {cert.witness_partition.size} != gamma+class "
            f"{cert.gamma + cert.class_index}"
        )
    return problems
