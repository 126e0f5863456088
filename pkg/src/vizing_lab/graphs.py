"""Core graph machinery: bitset graphs, graph6 I/O, generators, products.

Vertices are integers 0..n-1. Adjacency is stored as one Python int per
vertex (bit j of ``adj[v]`` set iff v~j), which makes closed-neighborhood
unions, domination checks and subset tests single integer operations. All
graphs are simple and undirected; connectivity is never assumed here, the
solvers state it as a precondition where they need it.

Cartesian products use the canonical flat layout ``(g, h) -> g + h*|V(G)|``,
so the G-fiber at height h is the contiguous index block
``[h*|V(G)|, (h+1)*|V(G)|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 4096  # everything downstream is exponential; fail fast


class GraphError(ValueError):
    pass


class SizeCapError(GraphError):
    pass


class Graph6Error(GraphError):
    """Malformed graph6 input; the message names the offending byte offset."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph with bitset adjacency.

    ``adj[v]`` is the open neighborhood of v as a bitmask, ``closed[v]``
    includes v itself. Instances are safe to share across concurrent
    solver invocations; all "mutators" return new graphs.
    """

    __slots__ = ("n", "adj", "closed")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if n > MAX_VERTICES:
            raise SizeCapError(f"{n} vertices exceeds the size cap {MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self.closed = tuple(a | (1 << v) for v, a in enumerate(adj))

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographic."""
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield u, v

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(a.bit_count() for a in self.adj))

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """New graph with extra edges added (existing edges are kept)."""
        return Graph(self.n, list(self.edges()) + list(edges))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on the given vertices, reindexed in sorted order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [
            (pos[u], pos[v])
            for u in keep
            for v in bits(self.adj[u])
            if v in pos and u < v
        ]
        return Graph(len(keep), edges)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def is_spanning_subgraph_of(self, other: "Graph") -> bool:
        """True when self and other share the vertex set and E(self) <= E(other)."""
        return self.n == other.n and all(
            a & ~b == 0 for a, b in zip(self.adj, other.adj)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    def __getstate__(self):
        return (self.n, self.adj)

    def __setstate__(self, state):
        self.n, self.adj = state
        self.closed = tuple(a | (1 << v) for v, a in enumerate(self.adj))

    @classmethod
    def _from_adj(cls, adj: tuple[int, ...]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = adj
        g.closed = tuple(a | (1 << v) for v, a in enumerate(adj))
        return g


# ---------------------------------------------------------------------------
# graph6 (printable ASCII, 6 bits per byte offset 63, upper triangle
# column-major: for j in 1..n-1, i in 0..j-1)
# ---------------------------------------------------------------------------


def _g6_check_byte(ch: str, offset: int) -> int:
    val = ord(ch) - 63
    if not 0 <= val <= 63:
        raise Graph6Error(f"byte {offset}: character {ch!r} outside printable range 63..126")
    return val


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line into a Graph.

    Accepts the short header (n <= 62) and the 3-byte long form. Raises
    Graph6Error naming the byte offset for malformed headers, characters
    outside the printable range, nonzero padding, or trailing bytes.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("byte 0: empty graph6 input")
    pos = 0
    first = _g6_check_byte(s[0], 0)
    if first == 63:  # '~' introduces the long form
        if len(s) >= 2 and s[1] == "~":
            raise Graph6Error("byte 1: 8-byte vertex counts exceed the size cap")
        if len(s) < 4:
            raise Graph6Error("byte 1: truncated long-form vertex count")
        n = 0
        for k in range(1, 4):
            n = n << 6 | _g6_check_byte(s[k], k)
        pos = 4
    else:
        n = first
        pos = 1
    if n > MAX_VERTICES:
        raise SizeCapError(f"{n} vertices exceeds the size cap {MAX_VERTICES}")

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - pos < nbytes:
        raise Graph6Error(f"byte {len(s)}: truncated edge data, expected {nbytes} bytes")
    if len(s) - pos > nbytes:
        raise Graph6Error(f"byte {pos + nbytes}: trailing data after edge bits")

    edges = []
    i, j = 0, 1
    for k in range(nbytes):
        val = _g6_check_byte(s[pos + k], pos + k)
        take = min(6, nbits - 6 * k)
        if take < 6 and val & ((1 << (6 - take)) - 1):
            raise Graph6Error(f"byte {pos + k}: nonzero padding bits")
        for b in range(take):
            if val >> (5 - b) & 1:
                edges.append((i, j))
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode a Graph as a canonical graph6 string (round-trips parse_graph6)."""
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    out = []
    acc, fill = 0, 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            fill += 1
            if fill == 6:
                out.append(chr(acc + 63))
                acc, fill = 0, 0
    if fill:
        out.append(chr((acc << (6 - fill)) + 63))
    return head + "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield (1-based line number, Graph) for nonblank lines; parse errors propagate."""
    for lineno, line in enumerate(lines, start=1):
        if line.strip():
            yield lineno, parse_graph6(line)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def complete(n: int) -> Graph:
    _require_positive(n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    _require_positive(n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    _require_positive(a)
    _require_positive(b)
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def circulant(n: int, offsets: Iterable[int]) -> Graph:
    _require_positive(n)
    edges = set()
    for s in offsets:
        if s <= 0 or s >= n:
            raise GraphError(f"circulant offset {s} must be in 1..{n - 1}")
        for i in range(n):
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return Graph(n, sorted(edges))


def wagner_example() -> Graph:
    """The 8-cycle with all four diameters: circulant C8(1,4), 3-regular."""
    return circulant(8, (1, 4))


def k66_minus_c4s() -> Graph:
    """K6,6 minus three vertex-disjoint 4-cycles, 4-regular on 12 vertices.

    Left part 0..5, right part 6..11; the removed 4-cycles pair consecutive
    vertices: ({0,1},{6,7}), ({2,3},{8,9}), ({4,5},{10,11}). Any choice of
    three disjoint 4-cycles partitioning both sides gives an isomorphic
    graph, so this fixed one is canonical.
    """
    removed = {(0, 6), (0, 7), (1, 6), (1, 7),
               (2, 8), (2, 9), (3, 8), (3, 9),
               (4, 10), (4, 11), (5, 10), (5, 11)}
    edges = [
        (i, 6 + j) for i in range(6) for j in range(6) if (i, 6 + j) not in removed
    ]
    return Graph(12, edges)


def _require_positive(n: int):
    if n <= 0:
        raise GraphError(f"size must be positive, got {n}")


_FAMILIES = {
    "complete": (1, lambda p: complete(p[0])),
    "path": (1, lambda p: path(p[0])),
    "cycle": (1, lambda p: cycle(p[0])),
    "complete_bipartite": (2, lambda p: complete_bipartite(p[0], p[1])),
    "wagner_example": (0, lambda p: wagner_example()),
    "k66_minus_c4s": (0, lambda p: k66_minus_c4s()),
}


def generate(name: str, params: Iterable[int] = ()) -> Graph:
    """Build a named family member; circulant takes (n, s1, s2, ...)."""
    params = tuple(params)
    if name == "circulant":
        if len(params) < 2:
            raise GraphError("circulant needs n and at least one offset")
        return circulant(params[0], params[1:])
    if name not in _FAMILIES:
        raise GraphError(f"unknown graph family {name!r}")
    arity, build = _FAMILIES[name]
    if len(params) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return build(params)


_SPEC_TOKENS = {
    "complete": "complete",
    "path": "path",
    "cycle": "cycle",
    "kbip": "complete_bipartite",
    "wagner": "wagner_example",
    "k66mc4": "k66_minus_c4s",
}


def parse_graph_spec(token: str) -> Graph:
    """Parse a CLI generator token: complete:<n>, path:<n>, cycle:<n>,
    kbip:<a>,<b>, circulant:<n>:<s1,s2,...>, wagner, k66mc4."""
    head, _, rest = token.partition(":")
    try:
        if head == "circulant":
            npart, _, spart = rest.partition(":")
            if not spart:
                raise GraphError("circulant token needs circulant:<n>:<s1,s2,...>")
            return circulant(int(npart), [int(s) for s in spart.split(",")])
        if head in _SPEC_TOKENS:
            params = [int(p) for p in rest.split(",")] if rest else []
            return generate(_SPEC_TOKENS[head], params)
    except ValueError as exc:  # int() failures
        raise GraphError(f"bad generator token {token!r}: {exc}") from None
    raise GraphError(f"unknown generator token {token!r}")


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._from_adj(tuple(full & ~g.closed[v] for v in range(g.n)))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product with flat vertex layout (a, b) -> a + b*|V(g)|.

    Two product vertices are adjacent iff equal in one coordinate and
    adjacent in the other.
    """
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product needs nonempty factors")
    n = g.n * h.n
    if n > MAX_VERTICES:
        raise SizeCapError(f"product on {n} vertices exceeds the size cap {MAX_VERTICES}")
    edges = []
    for b in range(h.n):
        base = b * g.n
        for u, v in g.edges():
            edges.append((base + u, base + v))
    for u, v in h.edges():
        for a in range(g.n):
            edges.append((a + u * g.n, a + v * g.n))
    return Graph(n, edges)


def product_index(g_vertex: int, h_vertex: int, n_g: int) -> int:
    return g_vertex + h_vertex * n_g


def product_coords(flat: int, n_g: int) -> tuple[int, int]:
    return flat % n_g, flat // n_g


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """N[S]: the members of s together with all their neighbors."""
    m = 0
    for v in s:
        m |= g.closed[v]
    return frozenset(bits(m))


# ---------------------------------------------------------------------------
# Clique partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliquePartition:
    """An ordered list of disjoint vertex sets covering V(G), each inducing
    a complete subgraph. Validity against a concrete graph is checked by
    validate_partition, not at construction."""

    cells: tuple[frozenset[int], ...]

    @staticmethod
    def from_cells(cells: Iterable[Iterable[int]]) -> "CliquePartition":
        """Normalize: members sorted inside cells, cells ordered by minimum."""
        frozen = [frozenset(c) for c in cells]
        return CliquePartition(tuple(sorted(frozen, key=lambda c: min(c) if c else -1)))

    @property
    def size(self) -> int:
        return len(self.cells)

    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(c) for c in self.cells)

    def cell_of(self, v: int) -> int:
        for i, c in enumerate(self.cells):
            if v in c:
                return i
        raise GraphError(f"vertex {v} not covered by the partition")

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.cells]


@dataclass(frozen=True)
class PartitionViolation:
    kind: str  # "empty_cell" | "out_of_range" | "duplicate" | "missing" | "not_clique"
    cell: int | None
    vertex: int | None

    def __str__(self) -> str:
        where = f" in cell {self.cell}" if self.cell is not None else ""
        who = f" (vertex {self.vertex})" if self.vertex is not None else ""
        return f"{self.kind}{where}{who}"


def validate_partition(g: Graph, p: CliquePartition) -> PartitionViolation | None:
    """None when p is a valid clique partition of g, else the first violation."""
    seen = 0
    for i, cell in enumerate(p.cells):
        if not cell:
            return PartitionViolation("empty_cell", i, None)
        for v in sorted(cell):
            if not 0 <= v < g.n:
                return PartitionViolation("out_of_range", i, v)
            if seen >> v & 1:
                return PartitionViolation("duplicate", i, v)
            seen |= 1 << v
        for v in sorted(cell):
            if mask_of(cell) & ~g.closed[v]:
                return PartitionViolation("not_clique", i, v)
    if seen != (1 << g.n) - 1:
        missing = next(bits(~seen & ((1 << g.n) - 1)))
        return PartitionViolation("missing", None, missing)
    return None
