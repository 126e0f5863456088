#!/usr/bin/env python3
"""Regenerate the packaged connected-graph atlas (graph6 lines, <= 7 vertices).

Uses the networkx atlas as the enumeration source; the toolkit itself
never enumerates graphs. Output is one canonical graph6 line per graph in
atlas order (vertex count, then edge count).
"""

import pathlib
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
from vizing_lab.graphs import Graph, emit_graph6  # noqa: E402

out_path = pathlib.Path(__file__).resolve().parents[1] / "src" / "vizing_lab" / "data"
out_path.mkdir(parents=True, exist_ok=True)

lines = []
counts = {}
for G in graph_atlas_g()[1:]:  # index 0 is the empty graph
    n = G.number_of_nodes()
    if n < 1 or n > 7 or not nx.is_connected(G):
        continue
    g = Graph(n, [(min(u, v), max(u, v)) for u, v in G.edges()])
    lines.append(emit_graph6(g))
    counts[n] = counts.get(n, 0) + 1

target = out_path / "atlas_connected_le7.g6"
target.write_text("\n".join(lines) + "\n")
print(f"wrote {len(lines)} graphs to {target}")
print("per order:", dict(sorted(counts.items())))
