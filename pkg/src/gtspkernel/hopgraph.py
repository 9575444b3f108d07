"""Bipartite penalty graph between ordered cover pairs and non-cover vertices.

An X node is an ordered pair ``(u, v)`` of distinct cover vertices, a Y node
is a vertex outside the cover.  ``(u, v)`` and ``s`` are joined when ``s`` is
adjacent to both ``u`` and ``v``; the edge carries the extra cost of visiting
``s`` through the hop ``u, s, v`` instead of its cheapest loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import TextIO

from .cover import VertexCover
from .errors import IsolatedNonCoverVertex, NonEdge
from .graph import WeightedGraph, min_incident_weight


@dataclass(frozen=True)
class HopGraph:
    x_nodes: tuple[tuple[int, int], ...]
    y_nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (x_index, y_index, penalty)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def hop_penalty(g: WeightedGraph, u: int, s: int, v: int) -> int:
    if u == v:
        raise NonEdge("a hop needs two distinct endpoints")
    if not (g.has_edge(u, s) and g.has_edge(s, v)):
        raise NonEdge(f"({u},{s},{v}) is not a walk in the graph")
    _, cheapest = min_incident_weight(g, s)
    return g.weight(u, s) + g.weight(s, v) - 2 * cheapest


def build_hop_graph(g: WeightedGraph, c: VertexCover) -> HopGraph:
    cover = sorted(c.vertices)
    in_cover = set(cover)
    y_nodes = tuple(v for v in range(g.vertex_count) if v not in in_cover)
    cheapest = {}
    for s in y_nodes:
        if g.degree(s) == 0:
            raise IsolatedNonCoverVertex(f"vertex {s} outside the cover has no neighbors")
        cheapest[s] = min_incident_weight(g, s)[1]

    x_nodes = tuple(permutations(cover, 2))  # lexicographic since cover is sorted
    edges = []
    for xi, (u, v) in enumerate(x_nodes):
        nu = g.neighbors(u)
        nv = g.neighbors(v)
        for yi, s in enumerate(y_nodes):
            if s in nu and s in nv:
                penalty = nu[s] + nv[s] - 2 * cheapest[s]
                if penalty < 0:
                    raise AssertionError(f"negative hop penalty at ({u},{s},{v})")
                edges.append((xi, yi, penalty))
    return HopGraph(x_nodes, y_nodes, tuple(edges))


def dump_hop_graph(h: HopGraph, out: TextIO) -> None:
    for xi, yi, p in h.edges:
        u, v = h.x_nodes[xi]
        out.write(f"x:({u},{v}) y:{h.y_nodes[yi]} penalty:{p}\n")
