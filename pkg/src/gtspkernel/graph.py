"""Weighted simple undirected graphs, closed walks, and shortest-path closure.

Vertices are dense integer ids ``0..n-1``.  Edge weights are nonnegative
integers and all arithmetic is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    GraphError,
    IsolatedVertex,
    MissingVertex,
    NonEdge,
    NonEdgeStep,
    NotClosed,
    ParseError,
)

# Signed 64-bit accumulator; tour weights and offsets are sums over edges.
MAX_WEIGHT_SUM = 2**63 - 1


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Immutable simple undirected graph with nonnegative integer weights."""

    __slots__ = ("_n", "_weights", "_adj")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int, int]] = ()):
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        weights: dict[tuple[int, int], int] = {}
        adj: list[dict[int, int]] = [{} for _ in range(vertex_count)]
        total = 0
        for u, v, w in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge {{{u},{v}}} has an endpoint outside [0, {vertex_count})")
            if w < 0:
                raise GraphError(f"edge {{{u},{v}}} has negative weight {w}")
            k = _key(u, v)
            if k in weights:
                raise GraphError(f"parallel edge {{{k[0]},{k[1]}}}")
            weights[k] = w
            adj[u][v] = w
            adj[v][u] = w
            total += w
        if total > MAX_WEIGHT_SUM:
            raise GraphError("total edge weight exceeds the 64-bit accumulator")
        self._n = vertex_count
        self._weights = weights
        self._adj = adj

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._weights)

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as ``(u, v, w)`` with ``u < v``, in lexicographic order."""
        return [(u, v, w) for (u, v), w in sorted(self._weights.items())]

    def neighbors(self, v: int) -> dict[int, int]:
        """Mapping neighbor -> weight.  Do not mutate."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and _key(u, v) in self._weights

    def weight(self, u: int, v: int) -> int:
        try:
            return self._weights[_key(u, v)]
        except KeyError:
            raise NonEdge(f"{{{u},{v}}} is not an edge") from None

    def total_weight(self) -> int:
        return sum(self._weights.values())

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["WeightedGraph", list[int]]:
        """Subgraph induced on ``vertices``, relabelled densely in ascending order.

        Returns the subgraph and ``id_map`` with ``id_map[new] == old``.
        """
        id_map = sorted(set(vertices))
        new_id = {old: new for new, old in enumerate(id_map)}
        edges = [
            (new_id[u], new_id[v], w)
            for (u, v), w in self._weights.items()
            if u in new_id and v in new_id
        ]
        return WeightedGraph(len(id_map), edges), id_map

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._n == other._n and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._weights.items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self._n}, m={len(self._weights)})"


@dataclass(frozen=True)
class Tour:
    vertices: tuple[int, ...]
    weight: int

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class GtspInstance:
    graph: WeightedGraph
    budget: int | None = None

    def __post_init__(self):
        if self.budget is not None and self.budget < 0:
            raise GraphError("budget must be nonnegative")

    @property
    def is_decision(self) -> bool:
        return self.budget is not None


def is_connected(g: WeightedGraph) -> bool:
    n = g.vertex_count
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == n


def walk_weight(g: WeightedGraph, walk: Sequence[int]) -> int:
    total = 0
    for a, b in zip(walk, walk[1:]):
        if not g.has_edge(a, b):
            raise NonEdgeStep(f"step ({a},{b}) is not an edge")
        total += g.weight(a, b)
    return total


def verify_tour(g: WeightedGraph, t: Sequence[int]) -> Tour:
    """Check that ``t`` is a closed walk through every vertex of ``g``.

    Raises NotClosed, NonEdgeStep or MissingVertex; returns the Tour with its
    weight otherwise.
    """
    seq = tuple(int(v) for v in t)
    if not seq:
        if g.vertex_count == 0:
            return Tour((), 0)
        raise MissingVertex("empty walk")
    for v in seq:
        if not 0 <= v < g.vertex_count:
            raise MissingVertex(f"vertex {v} is not in the graph")
    if seq[0] != seq[-1]:
        raise NotClosed(f"walk starts at {seq[0]} but ends at {seq[-1]}")
    weight = walk_weight(g, seq)
    visited = set(seq)
    for v in range(g.vertex_count):
        if v not in visited:
            raise MissingVertex(f"vertex {v} is never visited")
    return Tour(seq, weight)


def metric_closure(g: WeightedGraph) -> tuple[list[list[int]], list[list[int]]]:
    """All-pairs shortest paths by Floyd-Warshall.

    Returns ``(dist, nxt)`` where ``nxt[u][v]`` is the vertex following ``u``
    on the recorded shortest ``u``-``v`` path.  Intermediates are tried in
    ascending id order and only strict improvements replace a path, so the
    recorded path is deterministic.
    """
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    n = g.vertex_count
    big = MAX_WEIGHT_SUM + 1
    dist = [[big] * n for _ in range(n)]
    nxt = [[-1] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0
        nxt[v][v] = v
    for u, v, w in g.edges():
        dist[u][v] = dist[v][u] = w
        nxt[u][v] = v
        nxt[v][u] = u
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == big:
                continue
            di = dist[i]
            ni = nxt[i]
            nik = ni[k]
            for j in range(n):
                c = dik + dk[j]
                if c < di[j]:
                    di[j] = c
                    ni[j] = nik
    return dist, nxt


def expand_path(nxt: list[list[int]], u: int, v: int) -> list[int]:
    """Vertex sequence of the recorded shortest path from ``u`` to ``v``."""
    path = [u]
    while u != v:
        u = nxt[u][v]
        path.append(u)
    return path


def min_incident_weight(g: WeightedGraph, v: int) -> tuple[int, int]:
    """Cheapest neighbor of ``v`` as ``(anchor, weight)``; ties go to the smaller id."""
    nbrs = g.neighbors(v)
    if not nbrs:
        raise IsolatedVertex(f"vertex {v} has no neighbors")
    anchor = min(nbrs, key=lambda u: (nbrs[u], u))
    return anchor, nbrs[anchor]


# -- instance text format -----------------------------------------------------


def parse_instance(text: str) -> GtspInstance:
    """Parse ``gtsp <n> <m> <W|->`` followed by ``m`` lines ``u v w``."""
    header = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    n = m = 0
    budget = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "gtsp":
                raise ParseError("expected header 'gtsp <n> <m> <W|->'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
                budget = None if parts[3] == "-" else int(parts[3])
            except ValueError:
                raise ParseError("non-integer field in header", lineno) from None
            if n < 0 or m < 0 or (budget is not None and budget < 0):
                raise ParseError("negative value in header", lineno)
            header = lineno
            continue
        if len(parts) != 3:
            raise ParseError("expected edge line 'u v w'", lineno)
        try:
            u, v, w = (int(p) for p in parts)
        except ValueError:
            raise ParseError("non-integer field in edge line", lineno) from None
        if not 0 <= u < v < n:
            raise ParseError(f"edge endpoints must satisfy 0 <= u < v < {n}", lineno)
        if w < 0:
            raise ParseError("negative edge weight", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v, w))
    if header is None:
        raise ParseError("missing header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    try:
        graph = WeightedGraph(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return GtspInstance(graph, budget)


def format_instance(inst: GtspInstance) -> str:
    g = inst.graph
    budget = "-" if inst.budget is None else str(inst.budget)
    lines = [f"gtsp {g.vertex_count} {g.edge_count} {budget}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def parse_tour(text: str) -> list[int]:
    """Tour file: one line of whitespace-separated vertex ids."""
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    try:
        return [int(tok) for tok in body.split()]
    except ValueError:
        raise ParseError("tour contains a non-integer vertex id") from None


def format_tour(vertices: Sequence[int]) -> str:
    return " ".join(str(v) for v in vertices) + "\n"
