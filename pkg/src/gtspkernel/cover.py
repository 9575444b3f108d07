"""Vertex covers: greedy 2-approximation, exact oracles, and validation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .errors import NotACover, ParseError, TooLarge
from .graph import WeightedGraph

CoverKind = Literal["approx2", "exact", "user"]


@dataclass(frozen=True)
class VertexCover:
    vertices: frozenset[int]
    kind: CoverKind

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


def _uncovered_edge(g: WeightedGraph, c: Iterable[int]) -> tuple[int, int] | None:
    cs = set(c)
    for u, v, _ in g.edges():
        if u not in cs and v not in cs:
            return (u, v)
    return None


def approx_cover(g: WeightedGraph) -> VertexCover:
    """Both endpoints of a greedy maximal matching, scanning edges in ascending order."""
    chosen: set[int] = set()
    for u, v, _ in g.edges():
        if u not in chosen and v not in chosen:
            chosen.add(u)
            chosen.add(v)
    return VertexCover(frozenset(chosen), "approx2")


def exact_cover(g: WeightedGraph, limit: int = 20) -> VertexCover:
    """Minimum cover by enumerating vertex subsets in increasing size."""
    n = g.vertex_count
    if n > limit:
        raise TooLarge(f"exact_cover enumerates subsets; n={n} exceeds limit {limit}")
    edges = [(u, v) for u, v, _ in g.edges()]
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            cs = set(subset)
            if all(u in cs or v in cs for u, v in edges):
                return VertexCover(frozenset(cs), "exact")
    raise AssertionError("the full vertex set is always a cover")


def branching_cover(g: WeightedGraph, max_size: int | None = None) -> VertexCover:
    """Minimum cover by a bounded search tree with iterative deepening.

    Runs in O(2^tau * m) time, so it handles large graphs of small cover
    number where subset enumeration does not.
    """
    edges = [(u, v) for u, v, _ in g.edges()]
    bound = g.vertex_count if max_size is None else max_size

    def search(remaining: list[tuple[int, int]], k: int) -> list[int] | None:
        if not remaining:
            return []
        if k == 0:
            return None
        u, v = remaining[0]
        for pick in (u, v):
            rest = [e for e in remaining if pick not in e]
            found = search(rest, k - 1)
            if found is not None:
                return [pick] + found
        return None

    for k in range(bound + 1):
        found = search(edges, k)
        if found is not None:
            return VertexCover(frozenset(found), "exact")
    raise TooLarge(f"no vertex cover of size <= {bound}")


def validate_cover(g: WeightedGraph, c: Iterable[int]) -> VertexCover:
    cs = frozenset(int(v) for v in c)
    for v in cs:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"cover vertex {v} is not in the graph")
    bad = _uncovered_edge(g, cs)
    if bad is not None:
        raise NotACover(bad)
    return VertexCover(cs, "user")


def parse_cover(text: str) -> list[int]:
    """Cover file: one vertex id per line, ``#`` comments allowed."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ids.append(int(line))
        except ValueError:
            raise ParseError("expected one vertex id per line", lineno) from None
    return ids
