"""Maximum-cardinality minimum-cost matching in a hop graph.

The fast path is successive shortest augmenting paths: Dijkstra on reduced
costs, with node potentials keeping every residual arc nonnegative.  Each
augmentation yields a matching of minimum cost for its cardinality, and the
loop stops when no augmenting path is left.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable

from .errors import TooLarge
from .hopgraph import HopGraph


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]  # (x_index, y_index)
    cardinality: int
    total_cost: int

    @classmethod
    def from_pairs(cls, h: HopGraph, pairs) -> "Matching":
        cost = {(x, y): p for x, y, p in h.edges}
        pairs = frozenset(pairs)
        return cls(pairs, len(pairs), sum(cost[e] for e in pairs))


def check_matching(h: HopGraph, m: Matching) -> None:
    """Raise AssertionError unless ``m`` is a valid matching of ``h``."""
    cost = {(x, y): p for x, y, p in h.edges}
    xs = [x for x, _ in m.pairs]
    ys = [y for _, y in m.pairs]
    assert len(set(xs)) == len(xs), "two pairs share an X node"
    assert len(set(ys)) == len(ys), "two pairs share a Y node"
    assert all(e in cost for e in m.pairs), "pair is not a hop graph edge"
    assert m.cardinality == len(m.pairs)
    assert m.total_cost == sum(cost[e] for e in m.pairs)


def min_cost_max_matching(
    h: HopGraph,
    trace: Callable[[Matching], None] | None = None,
) -> Matching:
    """Maximum-cardinality matching of minimum total penalty.

    ``trace``, if given, receives the intermediate matching after every
    augmentation; each one is of minimum cost for its cardinality.
    """
    nx, ny = len(h.x_nodes), len(h.y_nodes)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nx)]
    cost: dict[tuple[int, int], int] = {}
    for x, y, p in h.edges:
        if p < 0:
            raise ValueError("hop graph penalties must be nonnegative")
        adj[x].append((y, p))
        cost[(x, y)] = p
    for lst in adj:
        lst.sort()

    mate_x = [-1] * nx
    mate_y = [-1] * ny
    # Penalties are nonnegative, so zero potentials are feasible to start.
    pot_x = [0] * nx
    pot_y = [0] * ny
    total = 0

    while True:
        dist_x: list[int | None] = [None] * nx
        dist_y: list[int | None] = [None] * ny
        prev_y = [-1] * ny  # X node preceding each Y node on its shortest path
        done_x = [False] * nx
        done_y = [False] * ny
        heap: list[tuple[int, int, int]] = []  # (reduced dist, side, index); side 0 = X
        for x in range(nx):
            if mate_x[x] == -1:
                d = -pot_x[x]
                dist_x[x] = d
                heapq.heappush(heap, (d, 0, x))
        while heap:
            d, side, i = heapq.heappop(heap)
            if side == 0:
                if done_x[i] or d != dist_x[i]:
                    continue
                done_x[i] = True
                for y, p in adj[i]:
                    if mate_x[i] == y:
                        continue
                    nd = d + p + pot_x[i] - pot_y[y]
                    if dist_y[y] is None or nd < dist_y[y]:
                        dist_y[y] = nd
                        prev_y[y] = i
                        heapq.heappush(heap, (nd, 1, y))
            else:
                if done_y[i] or d != dist_y[i]:
                    continue
                done_y[i] = True
                x = mate_y[i]
                if x == -1:
                    continue
                nd = d - cost[(x, i)] + pot_y[i] - pot_x[x]
                if dist_x[x] is None or nd < dist_x[x]:
                    dist_x[x] = nd
                    heapq.heappush(heap, (nd, 0, x))

        # Cheapest free Y node by true path cost; lowest index on ties.
        best = -1
        best_cost = 0
        for y in range(ny):
            if mate_y[y] == -1 and done_y[y]:
                c = dist_y[y] + pot_y[y]
                if best == -1 or c < best_cost:
                    best, best_cost = y, c
        if best == -1:
            break

        for x in range(nx):
            if done_x[x]:
                pot_x[x] += dist_x[x]
        for y in range(ny):
            if done_y[y]:
                pot_y[y] += dist_y[y]

        y = best
        while y != -1:
            x = prev_y[y]
            nxt = mate_x[x]
            mate_x[x] = y
            mate_y[y] = x
            y = nxt
        total += best_cost

        if trace is not None:
            trace(_collect(mate_x, cost))

    result = _collect(mate_x, cost)
    assert result.total_cost == total
    return result


def _collect(mate_x: list[int], cost: dict[tuple[int, int], int]) -> Matching:
    pairs = frozenset((x, y) for x, y in enumerate(mate_x) if y != -1)
    return Matching(pairs, len(pairs), sum(cost[e] for e in pairs))


def matching_cost_profile(h: HopGraph, limit: int = 22) -> dict[int, tuple[int, frozenset]]:
    """Minimum cost (and a witness) for every attainable cardinality, by enumeration."""
    if len(h.edges) > limit:
        raise TooLarge(f"{len(h.edges)} edges exceeds enumeration limit {limit}")
    edges = sorted(h.edges)
    best: dict[int, tuple[int, frozenset]] = {}

    def rec(i: int, used_x: frozenset, used_y: frozenset, chosen: tuple, c: int) -> None:
        if i == len(edges):
            k = len(chosen)
            if k not in best or c < best[k][0]:
                best[k] = (c, frozenset(chosen))
            return
        rec(i + 1, used_x, used_y, chosen, c)
        x, y, p = edges[i]
        if x not in used_x and y not in used_y:
            rec(i + 1, used_x | {x}, used_y | {y}, chosen + ((x, y),), c + p)

    rec(0, frozenset(), frozenset(), (), 0)
    return best


def brute_force_matching(h: HopGraph, limit: int = 22) -> Matching:
    """Exhaustive oracle: enumerate every matching, keep the largest, then cheapest."""
    profile = matching_cost_profile(h, limit)
    k = max(profile)
    c, pairs = profile[k]
    return Matching(pairs, k, c)
