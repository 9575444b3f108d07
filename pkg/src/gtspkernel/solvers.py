"""Exact and heuristic Graphical TSP solvers.

All solvers work on the metric closure: an optimal closed walk through every
vertex has the weight of an optimal Hamiltonian cycle under shortest-path
distances, and the walk is recovered by expanding each cycle step into its
recorded shortest path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import Disconnected, GtspError, TooLarge
from .graph import GtspInstance, Tour, expand_path, is_connected, metric_closure, verify_tour


@dataclass(frozen=True)
class SolveResult:
    tour: Tour
    optimal: bool

    @property
    def weight(self) -> int:
        return self.tour.weight


def _closure(inst: GtspInstance):
    g = inst.graph
    if g.vertex_count == 0:
        raise GtspError("empty graph has no tour")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    return metric_closure(g)


def cycle_cost(dist: list[list[int]], order: Sequence[int]) -> int:
    return sum(dist[order[i - 1]][order[i]] for i in range(len(order)))


def _expand(inst: GtspInstance, nxt, order: Sequence[int]) -> Tour:
    walk = [order[0]]
    for i in range(len(order)):
        a, b = order[i], order[(i + 1) % len(order)]
        if a != b:
            walk.extend(expand_path(nxt, a, b)[1:])
    return verify_tour(inst.graph, walk)


def held_karp(dist: list[list[int]]) -> tuple[int, list[int]]:
    """Optimal Hamiltonian cycle by subset DP; returns ``(cost, order)`` starting at 0."""
    n = len(dist)
    if n == 1:
        return 0, [0]
    m = n - 1  # vertex i + 1 is bit i
    full = (1 << m) - 1
    big = None
    cost: list[list[int | None]] = [[big] * m for _ in range(1 << m)]
    parent = [[-1] * m for _ in range(1 << m)]
    for j in range(m):
        cost[1 << j][j] = dist[0][j + 1]
    for mask in range(1, 1 << m):
        row = cost[mask]
        for j in range(m):
            cj = row[j]
            if cj is None or not (mask >> j) & 1:
                continue
            dj = dist[j + 1]
            rest = full & ~mask
            while rest:
                low = rest & -rest
                k = low.bit_length() - 1
                rest ^= low
                nm = mask | low
                c = cj + dj[k + 1]
                cur = cost[nm][k]
                if cur is None or c < cur:
                    cost[nm][k] = c
                    parent[nm][k] = j
    best, last = None, -1
    for j in range(m):
        c = cost[full][j] + dist[j + 1][0]
        if best is None or c < best:
            best, last = c, j
    order = []
    mask = full
    while last != -1:
        order.append(last + 1)
        prev = parent[mask][last]
        mask ^= 1 << last
        last = prev
    order.append(0)
    order.reverse()
    return best, order


def solve_exact(inst: GtspInstance, limit: int = 13) -> SolveResult:
    n = inst.graph.vertex_count
    if n > limit:
        raise TooLarge(f"n={n} exceeds exact solver limit {limit}")
    dist, nxt = _closure(inst)
    best, order = held_karp(dist)
    tour = _expand(inst, nxt, order)
    assert tour.weight == best
    return SolveResult(tour, True)


def solve_permutation_bruteforce(inst: GtspInstance, limit: int = 8) -> SolveResult:
    n = inst.graph.vertex_count
    if n > limit:
        raise TooLarge(f"n={n} exceeds permutation oracle limit {limit}")
    dist, nxt = _closure(inst)
    best_cost, best_order = None, [0]
    for rest in permutations(range(1, n)):
        order = (0,) + rest
        c = cycle_cost(dist, order)
        if best_cost is None or c < best_cost:
            best_cost, best_order = c, list(order)
    return SolveResult(_expand(inst, nxt, best_order), True)


def nearest_neighbor(dist: list[list[int]], start: int) -> list[int]:
    n = len(dist)
    order = [start]
    unvisited = set(range(n)) - {start}
    while unvisited:
        here = dist[order[-1]]
        nxt = min(unvisited, key=lambda v: (here[v], v))
        order.append(nxt)
        unvisited.remove(nxt)
    return order


def two_opt(dist: list[list[int]], order: list[int]) -> list[int]:
    """First-improvement 2-opt until no segment reversal shortens the cycle."""
    order = list(order)
    n = len(order)
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            for j in range(i + 2, n if i > 0 else n - 1):
                c, d = order[j], order[(j + 1) % n]
                if dist[a][c] + dist[b][d] < dist[a][b] + dist[c][d]:
                    order[i + 1 : j + 1] = reversed(order[i + 1 : j + 1])
                    improved = True
                    a, b = order[i], order[i + 1]
    return order


def solve_heuristic(inst: GtspInstance, seed: int = 0) -> SolveResult:
    dist, nxt = _closure(inst)
    n = inst.graph.vertex_count
    start = random.Random(seed).randrange(n)
    order = two_opt(dist, nearest_neighbor(dist, start))
    return SolveResult(_expand(inst, nxt, order), False)
