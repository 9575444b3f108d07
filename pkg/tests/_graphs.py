"""Test-side graph builders, independent of the package's generators."""

import random

from hypothesis import strategies as st

from gtspkernel.graph import GtspInstance, WeightedGraph

P3 = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
STAR3 = WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
C4 = WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
TRIANGLE = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def random_connected(rng: random.Random, n: int, p: float, wmax: int, wmin: int = 0) -> WeightedGraph:
    edges = {}
    for v in range(1, n):
        edges[(rng.randrange(v), v)] = rng.randint(wmin, wmax)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges[(u, v)] = rng.randint(wmin, wmax)
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])


def corpus(seed: int, count: int, nmax: int, wmax: int = 20, nmin: int = 1):
    """Seeded random connected graphs with mixed densities."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(nmin, nmax)
        p = rng.choice([0.0, 0.15, 0.3, 0.5, 0.8])
        out.append(random_connected(rng, n, p, wmax))
    return out


@st.composite
def connected_graphs(draw, max_n: int = 10, max_w: int = 20):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v): draw(st.integers(0, max_w)) for v, p in zip(range(1, n), parents)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, max_w)), max_size=n * 2))
    for u, v, w in extra:
        if u != v:
            edges.setdefault((min(u, v), max(u, v)), w)
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])


def instances(graphs):
    return [GtspInstance(g) for g in graphs]
