import random

import pytest

from gtspkernel.errors import TooLarge
from gtspkernel.hopgraph import HopGraph
from gtspkernel.matching import (
    brute_force_matching,
    check_matching,
    matching_cost_profile,
    min_cost_max_matching,
)


def hop(nx, ny, edges):
    return HopGraph(tuple((i, i + 1) for i in range(nx)), tuple(range(ny)), tuple(edges))


EMPTY = hop(0, 0, [])
TWO_TO_ONE = hop(2, 1, [(0, 0, 5), (1, 0, 3)])
SQUARE = hop(2, 2, [(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 0)])


@pytest.mark.parametrize("solve", [min_cost_max_matching, brute_force_matching])
def test_examples(solve):
    m = solve(EMPTY)
    assert (m.pairs, m.cardinality, m.total_cost) == (frozenset(), 0, 0)
    m = solve(TWO_TO_ONE)
    assert m.pairs == {(1, 0)} and m.total_cost == 3
    m = solve(SQUARE)
    assert m.pairs == {(0, 0), (1, 1)} and (m.cardinality, m.total_cost) == (2, 1)


def test_oracle_small_cases():
    m = brute_force_matching(hop(1, 1, [(0, 0, 4)]))
    assert m.pairs == {(0, 0)} and m.total_cost == 4
    star = hop(5, 1, [(i, 0, c) for i, c in enumerate([7, 2, 9, 2, 5])])
    m = brute_force_matching(star)
    assert (m.cardinality, m.total_cost) == (1, 2)
    with pytest.raises(TooLarge):
        brute_force_matching(hop(5, 5, [(x, y, 0) for x in range(5) for y in range(5)]))


def test_max_cardinality_beats_cost():
    # Cheapest single edge (0,0) blocks the perfect matching; cardinality wins.
    h = hop(2, 2, [(0, 0, 0), (0, 1, 10), (1, 0, 10)])
    m = min_cost_max_matching(h)
    assert (m.cardinality, m.total_cost) == (2, 20)


def random_hop(rng):
    nx, ny = rng.randint(0, 7), rng.randint(0, 7)
    pairs = [(x, y) for x in range(nx) for y in range(ny)]
    rng.shuffle(pairs)
    k = rng.randint(0, min(22, len(pairs)))
    top = rng.choice([0, 1, 5, 40])
    return hop(nx, ny, [(x, y, rng.randint(0, top)) for x, y in pairs[:k]])


def test_intermediate_matchings_are_extreme():
    rng = random.Random(3)
    for _ in range(200):
        h = random_hop(rng)
        profile = matching_cost_profile(h)
        seen = []

        def trace(m):
            check_matching(h, m)
            assert m.total_cost == profile[m.cardinality][0]
            seen.append(m.cardinality)

        final = min_cost_max_matching(h, trace)
        assert seen == list(range(1, final.cardinality + 1))


def test_deterministic():
    rng = random.Random(9)
    for _ in range(50):
        h = random_hop(rng)
        assert min_cost_max_matching(h) == min_cost_max_matching(h)


def test_rejects_negative_penalty():
    with pytest.raises(ValueError):
        min_cost_max_matching(hop(1, 1, [(0, 0, -1)]))
