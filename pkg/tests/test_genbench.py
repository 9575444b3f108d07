import csv
from fractions import Fraction

import pytest

from gtspkernel.cover import exact_cover
from gtspkernel.errors import InvalidSpec
from gtspkernel.genbench import CSV_COLUMNS, GenSpec, generate, run_bench, seed_range
from gtspkernel.graph import format_instance, is_connected

from _graphs import STAR3


def test_star():
    g = generate(GenSpec("star", 4, weight_range=(1, 1))).graph
    assert g == STAR3


def test_path_and_cycle_shapes():
    g = generate(GenSpec("path", 5)).graph
    assert [(u, v) for u, v, _ in g.edges()] == [(0, 1), (1, 2), (2, 3), (3, 4)]
    g = generate(GenSpec("cycle", 4)).graph
    assert all(g.degree(v) == 2 for v in range(4))


@pytest.mark.parametrize("seed", range(5))
def test_planted_cover_pins_tau(seed):
    g = generate(GenSpec("planted_cover", 30, cover_size=3, seed=seed)).graph
    assert is_connected(g)
    assert len(exact_cover(g, limit=30)) <= 3


@pytest.mark.parametrize("family", ["random_connected", "planted_cover", "star", "path", "cycle"])
def test_deterministic_and_connected(family):
    spec = GenSpec(family, 25, Fraction(1, 5), (0, 9), cover_size=4, seed=17)
    a, b = generate(spec), generate(spec)
    assert format_instance(a) == format_instance(b)
    assert is_connected(a.graph)
    other = generate(GenSpec(family, 25, Fraction(1, 5), (0, 9), cover_size=4, seed=18))
    if family in ("random_connected", "planted_cover"):
        assert format_instance(other) != format_instance(a)


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec("torus", 5),
        GenSpec("path", 0),
        GenSpec("cycle", 2),
        GenSpec("planted_cover", 5, cover_size=0),
        GenSpec("random_connected", 5, edge_probability=Fraction(3, 2)),
        GenSpec("random_connected", 5, weight_range=(5, 1)),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)


def test_planted_batch_respects_tau_bound(tmp_path):
    specs = seed_range(GenSpec("planted_cover", 30, cover_size=3), 8)
    recs = run_bench(specs, str(tmp_path / "b.csv"), cover="exact")
    for r in recs:
        assert r.tau <= 3 and r.cover_size == r.tau
        assert r.kernel_n <= r.tau**2 + r.tau <= 12
        assert r.size_bounds_ok()


def test_star_batch(tmp_path):
    recs = run_bench(seed_range(GenSpec("star", 9), 4), None, cover="exact")
    assert [r.kernel_n for r in recs] == [1, 1, 1, 1]


def test_oracle_columns(tmp_path):
    out = tmp_path / "b.csv"
    specs = seed_range(GenSpec("random_connected", 9, Fraction(2, 5)), 6)
    recs = run_bench(specs, str(out), cover="approx", oracle_limit=10)
    for r in recs:
        assert r.opt_g - r.opt_kernel - r.delta == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 7


def test_missing_values_written_as_dash(tmp_path):
    out = tmp_path / "b.csv"
    run_bench([GenSpec("planted_cover", 40, cover_size=2)], str(out), exact_tau=False, oracle_limit=5, timing=False)
    with open(out) as fh:
        row = dict(zip(*csv.reader(fh)))
    for col in ("tau", "reduce_us", "solve_direct_us", "opt_g"):
        assert row[col] == "-"


def test_bad_instance_does_not_abort_batch():
    specs = [GenSpec("path", 4), GenSpec("cycle", 2), GenSpec("path", 5)]
    recs = run_bench(specs, None)
    assert [r.error is None for r in recs] == [True, False, True]
    assert "InvalidSpec" in recs[1].error


def test_parallel_runner_keeps_order(tmp_path):
    specs = seed_range(GenSpec("planted_cover", 20, cover_size=3), 6)
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_bench(specs, str(a), timing=False)
    run_bench(specs, str(b), timing=False, workers=4)
    assert a.read_bytes() == b.read_bytes()
