"""Instance generators and the kernel-size benchmark harness."""

from __future__ import annotations

import csv
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .cover import branching_cover
from .errors import GtspError, InvalidSpec
from .graph import GtspInstance, WeightedGraph, format_instance
from .kernel import reduce
from .solvers import solve_exact

log = logging.getLogger(__name__)

FAMILIES = ("random_connected", "planted_cover", "star", "path", "cycle")

CSV_COLUMNS = (
    "id", "family", "seed", "n", "m", "cover_size", "tau", "kernel_n", "kernel_m",
    "delta", "reduce_us", "solve_direct_us", "solve_kernel_us", "opt_g", "opt_kernel",
)
TIMING_COLUMNS = ("reduce_us", "solve_direct_us", "solve_kernel_us")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    edge_probability: Fraction = Fraction(3, 10)
    weight_range: tuple[int, int] = (1, 20)
    cover_size: int = 0
    seed: int = 0

    @property
    def instance_id(self) -> str:
        extra = f"-k{self.cover_size}" if self.family == "planted_cover" else ""
        return f"{self.family}-n{self.n}{extra}-s{self.seed}"


def _check(spec: GenSpec) -> None:
    if spec.family not in FAMILIES:
        raise InvalidSpec(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise InvalidSpec("n must be at least 1")
    if not 0 <= spec.edge_probability <= 1:
        raise InvalidSpec("edge_probability must lie in [0, 1]")
    lo, hi = spec.weight_range
    if not 0 <= lo <= hi:
        raise InvalidSpec("weight_range must satisfy 0 <= lo <= hi")
    if spec.family == "planted_cover" and not (1 <= spec.cover_size <= spec.n):
        raise InvalidSpec("planted_cover needs 1 <= cover_size <= n")
    if spec.family == "cycle" and spec.n < 3:
        raise InvalidSpec("a cycle needs at least 3 vertices")


def _coin(rng: random.Random, p: Fraction) -> bool:
    # Exact rational coin flip.
    return rng.randrange(p.denominator) < p.numerator


def generate(spec: GenSpec) -> GtspInstance:
    """Connected simple instance in optimization mode, deterministic in ``spec``."""
    _check(spec)
    rng = random.Random(f"{spec.family}:{spec.n}:{spec.cover_size}:{spec.seed}")
    lo, hi = spec.weight_range
    p = Fraction(spec.edge_probability)
    n = spec.n
    pairs: list[tuple[int, int]] = []

    if spec.family == "star":
        pairs = [(0, v) for v in range(1, n)]
    elif spec.family == "path":
        pairs = [(v, v + 1) for v in range(n - 1)]
    elif spec.family == "cycle":
        pairs = [(v, v + 1) for v in range(n - 1)] + [(0, n - 1)]
    elif spec.family == "random_connected":
        chosen = set()
        for v in range(1, n):
            chosen.add((rng.randrange(v), v))
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in chosen and _coin(rng, p):
                    chosen.add((u, v))
        pairs = sorted(chosen)
    else:  # planted_cover
        perm = list(range(n))
        rng.shuffle(perm)
        cover = perm[: spec.cover_size]
        rest = perm[spec.cover_size :]
        chosen = set()

        def add(a: int, b: int) -> None:
            chosen.add((min(a, b), max(a, b)))

        # Spanning tree on the cover, then every other vertex hangs off it.
        for i in range(1, len(cover)):
            add(cover[rng.randrange(i)], cover[i])
        for s in rest:
            add(s, cover[rng.randrange(len(cover))])
        for i, c in enumerate(cover):
            for d in cover[i + 1 :]:
                if _coin(rng, p):
                    add(c, d)
            for s in rest:
                if _coin(rng, p):
                    add(c, s)
        pairs = sorted(chosen)

    edges = [(u, v, rng.randint(lo, hi)) for u, v in pairs]
    return GtspInstance(WeightedGraph(n, edges))


@dataclass(frozen=True)
class BenchRecord:
    id: str
    family: str
    seed: int
    n: int
    m: int
    cover_size: int
    tau: int | None
    kernel_n: int
    kernel_m: int
    delta: int
    reduce_us: int | None
    solve_direct_us: int | None
    solve_kernel_us: int | None
    opt_g: int | None
    opt_kernel: int | None
    error: str | None = None

    def size_bounds_ok(self) -> bool:
        if self.n > 1 and self.kernel_n > self.cover_size**2:
            return False
        # The tau-bounds only apply to kernels built from a minimum cover.
        if self.tau is not None and self.cover_size == self.tau:
            t = self.tau
            return self.kernel_n <= t * t + t and self.kernel_m <= 2 * t**3 - t
        return True

    def row(self, timing: bool = True) -> list[str]:
        out = []
        for col in CSV_COLUMNS:
            val = getattr(self, col)
            if col in TIMING_COLUMNS and not timing:
                val = None
            out.append("-" if val is None else str(val))
        return out


def _us(t0: int) -> int:
    return (time.perf_counter_ns() - t0) // 1000


def bench_one(
    spec: GenSpec,
    cover: str = "approx",
    exact_tau: bool = True,
    oracle_limit: int = 10,
) -> BenchRecord:
    inst = generate(spec)
    g = inst.graph
    t0 = time.perf_counter_ns()
    kr = reduce(inst, cover)
    reduce_us = _us(t0)
    tau = len(branching_cover(g)) if exact_tau else None

    opt_g = opt_k = direct_us = kernel_us = None
    if g.vertex_count <= oracle_limit:
        t0 = time.perf_counter_ns()
        opt_g = solve_exact(inst, limit=oracle_limit).weight
        direct_us = _us(t0)
    if kr.kernel.graph.vertex_count <= oracle_limit:
        t0 = time.perf_counter_ns()
        opt_k = solve_exact(kr.kernel, limit=oracle_limit).weight
        kernel_us = _us(t0)

    rec = BenchRecord(
        id=spec.instance_id,
        family=spec.family,
        seed=spec.seed,
        n=g.vertex_count,
        m=g.edge_count,
        cover_size=kr.cover_size,
        tau=tau,
        kernel_n=kr.kernel.graph.vertex_count,
        kernel_m=kr.kernel.graph.edge_count,
        delta=kr.delta,
        reduce_us=reduce_us,
        solve_direct_us=direct_us,
        solve_kernel_us=kernel_us,
        opt_g=opt_g,
        opt_kernel=opt_k,
    )
    if not rec.size_bounds_ok():
        log.error("%s violates the kernel size bounds", rec.id)
    if opt_g is not None and opt_k is not None and opt_g != opt_k + kr.delta:
        log.error("%s: OPT(G) != OPT(G') + delta", rec.id)
    return rec


def _failed(spec: GenSpec, exc: Exception) -> BenchRecord:
    return BenchRecord(
        spec.instance_id, spec.family, spec.seed, spec.n, 0, 0, None, 0, 0, 0,
        None, None, None, None, None, error=f"{type(exc).__name__}: {exc}",
    )


def run_bench(
    specs: list[GenSpec],
    output: str | None = None,
    cover: str = "approx",
    exact_tau: bool = True,
    oracle_limit: int = 10,
    timing: bool = True,
    workers: int = 1,
) -> list[BenchRecord]:
    """Benchmark every spec; records come back (and are written) in spec order."""

    def work(spec: GenSpec) -> BenchRecord:
        try:
            return bench_one(spec, cover, exact_tau, oracle_limit)
        except (GtspError, OSError) as exc:
            log.error("%s failed: %s", spec.instance_id, exc)
            return _failed(spec, exc)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(work, specs))
    else:
        records = [work(s) for s in specs]

    if output is not None:
        with open(output, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for rec in records:
                if rec.error is None:
                    writer.writerow(rec.row(timing))
    return records


def seed_range(spec: GenSpec, count: int) -> list[GenSpec]:
    return [replace(spec, seed=spec.seed + i) for i in range(count)]


def write_instance(spec: GenSpec, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(generate(spec)))
