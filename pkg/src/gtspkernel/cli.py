"""Command-line interface: gen, reduce, solve, lift, verify, bench.

Exit codes: 0 success, 1 domain error (invalid tour, infeasible, disconnected),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from fractions import Fraction

from .cover import exact_cover, parse_cover, validate_cover
from .errors import GtspError, ParseError
from .genbench import FAMILIES, GenSpec, generate, run_bench, seed_range
from .graph import GtspInstance, format_instance, format_tour, parse_instance, parse_tour, verify_tour
from .hopgraph import dump_hop_graph
from .kernel import format_metadata, lift, parse_metadata, reduce, resolve_kernel_path
from .solvers import solve_exact, solve_heuristic

log = logging.getLogger("gtspkernel")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _load_instance(path: str) -> GtspInstance:
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _cover_strategy(flag: str, limit: int):
    if flag == "approx":
        return "approx"
    if flag == "exact":
        return "exact"
    if flag == "exact-enum":
        return lambda g: exact_cover(g, limit)
    if flag.startswith("file:"):
        ids = parse_cover(_read(flag[5:]))
        return lambda g: validate_cover(g, ids)
    raise UsageError(f"--cover must be approx, exact or file:<path>, got {flag!r}")


def _weight_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO:HI") from None
    return lo, hi


def cmd_gen(args) -> int:
    spec = GenSpec(
        family=args.family,
        n=args.n,
        edge_probability=Fraction(args.p),
        weight_range=args.weights,
        cover_size=args.cover_size,
        seed=args.seed,
    )
    inst = generate(spec)
    if args.budget is not None:
        inst = GtspInstance(inst.graph, args.budget)
    text = format_instance(inst)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_reduce(args) -> int:
    inst = _load_instance(args.instance)
    if args.mode == "optimization":
        inst = GtspInstance(inst.graph, None)
    elif args.mode == "decision" and inst.budget is None:
        raise UsageError("--mode decision needs a budget W in the instance header")
    kr = reduce(inst, _cover_strategy(args.cover, args.limit))
    _write(args.kernel, format_instance(kr.kernel))
    ref = os.path.relpath(os.path.abspath(args.kernel), os.path.dirname(os.path.abspath(args.meta)))
    _write(args.meta, format_metadata(kr, ref))
    if args.emit_hopgraph and kr.hop_graph is not None:
        with open(args.emit_hopgraph, "w") as fh:
            dump_hop_graph(kr.hop_graph, fh)
    g, k = inst.graph, kr.kernel.graph
    print(f"{g.vertex_count} {k.vertex_count} {g.edge_count} {k.edge_count} {kr.delta}")
    log.info("cover size %d, kernel budget %s", kr.cover_size, kr.kernel_budget)
    if kr.infeasible:
        log.warning("budget %d is below delta %d: instance is infeasible", kr.budget, kr.delta)
        return 1
    return 0


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.heuristic:
        res = solve_heuristic(inst, args.seed)
    else:
        res = solve_exact(inst, args.limit)
    line = format_tour(res.tour.vertices)
    if args.output:
        _write(args.output, line)
    sys.stdout.write(line)
    print(res.weight)
    return 0


def cmd_lift(args) -> int:
    meta_text = _read(args.meta)
    kernel_path = args.kernel
    if kernel_path is None:
        # Only the kernel_file reference is needed at this point.
        ref = next(
            (ln.split(None, 1)[1].strip() for ln in meta_text.splitlines() if ln.startswith("kernel_file ")),
            None,
        )
        if ref is None:
            raise UsageError("metadata has no kernel_file entry; pass --kernel")
        kernel_path = resolve_kernel_path(args.meta, ref)
    kernel = _load_instance(kernel_path)
    kr, _ = parse_metadata(meta_text, kernel)
    tour = lift(kr, parse_tour(_read(args.tour)))
    if args.output:
        _write(args.output, format_tour(tour.vertices))
    else:
        sys.stdout.write(format_tour(tour.vertices))
    print(tour.weight)
    return 0


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    tour = verify_tour(inst.graph, parse_tour(_read(args.tour)))
    print(tour.weight)
    budget = args.budget if args.budget is not None else inst.budget
    if budget is not None and tour.weight > budget:
        print(f"tour weight {tour.weight} exceeds budget {budget}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    base = GenSpec(
        family=args.family,
        n=args.n,
        edge_probability=Fraction(args.p),
        weight_range=args.weights,
        cover_size=args.cover_size,
        seed=args.seed,
    )
    specs = []
    for n in args.sizes or [args.n]:
        specs.extend(seed_range(replace(base, n=n), args.count))
    records = run_bench(
        specs,
        args.output,
        cover=args.cover,
        exact_tau=not args.no_tau,
        oracle_limit=args.limit,
        timing=not args.no_timing,
        workers=args.workers,
    )
    failed = [r for r in records if r.error is not None]
    violations = [r for r in records if r.error is None and not r.size_bounds_ok()]
    print(f"{len(records)} records, {len(failed)} failed, {len(violations)} bound violations")
    return 1 if failed or violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtspkernel", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="detail on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def gen_flags(p):
        p.add_argument("--family", choices=FAMILIES, default="random_connected")
        p.add_argument("--n", type=int, default=10)
        p.add_argument("--p", default="3/10", help="edge probability, e.g. 0.3 or 3/10")
        p.add_argument("--weights", type=_weight_range, default=(1, 20), metavar="LO:HI")
        p.add_argument("--cover-size", type=int, default=3)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate an instance")
    gen_flags(p)
    p.add_argument("--budget", type=int, help="write a decision instance with this W")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="kernelize an instance")
    p.add_argument("instance")
    p.add_argument("--kernel", required=True, help="kernel instance output path")
    p.add_argument("--meta", required=True, help="kernel metadata output path")
    p.add_argument("--cover", default="approx", help="approx | exact | file:<path>")
    p.add_argument("--mode", choices=("decision", "optimization"))
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--emit-hopgraph", metavar="PATH")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance")
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=13)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lift", help="lift a kernel tour to the original instance")
    p.add_argument("tour")
    p.add_argument("meta")
    p.add_argument("-o", "--output")
    p.add_argument("--kernel", help="kernel instance (default: kernel_file in metadata)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="check a tour against an instance")
    p.add_argument("instance")
    p.add_argument("tour")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark kernel sizes and solve times")
    gen_flags(p)
    p.add_argument("--sizes", type=int, nargs="+", help="list of n values (overrides --n)")
    p.add_argument("--count", type=int, default=10, help="instances per size")
    p.add_argument("--cover", choices=("approx", "exact"), default="exact")
    p.add_argument("--limit", type=int, default=10, help="largest n handed to the exact oracle")
    p.add_argument("--no-tau", action="store_true", help="skip the exact tau column")
    p.add_argument("--no-timing", action="store_true", help="write '-' in timing columns")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GtspError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
