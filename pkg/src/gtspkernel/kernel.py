"""Kernelization of Graphical TSP parameterized by vertex cover, and lifting.

``reduce`` keeps the cover ``C`` plus the non-cover vertices matched in a
maximum-cardinality minimum-penalty matching of the hop graph.  Every other
vertex is deleted; in any tour it is visited by its cheapest loop, so its
cost ``2 * min incident weight`` moves into the offset ``delta``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cover import VertexCover, approx_cover, branching_cover, validate_cover
from .errors import (
    AnchorNotOnTour,
    Disconnected,
    GtspError,
    InvalidKernelTour,
    NotDecisionMode,
    ParseError,
)
from .graph import (
    GtspInstance,
    Tour,
    WeightedGraph,
    is_connected,
    min_incident_weight,
    verify_tour,
)
from .hopgraph import HopGraph, build_hop_graph
from .matching import Matching, min_cost_max_matching


@dataclass(frozen=True)
class KernelResult:
    kernel: GtspInstance
    delta: int
    loop_map: dict[int, tuple[int, int]]  # deleted vertex -> (anchor, loop edge weight)
    id_map: tuple[int, ...]  # kernel id -> original id
    cover: frozenset[int]
    original_n: int
    budget: int | None = None  # original W; None in optimization mode
    infeasible: bool = False
    hop_graph: HopGraph | None = field(default=None, compare=False, repr=False)
    matching: Matching | None = field(default=None, compare=False, repr=False)

    @property
    def cover_size(self) -> int:
        return len(self.cover)

    @property
    def kernel_budget(self) -> int | None:
        """``W - delta``; may be negative, in which case ``infeasible`` is set."""
        return None if self.budget is None else self.budget - self.delta


CoverStrategy = str | VertexCover | Callable[[WeightedGraph], VertexCover]


def _resolve_cover(g: WeightedGraph, strategy: CoverStrategy) -> VertexCover:
    if isinstance(strategy, VertexCover):
        return validate_cover(g, strategy.vertices) if strategy.kind == "user" else strategy
    if callable(strategy):
        return strategy(g)
    if strategy == "approx":
        return approx_cover(g)
    if strategy == "exact":
        return branching_cover(g)
    raise ValueError(f"unknown cover strategy {strategy!r}")


def reduce(inst: GtspInstance, cover_strategy: CoverStrategy = "approx") -> KernelResult:
    g = inst.graph
    n = g.vertex_count
    if n == 0:
        raise GtspError("empty graph has no tour")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    cover = _resolve_cover(g, cover_strategy)

    if n == 1:
        return KernelResult(
            kernel=inst,
            delta=0,
            loop_map={},
            id_map=(0,),
            cover=cover.vertices,
            original_n=1,
            budget=inst.budget,
        )

    h = build_hop_graph(g, cover)
    m = min_cost_max_matching(h)
    kept_y = {h.y_nodes[yi] for _, yi in m.pairs}
    keep = set(cover.vertices) | kept_y

    loop_map: dict[int, tuple[int, int]] = {}
    delta = 0
    for v in range(n):
        if v not in keep:
            anchor, w = min_incident_weight(g, v)
            loop_map[v] = (anchor, w)
            delta += 2 * w

    sub, id_map = g.induced_subgraph(keep)
    infeasible = False
    kernel_budget = None
    if inst.budget is not None:
        kernel_budget = inst.budget - delta
        if kernel_budget < 0:
            infeasible = True
            kernel_budget = None
    return KernelResult(
        kernel=GtspInstance(sub, kernel_budget),
        delta=delta,
        loop_map=loop_map,
        id_map=tuple(id_map),
        cover=cover.vertices,
        original_n=n,
        budget=inst.budget,
        infeasible=infeasible,
        hop_graph=h,
        matching=m,
    )


def lift(kr: KernelResult, kernel_tour: Tour | Sequence[int]) -> Tour:
    """Turn a tour of the kernel into a tour of the original graph.

    Each deleted vertex is visited by a loop from its anchor, inserted right
    after the anchor's first occurrence.  The weight grows by exactly ``delta``.
    """
    seq = kernel_tour.vertices if isinstance(kernel_tour, Tour) else tuple(kernel_tour)
    try:
        checked = verify_tour(kr.kernel.graph, seq)
    except GtspError as exc:
        raise InvalidKernelTour(f"{type(exc).__name__}: {exc}") from None

    original = [kr.id_map[v] for v in checked.vertices]
    loops_at: dict[int, list[int]] = {}
    for v in sorted(kr.loop_map):
        loops_at.setdefault(kr.loop_map[v][0], []).append(v)

    out: list[int] = []
    pending = dict(loops_at)
    # The last vertex repeats the first, so loops only attach to the body.
    body = original[:-1] if len(original) > 1 else original
    for v in body:
        out.append(v)
        if v in pending:
            for s in pending.pop(v):
                out.extend((s, v))
    if len(original) > 1:
        out.append(original[-1])
    if pending:
        raise AnchorNotOnTour(f"anchors {sorted(pending)} missing from the kernel tour")
    return Tour(tuple(out), checked.weight + kr.delta)


def decide(kr: KernelResult, kernel_tour_weight: int) -> bool:
    """Whether a kernel tour of this weight certifies a tour of weight <= W."""
    if kr.budget is None:
        raise NotDecisionMode("instance has no budget")
    if kr.infeasible:
        return False
    return kernel_tour_weight <= kr.kernel_budget


# -- metadata file --------------------------------------------------------------


def format_metadata(kr: KernelResult, kernel_file: str | None = None) -> str:
    lines = ["gtsp-kernel 1"]
    if kernel_file is not None:
        lines.append(f"kernel_file {kernel_file}")
    lines.append(f"original_n {kr.original_n}")
    lines.append(f"budget {'-' if kr.budget is None else kr.budget}")
    lines.append(f"delta {kr.delta}")
    lines.append(f"infeasible {int(kr.infeasible)}")
    lines.append("cover " + " ".join(str(v) for v in sorted(kr.cover)))
    lines.append(f"id_map {len(kr.id_map)}")
    lines.extend(f"{k} {o}" for k, o in enumerate(kr.id_map))
    lines.append(f"loop_map {len(kr.loop_map)}")
    lines.extend(f"{v} {a} {w}" for v, (a, w) in sorted(kr.loop_map.items()))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_metadata(text: str, kernel: GtspInstance) -> tuple[KernelResult, str | None]:
    """Inverse of ``format_metadata``; returns the result and the kernel file reference."""
    rows = [
        (no, line.split())
        for no, raw in enumerate(text.splitlines(), start=1)
        if (line := raw.split("#", 1)[0].strip())
    ]
    it = iter(rows)
    fields: dict[str, list[str]] = {}
    id_map: list[int] = []
    loop_map: dict[int, tuple[int, int]] = {}

    def ints(no: int, toks: list[str]) -> list[int]:
        try:
            return [int(t) for t in toks]
        except ValueError:
            raise ParseError("expected integers", no) from None

    try:
        no, toks = next(it)
    except StopIteration:
        raise ParseError("empty metadata") from None
    if toks != ["gtsp-kernel", "1"]:
        raise ParseError("expected 'gtsp-kernel 1'", no)
    for no, toks in it:
        key = toks[0]
        if key == "end":
            break
        if key == "id_map":
            (count,) = ints(no, toks[1:2])
            for _ in range(count):
                no, row = next(it, (no, []))
                k, o = ints(no, row) if len(row) == 2 else (None, None)
                if k != len(id_map):
                    raise ParseError("bad id_map row", no)
                id_map.append(o)
        elif key == "loop_map":
            (count,) = ints(no, toks[1:2])
            for _ in range(count):
                no, row = next(it, (no, []))
                if len(row) != 3:
                    raise ParseError("bad loop_map row", no)
                v, a, w = ints(no, row)
                loop_map[v] = (a, w)
        else:
            fields[key] = toks[1:]
    else:
        raise ParseError("missing 'end'")

    try:
        budget_tok = fields["budget"][0]
        budget = None if budget_tok == "-" else int(budget_tok)
        kr = KernelResult(
            kernel=kernel,
            delta=int(fields["delta"][0]),
            loop_map=loop_map,
            id_map=tuple(id_map),
            cover=frozenset(int(t) for t in fields["cover"]),
            original_n=int(fields["original_n"][0]),
            budget=budget,
            infeasible=bool(int(fields["infeasible"][0])),
        )
    except (KeyError, IndexError, ValueError):
        raise ParseError("missing or malformed metadata field") from None
    if len(kr.id_map) != kernel.graph.vertex_count:
        raise ParseError("id_map size does not match the kernel graph")
    if kr.delta != 2 * sum(w for _, w in loop_map.values()):
        raise ParseError("delta disagrees with loop_map weights")
    ref = fields.get("kernel_file")
    return kr, (" ".join(ref) if ref else None)


def resolve_kernel_path(meta_path: str, ref: str) -> str:
    if os.path.isabs(ref):
        return ref
    return os.path.join(os.path.dirname(os.path.abspath(meta_path)), ref)
