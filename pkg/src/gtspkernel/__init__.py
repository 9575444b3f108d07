"""Quadratic-size kernel for Graphical TSP parameterized by vertex cover number."""

from .cover import VertexCover, approx_cover, branching_cover, exact_cover, validate_cover
from .graph import (
    GtspInstance,
    Tour,
    WeightedGraph,
    format_instance,
    is_connected,
    metric_closure,
    min_incident_weight,
    parse_instance,
    verify_tour,
)
from .hopgraph import HopGraph, build_hop_graph, hop_penalty
from .kernel import KernelResult, decide, lift, reduce
from .matching import Matching, brute_force_matching, min_cost_max_matching
from .solvers import SolveResult, solve_exact, solve_heuristic, solve_permutation_bruteforce

__version__ = "0.1.0"
