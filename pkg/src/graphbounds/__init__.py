"""Shortest-path graph metrics and machine checks of the bounds relating them."""

from .bounds import BoundCheck, BoundsReport, evaluate, evaluate_all
from .errors import GraphBoundsError
from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    PairDistanceSummary,
    all_pairs_distances,
    closed_neighborhood_subgraph,
    distance_distribution,
    from_edge_list,
    open_neighborhood_subgraph,
    oracle_distances,
)
from .metrics import MetricsReport, analyze, compute_all

__version__ = "0.1.0"

__all__ = [
    "UNREACHABLE",
    "BoundCheck",
    "BoundsReport",
    "DistanceMatrix",
    "Graph",
    "GraphBoundsError",
    "MetricsReport",
    "PairDistanceSummary",
    "all_pairs_distances",
    "analyze",
    "closed_neighborhood_subgraph",
    "compute_all",
    "distance_distribution",
    "evaluate",
    "evaluate_all",
    "from_edge_list",
    "open_neighborhood_subgraph",
    "oracle_distances",
]
