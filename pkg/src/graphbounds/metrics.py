"""Shortest-path network metrics: density, path length, efficiency, clustering.

Pair sums run over ordered pairs ``i != j`` and are divided by ``n(n-1)``.
A (sub)graph with fewer than two vertices has efficiency and clustering 0,
and unreachable pairs contribute 0 efficiency, so disconnected
neighborhoods are legal inputs everywhere.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import TooFewVertices
from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    PairDistanceSummary,
    all_pairs_distances,
    bfs_distance_array,
    distance_distribution,
)

INFINITE = math.inf


@dataclass(frozen=True)
class MetricsReport:
    n: int
    m: int
    density: float
    char_path_length: float
    diameter: float
    global_efficiency: float
    local_efficiency_open: float
    local_efficiency_closed: float
    clustering_open: float
    clustering_closed: float
    frac_pairs_le2: float
    min_degree: int

    @property
    def connected(self) -> bool:
        return not math.isinf(self.char_path_length)

    def to_dict(self) -> dict:
        return {k: _jsonable(v) for k, v in asdict(self).items()}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def csv_header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def csv_row(self) -> list[str]:
        return [format_number(getattr(self, name)) for name in self.csv_header()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.csv_header())
        writer.writerow(self.csv_row())
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class EfficiencyMatrix:
    n: int
    eff: np.ndarray

    def __post_init__(self):
        self.eff.flags.writeable = False

    def __getitem__(self, ij):
        return float(self.eff[ij])


def format_number(x) -> str:
    """Locale-free text form; infinities become ``inf``."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isnan(x):
            return ""
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


def _require(n: int, minimum: int) -> None:
    if n < minimum:
        raise TooFewVertices(f"need at least {minimum} vertices, got {n}")


def density(g: Graph) -> float:
    _require(g.n, 2)
    return 2 * g.m / (g.n * (g.n - 1))


def characteristic_path_length(d: DistanceMatrix) -> float:
    _require(d.n, 2)
    if not d.connected:
        return INFINITE
    return float(d.dist.sum()) / (d.n * (d.n - 1))


def _global_efficiency(dist: np.ndarray) -> float:
    n = dist.shape[0]
    if n < 2:
        return 0.0
    finite = dist[dist > 0]
    return float(np.sum(1.0 / finite)) / (n * (n - 1))


def global_efficiency(d: DistanceMatrix) -> float:
    return _global_efficiency(d.dist)


def efficiency_matrix(d: DistanceMatrix) -> EfficiencyMatrix:
    eff = np.zeros((d.n, d.n), dtype=np.float64)
    finite = d.dist > 0
    eff[finite] = 1.0 / d.dist[finite]
    return EfficiencyMatrix(d.n, eff)


def neighborhood_terms(g: Graph) -> dict[str, np.ndarray]:
    """Per-vertex terms of the four neighborhood averages.

    Keys ``eloc_open``, ``eloc_closed``, ``cc_open``, ``cc_closed``; each is
    an array indexed by vertex whose mean is the corresponding metric.
    """
    a = g.adjacency_matrix
    terms = {key: np.zeros(g.n) for key in ("eloc_open", "eloc_closed", "cc_open", "cc_closed")}
    for v, nbrs in enumerate(g.adjacency):
        k = len(nbrs)
        if k == 0:
            continue
        idx = np.fromiter(nbrs, dtype=np.intp, count=k)
        sub = a[np.ix_(idx, idx)]
        inner_edges = int(sub.sum()) // 2
        terms["eloc_open"][v] = _global_efficiency(bfs_distance_array(sub))
        if k >= 2:
            terms["cc_open"][v] = inner_edges / (k * (k - 1) / 2)
        closed = np.sort(np.append(idx, v))
        terms["eloc_closed"][v] = _global_efficiency(bfs_distance_array(a[np.ix_(closed, closed)]))
        terms["cc_closed"][v] = (inner_edges + k) / ((k + 1) * k / 2)
    return terms


def _mean_term(g: Graph, key: str) -> float:
    _require(g.n, 1)
    return float(np.mean(neighborhood_terms(g)[key]))


def clustering_coefficient_open(g: Graph) -> float:
    return _mean_term(g, "cc_open")


def clustering_coefficient_closed(g: Graph) -> float:
    return _mean_term(g, "cc_closed")


def local_efficiency_open(g: Graph) -> float:
    return _mean_term(g, "eloc_open")


def local_efficiency_closed(g: Graph) -> float:
    return _mean_term(g, "eloc_closed")


def analyze(g: Graph) -> tuple[MetricsReport, PairDistanceSummary]:
    """Metrics plus the pair-distance summary, sharing one distance pass."""
    _require(g.n, 2)
    d = all_pairs_distances(g)
    summary = distance_distribution(d)
    terms = neighborhood_terms(g)
    pairs = g.n * (g.n - 1)
    report = MetricsReport(
        n=g.n,
        m=g.m,
        density=density(g),
        char_path_length=characteristic_path_length(d),
        diameter=d.diameter,
        global_efficiency=global_efficiency(d),
        local_efficiency_open=float(np.mean(terms["eloc_open"])),
        local_efficiency_closed=float(np.mean(terms["eloc_closed"])),
        clustering_open=float(np.mean(terms["cc_open"])),
        clustering_closed=float(np.mean(terms["cc_closed"])),
        frac_pairs_le2=(summary.pairs_d1 + summary.pairs_d2) / pairs,
        min_degree=min(g.degrees()),
    )
    return report, summary


def compute_all(g: Graph) -> MetricsReport:
    return analyze(g)[0]


__all__ = [
    "INFINITE",
    "UNREACHABLE",
    "EfficiencyMatrix",
    "MetricsReport",
    "analyze",
    "characteristic_path_length",
    "clustering_coefficient_closed",
    "clustering_coefficient_open",
    "compute_all",
    "density",
    "efficiency_matrix",
    "format_number",
    "global_efficiency",
    "local_efficiency_closed",
    "local_efficiency_open",
    "neighborhood_terms",
]
