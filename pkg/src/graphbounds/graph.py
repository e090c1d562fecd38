"""Undirected simple graphs, neighborhood subgraphs and all-pairs distances.

Vertices are the integers ``0 .. n-1``. Distances are hop counts; a pair
with no connecting path is stored as :data:`UNREACHABLE` rather than as a
large number, so nothing downstream can average it by accident.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, SelfLoop, SizeExceeded

UNREACHABLE = -1
ORACLE_MAX_N = 256


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph stored as sorted neighbor tuples."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must have one entry per vertex")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise IndexOutOfRange(f"neighbor {u} of vertex {v} outside [0, {self.n})")
                if u == v:
                    raise SelfLoop(f"self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
            if any(a >= b for a, b in zip(nbrs, nbrs[1:])):
                raise ValueError(f"neighbors of vertex {v} must be sorted and unique")

    @classmethod
    def from_adjacency_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            v = int(np.flatnonzero(a.diagonal())[0])
            raise SelfLoop(f"self-loop at vertex {v}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        adjacency = tuple(tuple(int(u) for u in np.flatnonzero(row)) for row in a)
        return cls(a.shape[0], adjacency)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for v, nbrs in enumerate(self.adjacency):
            a[v, list(nbrs)] = True
        a.flags.writeable = False
        return a

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in ascending order."""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        adjacency = tuple(
            tuple(index[u] for u in self.adjacency[v] if u in index) for v in keep
        )
        return Graph(len(keep), adjacency)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} outside [0, {self.n})")


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from vertex pairs, collapsing duplicate edges.

    >>> from_edge_list(3, [(0, 1), (1, 2)]).m
    2
    """
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        for x in (u, v):
            if not 0 <= x < n:
                raise IndexOutOfRange(f"endpoint {x} outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def open_neighborhood_subgraph(g: Graph, v: int) -> Graph:
    """Subgraph induced by the neighbors of ``v`` (``v`` itself excluded)."""
    g._check_vertex(v)
    return g.induced_subgraph(g.adjacency[v])


def closed_neighborhood_subgraph(g: Graph, v: int) -> Graph:
    """Subgraph induced by ``v`` together with its neighbors."""
    g._check_vertex(v)
    return g.induced_subgraph((v, *g.adjacency[v]))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances; unreachable pairs hold :data:`UNREACHABLE`."""

    n: int
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dist.shape != (self.n, self.n):
            raise ValueError("distance array shape does not match n")
        self.dist.flags.writeable = False

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.n, self.dist.tobytes()))

    def __getitem__(self, ij):
        return int(self.dist[ij])

    @property
    def connected(self) -> bool:
        return not (self.dist == UNREACHABLE).any()

    @property
    def diameter(self) -> float:
        """Largest distance, or ``inf`` for a disconnected graph."""
        if not self.connected:
            return float("inf")
        return int(self.dist.max()) if self.n else 0

    def eccentricity(self, v: int) -> int:
        """Largest finite distance from ``v``."""
        return int(self.dist[v].max()) if self.n else 0


def bfs_distance_array(adj: np.ndarray) -> np.ndarray:
    """Level-synchronous BFS from every source at once.

    Row ``i`` of the result is the BFS distance layer of source ``i``; each
    round expands every frontier by one hop with a single matrix product.
    """
    n = adj.shape[0]
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    if n == 0:
        return dist
    np.fill_diagonal(dist, 0)
    step = adj.astype(np.float64)
    reached = np.eye(n, dtype=bool)
    frontier = reached
    level = 0
    while True:
        level += 1
        nxt = (frontier @ step > 0) & ~reached
        if not nxt.any():
            return dist
        dist[nxt] = level
        reached = reached | nxt
        frontier = nxt.astype(np.float64)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(g.n, bfs_distance_array(g.adjacency_matrix))


def oracle_distances(g: Graph, max_n: int = ORACLE_MAX_N) -> DistanceMatrix:
    """Floyd-Warshall distances, kept independent of the BFS path for testing."""
    if g.n > max_n:
        raise SizeExceeded(f"oracle limited to n <= {max_n}, got {g.n}")
    d = np.where(g.adjacency_matrix, 1.0, np.inf)
    np.fill_diagonal(d, 0.0)
    for k in range(g.n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    out = np.where(np.isinf(d), UNREACHABLE, d).astype(np.int64)
    return DistanceMatrix(g.n, out)


@dataclass(frozen=True)
class PairDistanceSummary:
    """Ordered-pair distance counts.

    ``pairs_d1`` is twice the edge count; ``pairs_gt2_finite + pairs_inf`` is
    the number of ordered pairs farther apart than two hops, and
    ``recip_mass_gt2`` sums ``1/d`` over the finite ones among them.
    """

    n: int
    pairs_d1: int
    pairs_d2: int
    pairs_gt2_finite: int
    pairs_inf: int
    recip_mass_gt2: float
    histogram: dict

    @property
    def ordered_pairs(self) -> int:
        return self.n * (self.n - 1)

    @property
    def pairs_gt2(self) -> int:
        return self.pairs_gt2_finite + self.pairs_inf

    def fractions(self) -> dict:
        """The distance distribution as fractions of all ordered pairs."""
        total = self.ordered_pairs
        return {d: c / total for d, c in self.histogram.items()} if total else {}


def distance_distribution(d: DistanceMatrix) -> PairDistanceSummary:
    off = d.dist[~np.eye(d.n, dtype=bool)]
    values, counts = np.unique(off, return_counts=True)
    histogram = {}
    for value, count in zip(values.tolist(), counts.tolist()):
        key = float("inf") if value == UNREACHABLE else value
        histogram[key] = count
    far = np.sort(off[off > 2])
    return PairDistanceSummary(
        n=d.n,
        pairs_d1=histogram.get(1, 0),
        pairs_d2=histogram.get(2, 0),
        pairs_gt2_finite=int(far.size),
        pairs_inf=histogram.get(float("inf"), 0),
        recip_mass_gt2=float(np.sum(1.0 / far)) if far.size else 0.0,
        histogram=histogram,
    )
