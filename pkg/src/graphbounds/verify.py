"""Exhaustive and randomized soundness suites for the bound checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import CHECK_NAMES, TOLERANCE, evaluate
from .generators import child_seed, erdos_renyi, make_rng
from .graph import Graph
from .ingest import serialize_edge_list
from .metrics import analyze
from .parallel import pmap

EXHAUSTIVE_MAX_N = 7
ER_PROBABILITIES = tuple(round(0.05 * i, 2) for i in range(1, 20))


@dataclass
class SuiteResult:
    name: str
    graphs: int = 0
    closed_equality_graphs: int = 0
    diam_le2_graphs: int = 0
    max_closed_deviation: float = 0.0
    max_tight_deviation: float = 0.0
    max_sandwich_excess: float = -math.inf
    worst_slack: dict[str, float] = field(default_factory=lambda: dict.fromkeys(CHECK_NAMES, math.inf))
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "SuiteResult") -> None:
        self.graphs += other.graphs
        self.closed_equality_graphs += other.closed_equality_graphs
        self.diam_le2_graphs += other.diam_le2_graphs
        self.max_closed_deviation = max(self.max_closed_deviation, other.max_closed_deviation)
        self.max_tight_deviation = max(self.max_tight_deviation, other.max_tight_deviation)
        self.max_sandwich_excess = max(self.max_sandwich_excess, other.max_sandwich_excess)
        for name, slack in other.worst_slack.items():
            self.worst_slack[name] = min(self.worst_slack[name], slack)
        self.violations += other.violations

    def to_dict(self, one_based: bool = False) -> dict:
        violations = []
        for v in self.violations:
            v = dict(v)
            if one_based:
                head, *rest = v["edge_list"].splitlines()
                v["edge_list"] = "\n".join(
                    [head] + [" ".join(str(int(x) + 1) for x in ln.split()) for ln in rest]
                ) + "\n"
            violations.append(v)
        return {
            "suite": self.name,
            "graphs": self.graphs,
            "closed_equality_graphs": self.closed_equality_graphs,
            "diam_le2_graphs": self.diam_le2_graphs,
            "max_closed_deviation": self.max_closed_deviation,
            "max_tight_deviation": self.max_tight_deviation,
            "max_sandwich_excess": _finite_or_none(self.max_sandwich_excess),
            "worst_slack": {k: _finite_or_none(v) for k, v in self.worst_slack.items()},
            "violation_count": len(self.violations),
            "violations": violations,
        }


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def check_graph(g: Graph, result: SuiteResult, tol: float = TOLERANCE, label: str = "") -> None:
    """Evaluate every bound on ``g`` and fold the outcome into ``result``."""
    report, summary = analyze(g)
    bounds = evaluate(report, summary, tol)
    result.graphs += 1
    closed = bounds.checks[0]
    if closed.applicable:
        result.closed_equality_graphs += 1
        result.max_closed_deviation = max(result.max_closed_deviation, abs(closed.slack))
    if bounds.tightness_diam_le2:
        result.diam_le2_graphs += 1
        for c in bounds.checks[2:]:
            result.max_tight_deviation = max(result.max_tight_deviation, abs(c.slack))
    for c in bounds.checks:
        if c.applicable:
            result.worst_slack[c.name] = min(result.worst_slack[c.name], c.slack)
    # Positive excess means one side of 0 <= gap <= gap bound fails.
    excess = max(-bounds.gap_lemma6, bounds.gap_lemma6 - bounds.gap_bound_lemma6)
    result.max_sandwich_excess = max(result.max_sandwich_excess, excess)
    problems = bounds.problems(tol)
    if problems:
        result.violations.append(
            {"graph": label, "problems": problems, "edge_list": serialize_edge_list(g)}
        )


def graph_from_mask(n: int, mask: int, pairs=None) -> Graph:
    """The labeled graph on ``n`` vertices whose edge set is bit-encoded in ``mask``.

    Bit ``b`` selects the ``b``-th pair of ``itertools.combinations(range(n), 2)``.
    """
    pairs = pairs if pairs is not None else list(itertools.combinations(range(n), 2))
    a = np.zeros((n, n), dtype=bool)
    for b, (u, v) in enumerate(pairs):
        if mask >> b & 1:
            a[u, v] = a[v, u] = True
    return Graph.from_adjacency_matrix(a)


def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield graph_from_mask(n, mask, pairs)


def _exhaustive_shard(job) -> SuiteResult:
    n, start, stop, tol = job
    pairs = list(itertools.combinations(range(n), 2))
    result = SuiteResult(f"exhaustive-n{n}")
    for mask in range(start, stop):
        check_graph(graph_from_mask(n, mask, pairs), result, tol, label=f"n={n} mask={mask}")
    return result


def exhaustive_suite(
    max_n: int = 6, min_n: int = 2, tol: float = TOLERANCE, workers: int | None = None
) -> SuiteResult:
    """Check every labeled graph with ``min_n..max_n`` vertices."""
    if max_n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive mode is capped at n <= {EXHAUSTIVE_MAX_N}")
    if min_n < 2:
        raise ValueError("bound checks need at least 2 vertices")
    shard = 4096
    jobs = []
    for n in range(min_n, max_n + 1):
        total = 1 << (n * (n - 1) // 2)
        jobs += [(n, s, min(s + shard, total), tol) for s in range(0, total, shard)]
    result = SuiteResult(f"exhaustive n={min_n}..{max_n}")
    for part in pmap(_exhaustive_shard, jobs, workers=workers):
        result.merge(part)
    return result


def random_graph_spec(seed: int, index: int, n_range=(2, 60), probabilities=ER_PROBABILITIES):
    """``(n, p, er_seed)`` of the ``index``-th graph of a randomized suite."""
    rng = make_rng(child_seed(seed, index))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    p = float(probabilities[int(rng.integers(len(probabilities)))])
    return n, p, child_seed(seed, index, 1)


def _random_shard(job) -> SuiteResult:
    seed, start, stop, tol = job
    result = SuiteResult("random")
    for i in range(start, stop):
        n, p, er_seed = random_graph_spec(seed, i)
        check_graph(erdos_renyi(n, p, er_seed), result, tol, label=f"er n={n} p={p} seed={er_seed}")
    return result


def random_suite(
    count: int = 10_000, seed: int = 0, tol: float = TOLERANCE, workers: int | None = None
) -> SuiteResult:
    """Check ``count`` seeded Erdos-Renyi graphs, ``n`` in [2, 60], ``p`` on a 0.05 grid."""
    shard = 250
    jobs = [(seed, s, min(s + shard, count), tol) for s in range(0, count, shard)]
    result = SuiteResult(f"random count={count} seed={seed}")
    for part in pmap(_random_shard, jobs, workers=workers):
        result.merge(part)
    return result
