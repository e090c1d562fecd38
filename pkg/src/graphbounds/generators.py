"""Seeded random graphs: Erdos-Renyi and a stub-matching LFR-style benchmark.

All randomness comes from numpy's PCG64 bit generator seeded explicitly, so
every generator is a pure function of its arguments. Sweep cells get child
seeds from :func:`child_seed`, which makes any single cell re-runnable on
its own.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .bounds import CHECK_NAMES, BoundsReport, evaluate
from .errors import Infeasible, InvalidParameters, InvalidProbability, WiringFailure
from .graph import Graph, from_edge_list
from .metrics import MetricsReport, analyze, format_number
from .parallel import pmap

RNG_ALGORITHM = "numpy.random.PCG64"


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def child_seed(master_seed: int, *keys: int) -> int:
    """Mix a master seed with integer keys into a 64-bit child seed.

    Uses ``numpy.random.SeedSequence(entropy=master_seed,
    spawn_key=keys)`` and takes its first 64-bit output word.
    """
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """G(n, p): each unordered pair ``(u, v)``, ``u < v``, kept with probability ``p``.

    One uniform draw per pair in lexicographic order.
    """
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise InvalidProbability(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise InvalidParameters(f"vertex count must be nonnegative, got {n}")
    rng = make_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return from_edge_list(n, zip(iu[keep].tolist(), ju[keep].tolist()))


# -- truncated power laws -----------------------------------------------------
#
# A value is drawn from the continuous density x**-tau on [lo, hi) and
# floored, giving an integer law on [floor(lo), hi - 1] whose mass decays as
# a power of k. Unlike an integer lower cutoff, the real cutoff ``lo`` moves
# the mean continuously, so any target between the extremes is reachable.


def _power_law_cdf(x, lo, hi, tau):
    x = np.clip(x, lo, hi)
    if tau == 1.0:
        return np.log(x / lo) / math.log(hi / lo)
    e = 1.0 - tau
    return np.expm1(e * np.log(x / lo)) / math.expm1(e * math.log(hi / lo))


def _power_law_inverse(u, lo, hi, tau):
    if tau == 1.0:
        return lo * np.exp(u * math.log(hi / lo))
    e = 1.0 - tau
    return lo * np.exp(np.log1p(u * math.expm1(e * math.log(hi / lo))) / e)


def _sample_floored(rng, size, lo, hi, tau):
    if hi <= lo:
        return np.full(size, int(math.floor(lo)), dtype=np.int64)
    x = _power_law_inverse(rng.random(size), lo, hi, tau)
    return np.minimum(np.floor(x).astype(np.int64), int(math.ceil(hi)) - 1)


def _floored_mean(lo, hi, tau):
    if hi <= lo:
        return math.floor(lo)
    ks = np.arange(math.floor(lo), math.ceil(hi))
    mass = _power_law_cdf(ks + 1.0, lo, hi, tau) - _power_law_cdf(ks.astype(float), lo, hi, tau)
    return float(np.dot(ks, mass))


def _solve_lower_cutoff(target, k_max, tau):
    """Real lower cutoff whose floored law on ``[lo, k_max+1)`` has mean ``target``."""
    hi = k_max + 1.0
    lo_min, lo_max = 1.0, float(k_max)
    if target <= _floored_mean(lo_min, hi, tau):
        return lo_min
    if target >= _floored_mean(lo_max, hi, tau):
        return lo_max
    for _ in range(80):
        mid = 0.5 * (lo_min + lo_max)
        if _floored_mean(mid, hi, tau) < target:
            lo_min = mid
        else:
            lo_max = mid
    return 0.5 * (lo_min + lo_max)


def sample_power_law_degrees(
    n: int,
    tau_degree: float,
    avg_degree: float,
    max_degree: int,
    seed,
    attempts: int = 50,
) -> list[int]:
    """Power-law degree sequence with an even sum and mean near ``avg_degree``.

    The lower cutoff is searched so the expected mean hits the target; the
    sample is redrawn until its realized mean is within 10%. An odd total
    is fixed by decrementing the largest entry.
    """
    if n < 1 or tau_degree <= 0 or not 1 <= avg_degree <= max_degree:
        raise InvalidParameters(
            f"need n >= 1, tau > 0, 1 <= avg_degree <= max_degree; got "
            f"n={n}, tau={tau_degree}, avg={avg_degree}, max={max_degree}"
        )
    rng = make_rng(seed)
    lo = _solve_lower_cutoff(avg_degree, max_degree, tau_degree)
    if abs(_floored_mean(lo, max_degree + 1.0, tau_degree) - avg_degree) > 0.1 * avg_degree:
        raise Infeasible(f"no lower cutoff reaches mean degree {avg_degree}")
    for _ in range(attempts):
        degrees = _sample_floored(rng, n, lo, max_degree + 1.0, tau_degree)
        if degrees.sum() % 2:
            degrees[int(np.argmax(degrees))] -= 1
        if abs(degrees.mean() - avg_degree) <= 0.1 * avg_degree:
            return degrees.tolist()
    raise Infeasible(f"could not realize mean degree {avg_degree} within 10% in {attempts} draws")


def sample_community_sizes(
    n: int,
    tau_community: float,
    min_community: int,
    max_community: int,
    seed,
) -> list[int]:
    """Power-law community sizes summing to exactly ``n``.

    Sizes are drawn until the total reaches ``n``. The overshooting draw is
    trimmed to the remainder; if that remainder is below ``min_community`` it
    is added to the earlier communities, filling each up to ``max_community``.
    """
    if min_community > n:
        raise Infeasible(f"min_community {min_community} exceeds n {n}")
    if not 1 <= min_community <= max_community or tau_community <= 0:
        raise InvalidParameters("need 1 <= min_community <= max_community and tau > 0")
    max_community = min(max_community, n)
    rng = make_rng(seed)
    for _ in range(100):
        sizes: list[int] = []
        total = 0
        while total < n:
            s = int(_sample_floored(rng, 1, float(min_community), max_community + 1.0, tau_community)[0])
            s = min(s, n - total)
            sizes.append(s)
            total += s
        if sizes[-1] < min_community:
            rest = sizes.pop()
            for i in range(len(sizes)):
                room = max_community - sizes[i]
                take = min(room, rest)
                sizes[i] += take
                rest -= take
            if rest or not sizes:
                continue
        return sizes
    raise Infeasible(f"cannot split {n} vertices into communities of size {min_community}..{max_community}")


# -- LFR-style benchmark ------------------------------------------------------


@dataclass(frozen=True)
class LfrParams:
    n: int = 128
    tau_degree: float = 2.0
    tau_community: float = 1.0
    avg_degree: float = 16.0
    max_degree: int | None = None
    mu: float = 0.2
    min_community: int | None = None
    max_community: int | None = None
    seed: int = 0
    max_attempts: int = 20
    swap_budget: int = 1000

    @property
    def resolved_max_degree(self) -> int:
        return self.max_degree if self.max_degree is not None else self.n // 2

    def validate(self) -> None:
        k_max = self.resolved_max_degree
        if not 0 < self.mu < 1:
            raise InvalidParameters(f"mu must lie in (0, 1), got {self.mu}")
        if not 1 <= self.avg_degree <= k_max < self.n:
            raise InvalidParameters(
                f"need 1 <= avg_degree <= max_degree < n; got {self.avg_degree}, {k_max}, {self.n}"
            )
        if self.tau_degree <= 0 or self.tau_community <= 0:
            raise InvalidParameters("power-law exponents must be positive")
        if self.max_attempts < 1 or self.swap_budget < 0:
            raise InvalidParameters("max_attempts must be >= 1 and swap_budget >= 0")
        for bound in (self.min_community, self.max_community):
            if bound is not None and not 1 <= bound <= self.n:
                raise InvalidParameters(f"community size bound {bound} outside [1, n]")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class LfrGraph:
    """Generated graph together with its planted communities."""

    graph: Graph
    membership: list[int]
    communities: list[list[int]] = field(default_factory=list)

    def intra_fraction(self) -> float:
        """Mean over non-isolated vertices of the share of edges kept in-community."""
        fracs = []
        for v, nbrs in enumerate(self.graph.adjacency):
            if nbrs:
                inside = sum(self.membership[u] == self.membership[v] for u in nbrs)
                fracs.append(inside / len(nbrs))
        return float(np.mean(fracs)) if fracs else 0.0


def _split_degrees(rng, degrees, mu):
    """Intra-community share of each degree, rounded so the mean share is ``1-mu``.

    Rounding ``(1-mu)k`` up would bias low-degree vertices far above
    ``1-mu``, and independent coin flips leave the vertex-averaged share
    noisy at small ``n``. Instead vertices are visited in random order and
    rounded up exactly while doing so keeps the running sum of shares
    ``k_in / k`` closest to its target.
    """
    k = np.asarray(degrees, dtype=np.int64)
    target = (1.0 - mu) * k
    k_in = np.floor(target).astype(np.int64)
    positive = k > 0
    deficit = float(np.sum((target[positive] - k_in[positive]) / k[positive]))
    for v in rng.permutation(len(k)):
        if k[v] == 0 or target[v] == k_in[v]:
            continue
        step = 1.0 / k[v]
        if abs(deficit - step) < abs(deficit):
            k_in[v] += 1
            deficit -= step
    return k_in


def _assign_communities(rng, k_in, sizes, rounds=50):
    n = len(k_in)
    order = sorted(range(n), key=lambda v: (-k_in[v], v))
    for _ in range(rounds):
        free = list(sizes)
        membership = [-1] * n
        ok = True
        for v in order:
            eligible = [c for c, s in enumerate(sizes) if s - 1 >= k_in[v] and free[c] > 0]
            if not eligible:
                ok = False
                break
            weights = np.array([free[c] for c in eligible], dtype=float)
            c = eligible[int(rng.choice(len(eligible), p=weights / weights.sum()))]
            membership[v] = c
            free[c] -= 1
        if ok:
            return membership
        rng.shuffle(order)
        order.sort(key=lambda v: -k_in[v])
    raise Infeasible("could not place every vertex in a community large enough for its intra-degree")


def _fix_parity_and_balance(rng, k_in, k_out, members, sizes):
    """Make every community's intra stub total even and inter stubs matchable."""
    if len(members) == 1 and any(k_out[v] for v in members[0]):
        raise Infeasible("a single community cannot host inter-community edges")
    for c, verts in enumerate(members):
        if sum(k_in[v] for v in verts) % 2 == 0:
            continue
        up = [v for v in verts if k_out[v] > 0 and k_in[v] < sizes[c] - 1]
        down = [v for v in verts if k_in[v] > 0]
        if up:
            v = up[int(rng.integers(len(up)))]
            k_in[v] += 1
            k_out[v] -= 1
        elif down:
            v = down[int(rng.integers(len(down)))]
            k_in[v] -= 1
            k_out[v] += 1
        else:
            raise Infeasible(f"community {c} has an odd intra stub count that cannot be fixed")
    # A community can only send as many inter stubs as all others can absorb.
    # Surplus stubs are turned inward on the members with the most inter
    # stubs: high-degree vertices, where one stub moves the intra share least,
    # and the conversions spread out instead of saturating a few vertices.
    while True:
        out_sums = [sum(k_out[v] for v in verts) for verts in members]
        total = sum(out_sums)
        c = int(np.argmax(out_sums))
        excess = out_sums[c] - (total - out_sums[c])
        if excess <= 0:
            return
        for _ in range(2):
            movable = [v for v in members[c] if k_out[v] > 0 and k_in[v] < sizes[c] - 1]
            if not movable:
                raise Infeasible(f"community {c} has more inter stubs than the rest can absorb")
            top = max(k_out[v] for v in movable)
            movable = [v for v in movable if k_out[v] == top]
            v = movable[int(rng.integers(len(movable)))]
            k_in[v] += 1
            k_out[v] -= 1


def _match_stubs(rng, residual, allowed, swap_budget):
    """Wire half-edges into a simple graph respecting the ``allowed`` mask.

    Stubs are matched one at a time: the vertex with the most open stubs
    (ties broken at random) is joined to an admissible partner drawn with
    probability proportional to the partner's open stubs. Stubs left over
    when no admissible partner remains are paired up and inserted by
    double-edge swaps, removing a random edge ``(x, y)`` and adding
    ``(a, x)`` and ``(b, y)``; ``swap_budget`` caps the tries per pair.
    Returns the edge list, or ``None`` if some pair could not be placed.
    """
    residual = np.array(residual, dtype=np.int64)
    n = residual.size
    adj = np.zeros((n, n), dtype=bool)
    edges: list[tuple[int, int]] = []
    leftover: list[int] = []

    def link(u, v):
        adj[u, v] = adj[v, u] = True
        edges.append((min(u, v), max(u, v)))

    while residual.any():
        top = np.flatnonzero(residual == residual.max())
        u = int(top[rng.integers(top.size)])
        weights = np.where(allowed[u] & ~adj[u], residual, 0)
        weights[u] = 0
        total = weights.sum()
        if total == 0:
            leftover += [u] * int(residual[u])
            residual[u] = 0
            continue
        v = int(rng.choice(n, p=weights / total))
        link(u, v)
        residual[u] -= 1
        residual[v] -= 1

    rng.shuffle(leftover)
    for a, b in zip(leftover[::2], leftover[1::2]):
        if a != b and allowed[a, b] and not adj[a, b]:
            link(a, b)
            continue
        for _ in range(swap_budget):
            if not edges:
                return None
            i = int(rng.integers(len(edges)))
            x, y = edges[i]
            if rng.random() < 0.5:
                x, y = y, x
            if (
                x != a and y != b and (a, x) != (b, y) and (a, x) != (y, b)
                and allowed[a, x] and allowed[b, y]
                and not adj[a, x] and not adj[b, y]
            ):
                adj[x, y] = adj[y, x] = False
                edges[i] = edges[-1]
                edges.pop()
                link(a, x)
                link(b, y)
                break
        else:
            return None
    return edges


def lfr_with_communities(params: LfrParams) -> LfrGraph:
    """Generate an LFR-style benchmark graph and its planted partition.

    Degrees and community sizes are redrawn up to ``max_attempts`` times;
    :class:`WiringFailure` is raised when none of them can be wired.
    """
    params.validate()
    rng = make_rng(params.seed)
    k_max = params.resolved_max_degree
    n = params.n
    last_error: Exception | None = None
    for _ in range(params.max_attempts):
        degrees = sample_power_law_degrees(
            n, params.tau_degree, params.avg_degree, k_max, int(rng.integers(2**63))
        )
        k_in = _split_degrees(rng, degrees, params.mu)
        k_out = np.asarray(degrees, dtype=np.int64) - k_in
        min_c = params.min_community or max(8, int(k_in.max()) + 1)
        max_c = params.max_community or n // 2
        max_c = max(max_c, min_c)
        try:
            sizes = sample_community_sizes(n, params.tau_community, min_c, max_c, int(rng.integers(2**63)))
            membership = _assign_communities(rng, k_in, sizes)
            members = [[v for v in range(n) if membership[v] == c] for c in range(len(sizes))]
            _fix_parity_and_balance(rng, k_in, k_out, members, sizes)
        except Infeasible as exc:
            last_error = exc
            continue

        label = np.asarray(membership)
        same = label[:, None] == label[None, :]
        intra = _match_stubs(rng, k_in, same, params.swap_budget)
        if intra is None:
            last_error = WiringFailure("intra-community wiring failed")
            continue
        inter = _match_stubs(rng, k_out, ~same, params.swap_budget)
        if inter is None:
            last_error = WiringFailure("inter-community wiring failed")
            continue
        g = from_edge_list(n, intra + inter)
        return LfrGraph(g, membership, members)
    if isinstance(last_error, Infeasible):
        raise Infeasible(f"no valid benchmark after {params.max_attempts} attempts: {last_error}")
    raise last_error


def lfr(params: LfrParams) -> Graph:
    return lfr_with_communities(params).graph


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    degrees: tuple[float, ...] = tuple(range(4, 65))
    realizations: int = 30
    base: LfrParams = LfrParams()
    master_seed: int = 0

    def validate(self) -> None:
        if self.realizations < 1:
            raise InvalidParameters("realizations must be at least 1")
        if not self.degrees:
            raise InvalidParameters("degrees must be nonempty")
        for k in self.degrees:
            replace(self.base, avg_degree=k).validate()

    def cells(self) -> list[tuple[float, int, int]]:
        """``(avg_degree, realization, seed)`` in output order."""
        return [
            (k, i, child_seed(self.master_seed, int(round(k * 1000)), i))
            for k in self.degrees
            for i in range(self.realizations)
        ]


@dataclass
class SweepRow:
    avg_degree: float
    realization: int
    seed: int
    params: LfrParams
    metrics: MetricsReport | None = None
    bounds: BoundsReport | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def run_cell(params: LfrParams, realization: int = 0) -> SweepRow:
    """Generate, analyze and bound-check one sweep cell; failures are recorded."""
    row = SweepRow(params.avg_degree, realization, params.seed, params)
    try:
        g = lfr(params)
    except (Infeasible, WiringFailure) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        return row
    report, summary = analyze(g)
    row.metrics = report
    row.bounds = evaluate(report, summary)
    return row


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(config: SweepConfig, workers: int | None = None) -> list[SweepRow]:
    """Run every ``(degree, realization)`` cell, ordered by degree then index."""
    config.validate()
    jobs = [
        (replace(config.base, avg_degree=k, seed=seed), i) for k, i, seed in config.cells()
    ]
    return pmap(_run_cell_args, jobs, workers=workers)


SWEEP_COLUMNS = [
    "avg_degree", "realization", "seed", "n", "m", "density", "L", "E_glob",
    "E_loc_open", "E_loc_closed", "CC_open", "CC_closed", "frac_pairs_le2",
    "gap_lemma6", "gap_bound_lemma6",
    *(f"slack_{name}" for name in CHECK_NAMES),
    *(f"satisfied_{name}" for name in CHECK_NAMES),
    "status",
]


def sweep_row_values(row: SweepRow) -> list[str]:
    head = [format_number(row.avg_degree), str(row.realization), str(row.seed)]
    if not row.ok:
        return head + [""] * (len(SWEEP_COLUMNS) - 4) + [row.error]
    r, b = row.metrics, row.bounds
    values = [
        r.n, r.m, r.density, r.char_path_length, r.global_efficiency,
        r.local_efficiency_open, r.local_efficiency_closed, r.clustering_open,
        r.clustering_closed, r.frac_pairs_le2, b.gap_lemma6, b.gap_bound_lemma6,
    ]
    values += [c.slack for c in b.checks] + [c.satisfied for c in b.checks]
    return head + [format_number(v) for v in values] + ["ok"]


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(sweep_row_values(row))
    return buf.getvalue()


def mean_gap_by_degree(rows: list[SweepRow]) -> list[tuple[float, float, float]]:
    """``(avg_degree, mean density, mean density-bound gap)`` per degree level."""
    levels: dict[float, list[SweepRow]] = {}
    for row in rows:
        if row.ok:
            levels.setdefault(row.avg_degree, []).append(row)
    return [
        (
            k,
            float(np.mean([r.metrics.density for r in group])),
            float(np.mean([r.bounds.gap_lemma6 for r in group])),
        )
        for k, group in sorted(levels.items())
    ]


def gap_trend_inversions(rows: list[SweepRow], min_density: float = 0.5, tol: float = 1e-12) -> int:
    """Count levels (ordered by density, above ``min_density``) where the mean gap rises."""
    levels = sorted((d, gap) for _, d, gap in mean_gap_by_degree(rows) if d > min_density)
    return sum(1 for (_, a), (_, b) in zip(levels, levels[1:]) if b > a + tol)


def equality_density(rows: list[SweepRow], gap_tol: float = 1e-3) -> float | None:
    """Smallest density from which every denser graph has a gap below ``gap_tol``.

    ``None`` when even the densest graph misses the tolerance.
    """
    ok = sorted((r.metrics.density, r.bounds.gap_lemma6) for r in rows if r.ok)
    threshold = None
    for density, gap in reversed(ok):
        if gap >= gap_tol:
            break
        threshold = density
    return threshold


def sweep_summary(rows: list[SweepRow]) -> dict:
    ok = [r for r in rows if r.ok]
    max_slack = {}
    violations = {}
    for name in CHECK_NAMES:
        slacks = [r.bounds.check(name).slack for r in ok if r.bounds.check(name).applicable]
        max_slack[name] = max(slacks) if slacks else None
        violations[name] = sum(r.bounds.check(name).violated for r in ok)
    return {
        "cells": len(rows),
        "failed_cells": len(rows) - len(ok),
        "violations": violations,
        "max_slack": max_slack,
        "equality_density_gap_lt_1e-3": equality_density(rows),
        "mean_gap_by_degree": [
            {"avg_degree": k, "density": d, "gap_lemma6": g} for k, d, g in mean_gap_by_degree(rows)
        ],
    }
