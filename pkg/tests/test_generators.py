from dataclasses import replace

import numpy as np
import pytest

from graphbounds.errors import Infeasible, InvalidParameters, InvalidProbability
from graphbounds.generators import (
    SWEEP_COLUMNS,
    LfrParams,
    SweepConfig,
    child_seed,
    equality_density,
    erdos_renyi,
    gap_trend_inversions,
    lfr,
    lfr_with_communities,
    mean_gap_by_degree,
    run_cell,
    run_sweep,
    sample_community_sizes,
    sample_power_law_degrees,
    sweep_csv,
)

# 99.9% two-sided binomial intervals, computed once from the exact pmf in
# log space (lgamma) and frozen here.
ER_INTERVALS = {
    (100, 0.3): (1380, 1592),
    (50, 0.5): (555, 670),
    (60, 0.1): (137, 220),
}


class TestErdosRenyi:
    def test_full(self):
        g = erdos_renyi(12, 1.0, 3)
        assert g.m == 66

    def test_empty(self):
        assert erdos_renyi(12, 0.0, 3).m == 0

    @pytest.mark.parametrize("p", [-0.1, 1.5, float("nan")])
    def test_bad_probability(self, p):
        with pytest.raises(InvalidProbability):
            erdos_renyi(5, p, 0)

    @pytest.mark.parametrize("n,p", sorted(ER_INTERVALS))
    @pytest.mark.parametrize("seed", [11, 12, 13])
    def test_edge_count_in_binomial_interval(self, n, p, seed):
        lo, hi = ER_INTERVALS[n, p]
        assert lo <= erdos_renyi(n, p, seed).m <= hi

    def test_deterministic(self):
        assert erdos_renyi(40, 0.2, 99) == erdos_renyi(40, 0.2, 99)
        assert erdos_renyi(40, 0.2, 99) != erdos_renyi(40, 0.2, 100)


def test_child_seed_is_stable_and_distinct():
    assert child_seed(5, 16000, 2) == child_seed(5, 16000, 2)
    seeds = {child_seed(5, k, i) for k in range(10) for i in range(10)}
    assert len(seeds) == 100


class TestPowerLawDegrees:
    @pytest.mark.parametrize("avg", [4, 8, 16, 32, 60, 64])
    def test_mean_within_ten_percent(self, avg):
        deg = sample_power_law_degrees(128, 2.0, avg, 64, seed=avg)
        assert abs(np.mean(deg) - avg) <= 0.1 * avg
        assert min(deg) >= 1 and max(deg) <= 64

    def test_narrow_support_near_max(self):
        deg = sample_power_law_degrees(128, 2.0, 63, 64, seed=1)
        assert set(deg) <= {62, 63, 64}
        assert abs(np.mean(deg) - 63) <= 6.3

    def test_large_exponent_collapses_to_cutoff(self):
        deg = sample_power_law_degrees(200, 60.0, 5, 30, seed=2)
        assert set(deg) <= {4, 5}

    @pytest.mark.parametrize("seed", range(10))
    def test_even_sum(self, seed):
        assert sum(sample_power_law_degrees(51, 2.0, 7, 20, seed)) % 2 == 0

    def test_invalid(self):
        with pytest.raises(InvalidParameters):
            sample_power_law_degrees(10, 2.0, 12, 8, 0)

    def test_infeasible_mean(self):
        with pytest.raises(Infeasible):
            # exponent so steep that even the lowest cutoff overshoots a mean of 1.0
            sample_power_law_degrees(10, 0.01, 1.0, 50, 0)


class TestCommunitySizes:
    def test_single_forced(self):
        assert sample_community_sizes(30, 1.0, 30, 30, 0) == [30]

    @pytest.mark.parametrize("seed", range(20))
    def test_sum_and_bounds(self, seed):
        sizes = sample_community_sizes(128, 1.0, 8, 64, seed)
        assert sum(sizes) == 128
        assert all(8 <= s <= 64 for s in sizes)

    def test_min_exceeds_n(self):
        with pytest.raises(Infeasible):
            sample_community_sizes(10, 1.0, 11, 20, 0)


class TestLfr:
    def test_default_shape(self):
        result = lfr_with_communities(LfrParams(n=128, avg_degree=16, mu=0.2, seed=4))
        g = result.graph
        assert 0.75 <= result.intra_fraction() <= 0.85
        assert abs(2 * g.m / g.n - 16) <= 1.6
        assert sorted(v for c in result.communities for v in c) == list(range(128))

    @pytest.mark.parametrize("avg", [8, 12, 24, 40, 64])
    def test_intra_fraction_and_degree(self, avg):
        result = lfr_with_communities(LfrParams(avg_degree=avg, seed=avg))
        assert abs(result.intra_fraction() - 0.8) <= 0.05
        assert abs(2 * result.graph.m / 128 - avg) <= 0.1 * avg

    def test_deterministic(self):
        p = LfrParams(avg_degree=20, seed=77)
        assert lfr(p).edges() == lfr(p).edges()
        assert lfr(p).edges() != lfr(replace(p, seed=78)).edges()

    def test_simple_graph(self):
        g = lfr(LfrParams(avg_degree=48, seed=5))
        for v, nbrs in enumerate(g.adjacency):
            assert v not in nbrs
            assert all(v in g.adjacency[u] for u in nbrs)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(mu=0.0), dict(mu=1.0), dict(avg_degree=70), dict(max_degree=128), dict(tau_degree=0),
            dict(max_attempts=0), dict(min_community=0), dict(max_community=129),
        ],
    )
    def test_invalid_params(self, kwargs):
        with pytest.raises(InvalidParameters):
            lfr(LfrParams(**kwargs))

    def test_failed_cell_is_marked(self):
        # one community cannot host any inter-community stubs
        row = run_cell(LfrParams(n=20, avg_degree=4, max_degree=8, min_community=20, max_community=20,
                                 max_attempts=2, seed=1))
        assert not row.ok and row.metrics is None
        assert "Infeasible" in row.error or "WiringFailure" in row.error


class TestSweep:
    def test_single_cell(self):
        rows = run_sweep(SweepConfig(degrees=(8,), realizations=1, master_seed=3))
        assert len(rows) == 1 and rows[0].ok

    def test_order_and_seeds(self):
        config = SweepConfig(degrees=(12, 4), realizations=2, master_seed=9)
        rows = run_sweep(config)
        assert [(r.avg_degree, r.realization) for r in rows] == [(12, 0), (12, 1), (4, 0), (4, 1)]
        assert [r.seed for r in rows] == [child_seed(9, 12000, 0), child_seed(9, 12000, 1),
                                          child_seed(9, 4000, 0), child_seed(9, 4000, 1)]

    def test_cell_rerunnable_in_isolation(self):
        config = SweepConfig(degrees=(8, 16), realizations=2, master_seed=1)
        rows = run_sweep(config)
        alone = run_cell(replace(config.base, avg_degree=16, seed=child_seed(1, 16000, 1)), 1)
        assert alone.metrics == rows[3].metrics

    def test_csv_schema(self):
        rows = run_sweep(SweepConfig(degrees=(8,), realizations=2, master_seed=3))
        lines = sweep_csv(rows).splitlines()
        assert lines[0].split(",") == SWEEP_COLUMNS
        assert len(lines) == 3
        assert all(len(ln.split(",")) == len(SWEEP_COLUMNS) for ln in lines[1:])

    def test_invalid_config(self):
        with pytest.raises(InvalidParameters):
            run_sweep(SweepConfig(degrees=(8,), realizations=0))
        with pytest.raises(InvalidParameters):
            run_sweep(SweepConfig(degrees=(), realizations=1))

    def test_sweep_bounds_and_trend(self):
        rows = run_sweep(SweepConfig(degrees=tuple(range(4, 65, 12)), realizations=2, master_seed=5))
        assert all(r.ok for r in rows)
        assert all(r.bounds.all_satisfied and r.bounds.sandwich_holds() for r in rows)
        levels = mean_gap_by_degree(rows)
        assert levels[-1][2] < levels[0][2]

    def test_dense_sweep_gap_nonincreasing(self):
        base = LfrParams(n=48, max_degree=36, mu=0.5, min_community=19, max_community=29)
        rows = run_sweep(SweepConfig(degrees=(24, 27, 30, 33, 36), realizations=3, base=base, master_seed=2))
        assert all(r.ok for r in rows)
        assert max(d for _, d, _ in mean_gap_by_degree(rows)) > 0.5
        assert gap_trend_inversions(rows, min_density=0.5) <= 1


def test_equality_density_helper():
    class R:
        def __init__(self, density, gap):
            self.ok = True
            self.metrics = type("M", (), {"density": density})()
            self.bounds = type("B", (), {"gap_lemma6": gap})()

    rows = [R(0.2, 0.1), R(0.5, 0.0), R(0.4, 0.01), R(0.7, 0.0)]
    assert equality_density(rows) == 0.5
    assert equality_density([R(0.9, 0.2)]) is None
