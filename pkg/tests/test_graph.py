from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, exact, fixture_graph, graphs
from graphbounds.errors import IndexOutOfRange, SelfLoop, SizeExceeded
from graphbounds.generators import erdos_renyi
from graphbounds.graph import (
    UNREACHABLE,
    Graph,
    all_pairs_distances,
    closed_neighborhood_subgraph,
    distance_distribution,
    from_edge_list,
    open_neighborhood_subgraph,
    oracle_distances,
)


def complete(n):
    return from_edge_list(n, combinations(range(n), 2))


def cycle(n):
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


class TestFromEdgeList:
    def test_path(self):
        g = from_edge_list(3, [(0, 1), (1, 2)])
        assert g.m == 2
        assert g.adjacency == ((1,), (0, 2), (1,))

    def test_complete(self):
        assert complete(4).m == 6

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            from_edge_list(2, [(0, 0)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_edge_list(2, [(0, 2)])

    def test_duplicates_collapse(self):
        assert from_edge_list(3, [(0, 1), (1, 0), (0, 1)]).m == 1

    def test_graph_rejects_asymmetry(self):
        with pytest.raises(ValueError):
            Graph(2, ((1,), ()))


class TestNeighborhoods:
    def test_open_path_center(self):
        sub = open_neighborhood_subgraph(path(3), 1)
        assert (sub.n, sub.m) == (2, 0)

    def test_open_complete(self):
        assert open_neighborhood_subgraph(complete(4), 0) == complete(3)

    def test_open_cycle5(self):
        sub = open_neighborhood_subgraph(cycle(5), 0)
        # neighbors 1 and 4 of vertex 0 on C5 are not adjacent
        assert not cycle(5).has_edge(1, 4)
        assert (sub.n, sub.m) == (2, 0)

    def test_closed_leaf(self):
        assert closed_neighborhood_subgraph(path(3), 0) == complete(2)

    def test_closed_center(self):
        assert closed_neighborhood_subgraph(path(3), 1) == path(3)

    @pytest.mark.parametrize("fn", [open_neighborhood_subgraph, closed_neighborhood_subgraph])
    def test_bad_vertex(self, fn):
        with pytest.raises(IndexOutOfRange):
            fn(path(3), 3)

    @given(graphs(min_n=1), st.data())
    def test_closed_neighborhood_diameter_le2(self, g, data):
        v = data.draw(st.integers(0, g.n - 1))
        sub = closed_neighborhood_subgraph(g, v)
        assert sub.n == g.degree(v) + 1
        d = all_pairs_distances(sub)
        if g.degree(v) >= 1:
            assert d.connected
            assert max(d.eccentricity(u) for u in range(sub.n)) <= 2


class TestDistances:
    def test_path3(self):
        d = all_pairs_distances(path(3))
        assert d[0, 2] == 2 and d[0, 1] == 1

    def test_complete(self):
        d = all_pairs_distances(complete(5))
        assert (d.dist[~np.eye(5, dtype=bool)] == 1).all()

    def test_disconnected(self):
        d = all_pairs_distances(from_edge_list(4, [(0, 1), (2, 3)]))
        assert d[0, 2] == UNREACHABLE and d[1, 3] == UNREACHABLE
        assert not d.connected
        assert d.diameter == float("inf")

    def test_matches_brute_force_fixtures(self, fixture_name):
        fx = FIXTURES[fixture_name]
        d = all_pairs_distances(fixture_graph(fixture_name))
        expected = [[UNREACHABLE if x == "inf" else x for x in row] for row in fx["distances"]]
        assert d.dist.tolist() == expected

    def test_oracle_empty(self):
        d = oracle_distances(from_edge_list(3, []))
        assert d.dist.tolist() == [[0, -1, -1], [-1, 0, -1], [-1, -1, 0]]

    def test_oracle_k4_minus_edge(self):
        g = from_edge_list(4, [e for e in combinations(range(4), 2) if e != (0, 1)])
        assert oracle_distances(g)[0, 1] == 2

    def test_oracle_size_bound(self):
        with pytest.raises(SizeExceeded):
            oracle_distances(from_edge_list(11, []), max_n=10)

    @settings(max_examples=200)
    @given(graphs(max_n=20))
    def test_bfs_equals_oracle(self, g):
        assert all_pairs_distances(g) == oracle_distances(g)

    @given(graphs(max_n=15))
    def test_matrix_invariants(self, g):
        d = all_pairs_distances(g).dist
        assert (np.diagonal(d) == 0).all()
        assert (d == d.T).all()
        assert ((d == 1) == g.adjacency_matrix).all()
        fin = np.where(d == UNREACHABLE, 10**6, d)
        for k in range(g.n):
            assert (fin <= fin[:, [k]] + fin[[k], :]).all()

    def test_seeded_er_against_oracle(self):
        for seed in range(20):
            g = erdos_renyi(40, 0.05 + 0.04 * seed, seed)
            assert all_pairs_distances(g) == oracle_distances(g)


class TestDistanceDistribution:
    def test_cycle4(self):
        s = distance_distribution(all_pairs_distances(cycle(4)))
        assert (s.pairs_d1, s.pairs_d2, s.pairs_gt2_finite, s.pairs_inf) == (8, 4, 0, 0)

    def test_complete5(self):
        s = distance_distribution(all_pairs_distances(complete(5)))
        assert (s.pairs_d1, s.pairs_d2, s.pairs_gt2_finite, s.pairs_inf) == (20, 0, 0, 0)

    def test_path4(self):
        s = distance_distribution(all_pairs_distances(path(4)))
        assert (s.pairs_d1, s.pairs_d2, s.pairs_gt2_finite) == (6, 4, 2)
        assert s.recip_mass_gt2 == pytest.approx(2 / 3, abs=1e-15)

    def test_fixture_counts(self, fixture_name):
        fx = FIXTURES[fixture_name]
        s = distance_distribution(all_pairs_distances(fixture_graph(fixture_name)))
        assert s.pairs_d1 == fx["pairs_d1"]
        assert s.pairs_d2 == fx["pairs_d2"]
        assert s.pairs_gt2_finite == fx["pairs_gt2_finite"]
        assert s.pairs_inf == fx["pairs_inf"]
        assert s.recip_mass_gt2 == pytest.approx(exact(fx["recip_mass_gt2"]), abs=1e-14)
        assert {str(k) if k != float("inf") else "inf": v for k, v in s.histogram.items()} == fx["histogram"]

    @given(graphs(max_n=15))
    def test_counts_partition_pairs(self, g):
        s = distance_distribution(all_pairs_distances(g))
        assert s.pairs_d1 + s.pairs_d2 + s.pairs_gt2_finite + s.pairs_inf == g.n * (g.n - 1)
        assert s.pairs_d1 == 2 * g.m
        assert 0 <= s.recip_mass_gt2
        if s.pairs_gt2_finite:
            assert s.recip_mass_gt2 < s.pairs_gt2_finite / 2
        assert sum(s.histogram.values()) == g.n * (g.n - 1)
