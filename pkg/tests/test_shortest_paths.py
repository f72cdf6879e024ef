import math

import numpy as np
import pytest

from oracles import bellman_ford, edge_list, floyd_warshall, shortest_bottlenecks
from wspanner.graph import EdgeSet, Graph, WorkingGraph, generate_gnp
from wspanner.shortest_paths import NO_PARENT, ApspTooLarge, apsp, bottleneck_dijkstra, dijkstra


def test_path_graph():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    r = dijkstra(g, 0)
    assert r.dist.tolist() == [0.0, 1.0, 3.0]
    assert r.parent[0] == NO_PARENT
    assert r.path(g, 2) == [0, 1, 2]


def test_unreachable_is_inf():
    g = Graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    r = dijkstra(g, 0)
    assert math.isinf(r.dist[3]) and r.parent[3] == NO_PARENT
    assert r.path(g, 3) is None


@pytest.mark.parametrize("seed", range(5))
def test_matches_bellman_ford(seed):
    g = generate_gnp(50, 0.1, 1.0, 10.0, seed)
    edges = edge_list(g)
    for s in (0, 17, 49):
        r = dijkstra(g, s)
        expect = bellman_ford(g.n, edges, s)
        assert np.allclose(r.dist, expect, rtol=0, atol=1e-9)
        assert r.dist[s] == 0.0 and r.parent[s] == NO_PARENT


@pytest.mark.parametrize("seed", range(3))
def test_parent_tree_and_optimality(seed):
    g = generate_gnp(40, 0.15, 1.0, 10.0, seed)
    r = dijkstra(g, 3)
    for v in range(g.n):
        e = r.parent[v]
        if e >= 0:
            u = g.eu[e] if g.ev[e] == v else g.ev[e]
            assert r.dist[v] == r.dist[u] + g.ew[e]
    for u, v, w in g.edges:
        assert r.dist[u] + w >= r.dist[v] and r.dist[v] + w >= r.dist[u]


def test_edge_filter():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)])
    assert dijkstra(g, 0, EdgeSet(3, [2])).dist.tolist() == [0.0, math.inf, 5.0]
    full = EdgeSet.full(g.m)
    assert dijkstra(g, 0, full).dist.tolist() == dijkstra(g, 0).dist.tolist()
    assert dijkstra(g, 0, WorkingGraph(g, EdgeSet(3, [2]))).dist.tolist() == [0.0, math.inf, 5.0]


def test_filter_matches_bellman_ford():
    g = generate_gnp(40, 0.3, 1, 10, 12)
    keep = EdgeSet(g.m, range(0, g.m, 2))
    want = bellman_ford(g.n, edge_list(g), 0, set(keep.ids().tolist()))
    assert dijkstra(g, 0, keep).dist.tolist() == dijkstra(g, 0, WorkingGraph(g, keep)).dist.tolist()
    assert np.allclose(dijkstra(g, 0, keep).dist, want, rtol=0, atol=1e-9)


def test_foreign_filter_rejected():
    g = Graph(3, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        dijkstra(g, 0, EdgeSet(5))
    with pytest.raises(IndexError):
        dijkstra(g, 3)


class TestBottleneck:
    def test_unit_weights(self):
        g = generate_gnp(20, 0.3, 1.0, 1.0, 1)
        r = bottleneck_dijkstra(g, 0)
        reach = np.isfinite(r.dist)
        reach[0] = False
        assert set(r.bottleneck[reach]) == {1.0}

    def test_parallel_routes(self):
        # s=0, t=3: direct route 0-3 (w=5) and 0-1-3 (2+3); both length 5
        g = Graph(4, [(0, 3, 5.0), (0, 1, 2.0), (1, 3, 3.0), (1, 2, 9.0)])
        r = bottleneck_dijkstra(g, 0)
        assert r.dist[3] == 5.0 and r.bottleneck[3] == 3.0

    def test_source(self):
        g = Graph(2, [(0, 1, 4.0)])
        r = bottleneck_dijkstra(g, 0)
        assert r.dist[0] == 0.0 and r.bottleneck[0] == 0.0

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 9))
        # small integer weights create many equal-length paths
        g = generate_gnp(n, 0.6, 1, 1, seed)
        g = Graph(n, [(u, v, float(rng.integers(1, 4))) for u, v, _ in g.edges])
        edges = edge_list(g)
        for s in range(n):
            r = bottleneck_dijkstra(g, s)
            dist, bott = shortest_bottlenecks(n, edges, s)
            assert r.dist.tolist() == dist
            assert r.bottleneck.tolist() == bott


class TestApsp:
    def test_symmetric_and_zero_diagonal(self):
        g = generate_gnp(25, 0.2, 1, 10, 4)
        res = apsp(g)
        # real weights: sums along a path depend on direction in the last bits
        assert np.allclose(res.dist, res.dist.T, rtol=1e-12, atol=0)
        assert np.all(np.diag(res.dist) == 0)
        gi = Graph(g.n, [(u, v, float(round(w))) for u, v, w in g.edges])
        res = apsp(gi)
        assert np.array_equal(res.dist, res.dist.T)
        assert np.array_equal(res.bottleneck, res.bottleneck.T)

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_floyd_warshall(self, seed):
        g = generate_gnp(30, 0.2, 1, 10, seed)
        res = apsp(g)
        fw = np.array(floyd_warshall(g.n, edge_list(g)))
        assert np.allclose(res.dist, fw, rtol=0, atol=1e-9)

    def test_rows_equal_single_source(self):
        g = generate_gnp(20, 0.3, 1, 10, 6)
        res = apsp(g)
        for s in range(g.n):
            b = bottleneck_dijkstra(g, s)
            assert np.array_equal(res.dist[s], b.dist)
            assert np.array_equal(res.bottleneck[s], b.bottleneck)

    def test_tree_bottleneck_dominates(self):
        g = generate_gnp(30, 0.4, 1, 3, 2)
        g = Graph(g.n, [(u, v, float(round(w))) for u, v, w in g.edges])
        res = apsp(g)
        fin = np.isfinite(res.dist)
        assert np.all(res.bottleneck[fin] <= res.tree_bottleneck[fin])
        assert np.all(res.tree_bottleneck[fin] <= g.w_max)

    def test_cap(self):
        with pytest.raises(ApspTooLarge):
            apsp(generate_gnp(30, 0.1, 1, 2, 0), cap=10)

    def test_distances_only(self):
        res = apsp(Graph(2, [(0, 1, 1.0)]), bottleneck=False)
        assert res.bottleneck is None and res.dist[0, 1] == 1.0
