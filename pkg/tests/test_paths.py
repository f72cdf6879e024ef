import math

import numpy as np
import pytest

from oracles import edge_list, path_table, simple_paths
from wspanner.graph import EdgeSet, Graph, WorkingGraph, generate_gnp
from wspanner.light_init import SpannerBuild, d_light_init
from wspanner.paths import ReweightConfig, mecsp, mecsp_path, weak_csssp
from wspanner.shortest_paths import dijkstra


def triangle():
    return Graph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)])


def int_graph(n, p, seed, wmax=5):
    rng = np.random.default_rng(seed)
    base = generate_gnp(n, p, 1, 1, seed)
    return Graph(n, [(u, v, float(rng.integers(1, wmax + 1))) for u, v, _ in base.edges])


def random_build(g, seed, keep=0.5):
    rng = np.random.default_rng(seed + 99)
    return SpannerBuild(g, EdgeSet(g.m, np.flatnonzero(rng.random(g.m) < keep)))


class TestMecsp:
    def test_full_build_is_dijkstra(self):
        g = generate_gnp(30, 0.2, 1, 10, 3)
        t = mecsp(g, SpannerBuild.full(g), 0, 4)
        want = dijkstra(g, 0).dist
        for l in range(4):
            assert np.array_equal(t.layer(l), want)

    def test_triangle_budget_one(self):
        g = triangle()
        t = mecsp(g, d_light_init(g, 1), 0, 1)
        assert t.dist(0, 2) == 3.0
        p = t.path(2)
        assert p.vertices == (0, 1, 2) and p.missing == 0

    def test_triangle_budget_two_same_weight(self):
        g = triangle()
        t = mecsp(g, d_light_init(g, 1), 0, 2)
        assert t.f.tolist() == [[0.0, 1.0, 3.0], [0.0, 1.0, 3.0]]

    def test_missing_edge_needed(self):
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.5)])
        sb = SpannerBuild(g, EdgeSet(3, [0, 1]))
        t = mecsp(g, sb, 0, 2)
        assert t.dist(0, 2) == 2.0 and t.dist(1, 2) == 1.5
        assert t.path(2, 1).missing == 1 and t.path(2, 0).missing == 0

    def test_unreachable_within_budget(self):
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
        t = mecsp(g, SpannerBuild(g), 0, 2)
        assert math.isinf(t.dist(1, 2)) and t.dist(1, 1) == 1.0
        assert mecsp_path(t, 2, 1) is None

    def test_source_path_empty(self):
        g = triangle()
        p = mecsp(g, SpannerBuild(g), 1, 3).path(1)
        assert p.vertices == (1,) and p.edges == () and p.weight == 0.0 and p.missing == 0

    def test_layer_bounds(self):
        g = triangle()
        t = mecsp(g, SpannerBuild(g), 0, 3)
        with pytest.raises(IndexError):
            t.layer(3)
        with pytest.raises(IndexError):
            t.layer(-1)

    def test_preconditions(self):
        g = triangle()
        with pytest.raises(ValueError):
            mecsp(g, SpannerBuild(g), 0, 0)
        with pytest.raises(IndexError):
            mecsp(g, SpannerBuild(g), 5, 1)
        with pytest.raises(ValueError):
            mecsp(g, SpannerBuild(triangle()), 0, 1)

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        g = int_graph(n, 0.5, seed)
        sb = random_build(g, seed)
        edges = edge_list(g)
        budget = int(rng.integers(1, 5))
        for s in range(n):
            want = path_table(n, edges, s, sb.in_h.mask, budget)
            assert mecsp(g, sb, s, budget).f.tolist() == want

    @pytest.mark.parametrize("seed", range(8))
    def test_invariants(self, seed):
        g = generate_gnp(30, 0.2, 1, 10, seed)
        sb = d_light_init(g, 2)
        t = mecsp(g, sb, 0, g.m + 1)
        f = t.f
        assert np.all(f[1:] <= f[:-1])
        assert np.array_equal(f[0], dijkstra(g, 0, sb.in_h).dist)
        full = dijkstra(g, 0).dist
        assert np.all(f >= full - 1e-9)
        assert np.allclose(f[g.m], full, rtol=0, atol=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_paths_realize_table(self, seed):
        g = generate_gnp(30, 0.2, 1, 10, seed)
        sb = d_light_init(g, 2)
        t = mecsp(g, sb, 4, 4)
        for l in range(4):
            for v in range(g.n):
                p = t.path(v, l)
                if p is None:
                    assert math.isinf(t.dist(l, v))
                    continue
                assert p.vertices[0] == 4 and p.vertices[-1] == v
                w = sum(g.weight(a, b) for a, b in zip(p.vertices, p.vertices[1:]))
                assert w == pytest.approx(t.dist(l, v), abs=1e-9)
                assert sb.count_missing(list(p.vertices)) == p.missing <= l

    def test_working_graph_restriction(self):
        g = int_graph(7, 0.7, 3)
        sb = random_build(g, 3)
        keep = EdgeSet(g.m, range(0, g.m, 2))
        allowed = set(keep.ids().tolist())
        # filtered-out edges become unusable in the oracle
        edges = [e if i in allowed else (e[0], e[1], math.inf) for i, e in enumerate(edge_list(g))]
        a = mecsp(g, sb, 0, 3, keep).f
        assert np.array_equal(a, mecsp(g, sb, 0, 3, WorkingGraph(g, keep)).f)
        want = path_table(g.n, edges, 0, sb.in_h.mask, 3)
        assert a.tolist() == want


class TestWeakCsssp:
    def test_delta_example(self):
        cfg = ReweightConfig(g=4, eps0=0.5, w_max=3.0)
        assert cfg.delta(10.0, 2) == pytest.approx(10.75)

    def test_config_validation(self):
        for bad in [(0, 0.5, 1.0), (1, 0.0, 1.0), (1, 1.0, 1.0), (1, 0.5, -1.0)]:
            with pytest.raises(ValueError):
                ReweightConfig(*bad)
        assert ReweightConfig(2, 0.5, 4.0).surcharge == 1.0

    def test_no_missing_is_dijkstra(self):
        g = generate_gnp(40, 0.2, 1, 10, 1)
        r = weak_csssp(g, SpannerBuild.full(g), 0, ReweightConfig(4, 0.5, g.w_max))
        assert np.array_equal(r.dist, dijkstra(g, 0).dist)
        assert np.all(r.missing[np.isfinite(r.dist)] == 0)

    @pytest.mark.parametrize("seed", range(25))
    def test_dominance_by_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 9))
        g = int_graph(n, 0.6, seed)
        sb = random_build(g, seed, keep=0.4)
        cfg = ReweightConfig(int(rng.integers(1, 5)), 0.5, g.w_max)
        edges = edge_list(g)
        for s in range(n):
            r = weak_csssp(g, sb, s, cfg)
            best = [math.inf] * n
            for v, _, eids, weight in simple_paths(n, edges, s):
                phi = sum(1 for e in eids if not sb.in_h.mask[e])
                best[v] = min(best[v], cfg.delta(weight, phi))
            for v in range(n):
                assert r.dist[v] == pytest.approx(best[v], abs=1e-9)
                if math.isfinite(best[v]):
                    p = r.constrained_path(g, v)
                    assert p.weight <= r.dist[v] + 1e-9
                    assert cfg.delta(p.weight, p.missing) == pytest.approx(r.dist[v], abs=1e-9)
                    assert sb.count_missing(list(p.vertices)) == p.missing

    def test_surcharge_steers_around_missing(self):
        # direct missing edge 0-2 (w=2) vs H route 0-1-2 (w=1+1.5)
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.5), (0, 2, 2.0)])
        sb = SpannerBuild(g, EdgeSet(3, [0, 1]))
        cheap = weak_csssp(g, sb, 0, ReweightConfig(8, 0.5, g.w_max))
        assert cheap.constrained_path(g, 2).missing == 1
        dear = weak_csssp(g, sb, 0, ReweightConfig(1, 0.5, g.w_max))
        assert dear.constrained_path(g, 2).missing == 0
        assert dear.length[2] == 2.5 and dear.dist[2] == 2.5
