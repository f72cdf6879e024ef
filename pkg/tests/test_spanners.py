import numpy as np
import pytest

from wspanner.graph import Graph, WorkingGraph, generate_gnp
from wspanner.shortest_paths import apsp
from wspanner.spanners import (
    ALGORITHMS,
    BuildParams,
    _heavy_filter,
    build,
    build_2w_subsetwise,
    build_4w_fast,
    build_6eps_wmax,
    build_6w,
    build_6w_fast,
    build_6wmax_fast,
    ceil_root,
    log_rounds,
)
from wspanner.verify import Bound, verify_stretch


def params_for(alg, n, seed=0):
    return BuildParams(
        seed=seed,
        algorithm=alg,
        epsilon=0.5 if alg == "6eps-wmax" else None,
        subset=list(range(0, n, 3)) if alg == "2w-subset" else None,
    )


BOUND_FOR = {
    "6w": "6w",
    "6w-fast": "6w",
    "2w-subset": "2w-subset",
    "6wmax-fast": "6wmax",
    "6eps-wmax": "6eps-wmax",
    "4w-fast": "4w",
}


def test_ceil_root_exact():
    assert ceil_root(27, 1, 3) == 3 and ceil_root(28, 1, 3) == 4
    assert ceil_root(512, 2, 3) == 64 and ceil_root(513, 2, 3) == 65
    assert ceil_root(0, 1, 3) == 0 and ceil_root(1, 3, 5) == 1
    for n in range(1, 400):
        x = ceil_root(n, 2, 5)
        assert x**5 >= n**2 and (x - 1) ** 5 < n**2


def test_log_rounds():
    assert [log_rounds(n) for n in (1, 2, 3, 4, 5, 512, 513)] == [0, 1, 2, 2, 3, 9, 10]


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            BuildParams(algorithm="nope")
        with pytest.raises(ValueError):
            BuildParams(algorithm="6eps-wmax")
        with pytest.raises(ValueError):
            BuildParams(algorithm="6eps-wmax", epsilon=1.0)
        with pytest.raises(ValueError):
            BuildParams(algorithm="2w-subset")
        with pytest.raises(ValueError):
            BuildParams(d=0)
        with pytest.raises(ValueError):
            build_6eps_wmax(Graph(2, [(0, 1, 1.0)]), 0.0)

    def test_subset_range(self):
        g = Graph(3, [(0, 1, 1.0)])
        with pytest.raises(ValueError):
            build_2w_subsetwise(g, [3])
        with pytest.raises(ValueError):
            build_2w_subsetwise(g, [])


@pytest.mark.parametrize("alg", ALGORITHMS)
class TestAllBuilders:
    def test_subgraph_and_never_shorter(self, alg):
        g = generate_gnp(40, 0.3, 1, 10, 5)
        sb, rep = build(g, params_for(alg, g.n))
        assert sb.base is g and sb.size == rep.spanner_edges
        dg = apsp(g, bottleneck=False).dist
        dh = apsp(g, bottleneck=False, edge_filter=sb.in_h).dist
        assert np.all(dh >= dg - 1e-9)

    def test_deterministic(self, alg):
        g = generate_gnp(50, 0.3, 1, 10, 6)
        a, ra = build(g, params_for(alg, g.n, seed=4))
        b, rb = build(g, params_for(alg, g.n, seed=4))
        assert a.to_text() == b.to_text()
        assert ra.sample_sizes == rb.sample_sizes and ra.phase_edges == rb.phase_edges

    def test_report_consistent(self, alg):
        g = generate_gnp(40, 0.4, 1, 10, 7)
        sb, rep = build(g, params_for(alg, g.n, seed=2))
        assert sum(rep.phase_edges) == rep.spanner_edges
        assert all(k >= 0 for k in rep.phase_edges)
        assert len(rep.phases) == len(rep.phase_millis) == len(rep.phase_edges)
        d = rep.to_dict()
        assert d["algorithm"] == alg and d["seed"] == 2
        assert all(set(x) == {"set", "size"} for x in d["sample_sizes"])

    def test_stretch_small(self, alg):
        g = generate_gnp(60, 0.3, 1, 10, 9)
        p = params_for(alg, g.n, seed=1)
        sb, _ = build(g, p)
        r = verify_stretch(g, sb, Bound.named(BOUND_FOR[alg], epsilon=0.5), pairs=p.subset)
        assert r.ok, r.violations[:3]

    def test_tiny_graphs(self, alg):
        for g in (Graph(1, []), Graph(2, [(0, 1, 3.0)]), Graph(3, [])):
            p = params_for(alg, g.n)
            if alg == "2w-subset":
                p = BuildParams(algorithm=alg, subset=[0])
            sb, _ = build(g, p)
            assert sb.size == g.m


def test_tree_input_kept_whole():
    # a path has max degree 2 <= d, so light init already keeps every edge
    g = Graph(30, [(i, i + 1, float(1 + i % 4)) for i in range(29)])
    for fn in (build_6w, build_6w_fast):
        sb, rep = fn(g)
        assert sb.size == g.m and rep.phase_edges[-1] == 0


def test_fast_adds_nothing_without_missing_edges():
    g = Graph(20, [(i, (i + 1) % 20, float(1 + (7 * i) % 5)) for i in range(20)])
    sb, rep = build_6w_fast(g)
    assert rep.phases == ["init", "paths"] and rep.phase_edges[1] == 0


def test_resolved_parameters():
    g = generate_gnp(100, 0.2, 1, 10, 1)
    assert build_6w_fast(g)[1].resolved["d"] == 5
    rep = build_2w_subsetwise(g, range(0, 100, 10))[1]
    assert rep.resolved == {"d": 4, "subset_size": 10}
    rep = build_4w_fast(g)[1]
    assert (rep.resolved["heavy"], rep.resolved["d"], rep.resolved["l"]) == (16, 7, 3)
    assert build_6wmax_fast(g)[1].resolved["heavy"] == 22


def test_overrides():
    g = generate_gnp(60, 0.3, 1, 10, 2)
    _, rep = build(g, BuildParams(algorithm="6w-fast", d=2))
    assert rep.resolved["d"] == 2
    _, rep = build(g, BuildParams(algorithm="4w-fast", heavy=100, d=3, l=2))
    assert rep.resolved["residual_edges"] == g.m


def test_sample_labels():
    g = generate_gnp(70, 0.2, 1, 10, 2)
    _, rep = build_6w_fast(g, BuildParams(algorithm="6w-fast"))
    assert list(rep.sample_sizes) == ["R"] + [f"D{i}" for i in range(log_rounds(70) + 1)]
    _, rep = build_6eps_wmax(g, 0.5)
    top = log_rounds(70)
    assert len(rep.sample_sizes) == 1 + (top + 1) ** 2


def test_same_schedule_per_pair_and_fast():
    """Both +6W builders draw identical samples for the same seed."""
    g = generate_gnp(50, 0.3, 1, 10, 3)
    _, a = build_6w(g, BuildParams(seed=8))
    _, b = build_6w_fast(g, BuildParams(seed=8, algorithm="6w-fast"))
    assert a.sample_sizes == b.sample_sizes


class TestHeavyFilter:
    def test_degrees_below_threshold(self):
        g = generate_gnp(80, 0.2, 1, 10, 4)
        wg = _heavy_filter(g, 12)
        deg = g.degrees()
        for e in wg.edges:
            assert deg[g.eu[e]] < 12 and deg[g.ev[e]] < 12
        assert wg.m == sum(1 for e in range(g.m) if deg[g.eu[e]] < 12 and deg[g.ev[e]] < 12)

    def test_uses_working_degrees(self):
        # star centre 0 with 3 leaves; edge (1,2) keeps 1 and 2 at degree 2
        g = Graph(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0)])
        first = _heavy_filter(g, 3)
        assert sorted(first.edges) == [3]
        assert _heavy_filter(g, 2, first).m == 1
        assert _heavy_filter(g, 1, first).m == 0

    def test_6eps_degree_invariant(self):
        """After the round for 2^j, the working graph has max degree < 2^j."""
        g = generate_gnp(64, 0.4, 1, 10, 1)
        wg = WorkingGraph(g)
        for j in range(log_rounds(g.n), -1, -1):
            wg = _heavy_filter(g, 2**j, wg)
            assert wg.degrees().max(initial=0) < 2**j


def test_star_6wmax():
    n = 100
    g = Graph(n, [(0, v, float(1 + v % 7)) for v in range(1, n)])
    sb, rep = build_6wmax_fast(g)
    r = verify_stretch(g, sb, Bound.named("custom", a=0.0, b=2.0))
    assert r.ok
    # a tree: the only spanning subgraph that preserves connectivity is G itself
    assert sb.size == g.m


def test_unit_weight_4w():
    g = generate_gnp(80, 0.3, 1.0, 1.0, 3)
    sb, _ = build_4w_fast(g)
    r = verify_stretch(g, sb, Bound.named("custom", a=4.0, b=0.0))
    assert r.ok and float(r.excess.max()) <= 4.0


def test_6eps_unit_weights_bound():
    g = generate_gnp(60, 0.3, 1.0, 1.0, 1)
    sb, _ = build_6eps_wmax(g, 0.5)
    dg = apsp(g, bottleneck=False).dist
    dh = apsp(g, bottleneck=False, edge_filter=sb.in_h).dist
    fin = np.isfinite(dg)
    assert np.all(dh[fin] - dg[fin] <= 6.5)
