"""Randomized additive spanner constructions for weighted graphs.

All builders share one shape: a d-light initialization, seeded vertex
samples, and shortest paths (from MECSP, Weak CSSSP or plain Dijkstra
trees) added from sampled sources.  Every random choice comes from
``sampling`` streams labelled per sampled set, so a build is a pure
function of ``(graph, params)``.

Builder            guarantee (w.h.p.)                       size
-----------------  ---------------------------------------  ---------------
build_6w           d_H <= d_G + 6 W_st                      ~ n^(4/3)
build_2w_subset    d_H <= d_G + 2 W_st  for s, t in S       ~ n sqrt(|S|)
build_6w_fast      d_H <= d_G + 6 W_st                      ~ n^(4/3)
build_6wmax_fast   d_H <= d_G + max(6 W_st, 2 W_max)        ~ n^(4/3)
build_6eps_wmax    d_H <= d_G + 4 W_st + (2 + eps) W_max    ~ n^(4/3) / eps
build_4w_fast      d_H <= d_G + max(4 W_st, 2 W_max)        ~ n^(7/5)
"""
from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels as K
from .graph import EdgeSet, Graph, WorkingGraph
from .light_init import SpannerBuild, d_light_init
from .paths import ReweightConfig, mecsp, weak_csssp
from .sampling import SampleConfig, rate_heavy_hit, rate_path_hit, sample_vertices
from .shortest_paths import dijkstra

__all__ = [
    "ALGORITHMS",
    "BuildParams",
    "BuildReport",
    "build",
    "build_6w",
    "build_2w_subsetwise",
    "build_6w_fast",
    "build_6wmax_fast",
    "build_6eps_wmax",
    "build_4w_fast",
    "ceil_root",
    "log_rounds",
]

ALGORITHMS = ("6w", "2w-subset", "6w-fast", "6wmax-fast", "6eps-wmax", "4w-fast")


def ceil_root(n: int, num: int, den: int) -> int:
    """Smallest integer ``x`` with ``x**den >= n**num``, i.e. ceil(n^(num/den))."""
    if n < 0:
        raise ValueError("n must be non-negative")
    target = n**num
    x = max(0, int(round(target ** (1.0 / den))) - 1)
    while x**den < target:
        x += 1
    return x


def log_rounds(n: int) -> int:
    """``ceil(log2 n)``; scale indices run over ``0..log_rounds(n)``."""
    return (n - 1).bit_length() if n > 1 else 0


@dataclass
class BuildParams:
    seed: int = 0
    algorithm: str = "6w"
    epsilon: Optional[float] = None
    subset: Optional[Sequence[int]] = None
    d: Optional[int] = None
    heavy: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.algorithm == "6eps-wmax":
            if self.epsilon is None or not 0.0 < self.epsilon < 1.0:
                raise ValueError("6eps-wmax needs epsilon in (0, 1)")
        if self.algorithm == "2w-subset" and not self.subset:
            raise ValueError("2w-subset needs a nonempty subset")
        for name in ("d", "heavy", "l"):
            val = getattr(self, name)
            if val is not None and val < 1:
                raise ValueError(f"override {name} must be at least 1")


@dataclass
class BuildReport:
    algorithm: str
    seed: int
    n: int
    m: int
    spanner_edges: int = 0
    phases: list[str] = field(default_factory=list)
    phase_edges: list[int] = field(default_factory=list)
    phase_millis: list[float] = field(default_factory=list)
    sample_sizes: dict[str, int] = field(default_factory=dict)
    resolved: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["sample_sizes"] = [{"set": k, "size": v} for k, v in self.sample_sizes.items()]
        return out


class _Run:
    """Bookkeeping shared by the builders: phases, samples, the spanner."""

    def __init__(self, g: Graph, algorithm: str, seed: int):
        self.g = g
        self.seed = seed
        self.sb = SpannerBuild(g)
        self.report = BuildReport(algorithm, seed, g.n, g.m)

    @contextmanager
    def phase(self, name: str):
        before = self.sb.size
        t0 = time.perf_counter()
        yield
        self.report.phases.append(name)
        self.report.phase_edges.append(self.sb.size - before)
        self.report.phase_millis.append((time.perf_counter() - t0) * 1000.0)

    def sample(self, p: float, label: str) -> np.ndarray:
        verts = sample_vertices(self.g.n, SampleConfig(p, self.seed, label))
        self.report.sample_sizes[label] = int(verts.size)
        return verts

    def add_tree(self, source: int, alive: Optional[WorkingGraph] = None) -> None:
        res = dijkstra(self.g, int(source), alive)
        self.sb.add_edges(res.parent[res.parent >= 0])

    def connect(
        self,
        sources: Iterable[int],
        targets: np.ndarray,
        budget: int,
        alive: Optional[WorkingGraph] = None,
        per_pair: bool = False,
    ) -> None:
        """Add the lightest path with < ``budget`` missing edges from each source
        to each target (skipped when no such path exists).

        ``per_pair`` re-derives the path for every pair against the current
        H, as the existential construction does; the MECSP table from a
        source is reused while H is unchanged since the result is then
        identical.  Otherwise one table per source serves all targets.
        """
        g, sb = self.g, self.sb
        targets = np.asarray(targets, dtype=np.int64)
        top = budget - 1
        for v in sources:
            v = int(v)
            if not per_pair:
                t = mecsp(g, sb, v, budget, alive)
                row = min(top, t.stored_layers - 1)
                sb.add_edges(K.mecsp_collect(
                    t.F, t.parent_layer, t.parent_vertex, t.parent_edge, row, targets))
                continue
            table, size = None, -1
            for u in targets:
                if u == v:
                    continue
                if table is None or sb.size != size:
                    table, size = mecsp(g, sb, v, budget, alive), sb.size
                row = min(top, table.stored_layers - 1)
                sb.add_edges(K.mecsp_collect(
                    table.F, table.parent_layer, table.parent_vertex, table.parent_edge,
                    row, np.array([u], dtype=np.int64)))

    def finish(self) -> tuple[SpannerBuild, BuildReport]:
        self.report.spanner_edges = self.sb.size
        return self.sb, self.report


def _heavy_filter(g: Graph, threshold: int, alive: Optional[WorkingGraph] = None) -> WorkingGraph:
    """Working graph without the edges of vertices of degree >= threshold.

    Degrees are taken in the current working graph (``alive``).
    """
    if alive is None:
        alive = WorkingGraph(g)
    heavy = alive.degrees() >= threshold
    mask = alive.mask & ~(heavy[g.eu] | heavy[g.ev])
    return WorkingGraph(g, EdgeSet(g.m, np.flatnonzero(mask)))


def _scale_rounds(run: _Run, d: int, targets: np.ndarray, alive=None, per_pair=False):
    """For i = 0..ceil(log2 n): sample D_i at ln n/(d 2^i) and connect D_i to
    ``targets`` with paths of fewer than 2^(i+1) missing edges."""
    n = run.g.n
    for i in range(log_rounds(n) + 1):
        D = run.sample(rate_path_hit(n, d, 2**i), f"D{i}")
        run.connect(D, targets, 2 ** (i + 1), alive, per_pair)


def _sixw(run: _Run, params: BuildParams, per_pair: bool, alive: Optional[WorkingGraph] = None):
    g = run.g
    n = g.n
    d = params.d or ceil_root(n, 1, 3)
    run.report.resolved["d"] = d
    with run.phase("init"):
        d_light_init(g, d, alive=None if alive is None else alive.mask, into=run.sb)
    if n < 2:
        return
    with run.phase("paths"):
        R = run.sample(rate_heavy_hit(n, d), "R")
        _scale_rounds(run, d, R, alive, per_pair)


def build_6w(g: Graph, params: Optional[BuildParams] = None):
    """+6W spanner, existential form: per-pair lightest budgeted paths D_i -> R."""
    params = params or BuildParams(algorithm="6w")
    run = _Run(g, "6w", params.seed)
    _sixw(run, params, per_pair=True)
    return run.finish()


def build_6w_fast(g: Graph, params: Optional[BuildParams] = None):
    """+6W spanner with one MECSP table per sampled source."""
    params = params or BuildParams(algorithm="6w-fast")
    run = _Run(g, "6w-fast", params.seed)
    _sixw(run, params, per_pair=False)
    return run.finish()


def build_2w_subsetwise(g: Graph, subset: Iterable[int], params: Optional[BuildParams] = None):
    """+2W spanner for pairs inside ``subset``: d = ceil(sqrt|S|), paths D_i -> S."""
    S = np.unique(np.fromiter((int(s) for s in subset), dtype=np.int64))
    if S.size == 0:
        raise ValueError("subset must be nonempty")
    if S[0] < 0 or S[-1] >= g.n:
        raise ValueError("subset contains a vertex outside the graph")
    params = params or BuildParams(algorithm="2w-subset", subset=S.tolist())
    run = _Run(g, "2w-subset", params.seed)
    n = g.n
    d = params.d or ceil_root(int(S.size), 1, 2)
    run.report.resolved.update(d=d, subset_size=int(S.size))
    with run.phase("init"):
        d_light_init(g, d, into=run.sb)
    if n >= 2:
        with run.phase("paths"):
            _scale_rounds(run, d, S, per_pair=True)
    return run.finish()


def build_6wmax_fast(g: Graph, params: Optional[BuildParams] = None):
    """+max(6W, 2W_max): trees from a sample S, drop heavy vertices, then the
    fast +6W construction on what is left."""
    params = params or BuildParams(algorithm="6wmax-fast")
    run = _Run(g, "6wmax-fast", params.seed)
    n = g.n
    heavy = params.heavy or ceil_root(n, 2, 3)
    run.report.resolved["heavy"] = heavy
    alive = None
    if n >= 2:
        with run.phase("trees"):
            for s in run.sample(rate_heavy_hit(n, heavy), "S"):
                run.add_tree(s)
        alive = _heavy_filter(g, heavy)
        run.report.resolved["residual_edges"] = alive.m
    _sixw(run, params, per_pair=False, alive=alive)
    return run.finish()


def build_6eps_wmax(g: Graph, epsilon: float, params: Optional[BuildParams] = None):
    """+4W + (2+eps)W_max spanner in near-quadratic time via Weak CSSSP.

    Scales ``j`` (max degree) and ``i`` (missing edges) both run from
    ceil(log2 n) down to 0; after each ``j`` the vertices of degree >= 2^j
    lose all their edges in the working graph.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    params = params or BuildParams(algorithm="6eps-wmax", epsilon=epsilon)
    run = _Run(g, "6eps-wmax", params.seed)
    n = g.n
    d = params.d or ceil_root(n, 1, 3)
    run.report.resolved.update(d=d, epsilon=epsilon)
    with run.phase("init"):
        d_light_init(g, d, into=run.sb)
    if n < 2:
        return run.finish()
    with run.phase("paths"):
        R = run.sample(rate_heavy_hit(n, d), "R")
        alive = WorkingGraph(g)
        top = log_rounds(n)
        for j in range(top, -1, -1):
            for i in range(top, -1, -1):
                if 2**j > 2**i * d:
                    p = rate_heavy_hit(n, 2**j)
                else:
                    p = rate_path_hit(n, d, 2**i)
                cfg = ReweightConfig(2 ** (i + 1), epsilon / 2, g.w_max)
                for v in run.sample(p, f"D{j},{i}"):
                    res = weak_csssp(g, run.sb, int(v), cfg, alive)
                    run.sb.add_edges(K.tree_collect(res.parent, res.parent_vertex, R))
            alive = _heavy_filter(g, 2**j, alive)
    return run.finish()


def build_4w_fast(g: Graph, params: Optional[BuildParams] = None):
    """+max(4W, 2W_max) spanner: heavy filter, light init, trees from R,
    MECSP paths inside D."""
    params = params or BuildParams(algorithm="4w-fast")
    run = _Run(g, "4w-fast", params.seed)
    n = g.n
    heavy = params.heavy or ceil_root(n, 3, 5)
    d = params.d or ceil_root(n, 2, 5)
    l = params.l or ceil_root(n, 1, 5)
    run.report.resolved.update(heavy=heavy, d=d, l=l)
    if n < 2:
        with run.phase("init"):
            d_light_init(g, d, into=run.sb)
        return run.finish()
    with run.phase("trees"):
        for s in run.sample(rate_heavy_hit(n, heavy), "S"):
            run.add_tree(s)
    alive = _heavy_filter(g, heavy)
    run.report.resolved["residual_edges"] = alive.m
    with run.phase("init"):
        d_light_init(g, d, alive=alive.mask, into=run.sb)
    with run.phase("long-paths"):
        for r in run.sample(rate_path_hit(n, d, l), "R"):
            run.add_tree(r, alive)
    with run.phase("paths"):
        D = run.sample(rate_heavy_hit(n, d), "D")
        run.connect(D, D, l, alive)
    return run.finish()


def build(g: Graph, params: BuildParams) -> tuple[SpannerBuild, BuildReport]:
    """Dispatch on ``params.algorithm``."""
    alg = params.algorithm
    if alg == "2w-subset":
        return build_2w_subsetwise(g, params.subset or (), params)
    if alg == "6eps-wmax":
        return build_6eps_wmax(g, params.epsilon, params)  # type: ignore[arg-type]
    fn: Callable = {
        "6w": build_6w,
        "6w-fast": build_6w_fast,
        "6wmax-fast": build_6wmax_fast,
        "4w-fast": build_4w_fast,
    }[alg]
    return fn(g, params)
