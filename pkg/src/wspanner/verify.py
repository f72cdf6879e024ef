"""Exact certification of spanner stretch and size, and Monte Carlo checks of
the sampling lemmas the constructions rely on.

Stretch is checked pair by pair from two APSP runs (G with bottlenecks, H
with distances only).  Each pair is judged twice: against ``W_st`` taken as
the min-bottleneck over all shortest s-t paths, and against the bottleneck
of the Dijkstra tree path.  The second is never stricter, so a pair that
fails only the first is a tie-breaking artifact rather than a real failure.
"""
from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _kernels as K
from .graph import EdgeSet, Graph, generate_gnp, readonly_ones
from .light_init import SpannerBuild, d_light_init
from .sampling import SampleConfig, rate_heavy_hit, rate_path_hit, sample_vertices
from .shortest_paths import DEFAULT_APSP_CAP, apsp
from .spanners import BuildReport

__all__ = [
    "Bound",
    "BOUND_NAMES",
    "StretchReport",
    "SubgraphError",
    "verify_stretch",
    "verify_size",
    "size_trend_ok",
    "SamplingVerdict",
    "verify_sampling_lemmas",
    "spanner_edge_set",
]

ABS_SLACK = 1e-9


class SubgraphError(ValueError):
    """The claimed spanner uses an edge (or weight) not present in G."""


@dataclass(frozen=True)
class Bound:
    """Allowed excess ``a*W_st + b*W_max`` (``combine="sum"``) or
    ``max(a*W_st, b*W_max)`` (``combine="max"``)."""

    name: str
    a: float
    b: float = 0.0
    combine: str = "sum"
    subset_only: bool = False

    def allowed(self, w_st, w_max: float):
        if self.combine == "max":
            return np.maximum(self.a * np.asarray(w_st), self.b * w_max)
        return self.a * np.asarray(w_st) + self.b * w_max

    @classmethod
    def named(cls, name: str, epsilon: Optional[float] = None,
              a: Optional[float] = None, b: Optional[float] = None) -> "Bound":
        if name == "6w":
            return cls("6w", 6.0)
        if name == "2w-subset":
            return cls("2w-subset", 2.0, subset_only=True)
        if name == "6wmax":
            return cls("max(6w,2wmax)", 6.0, 2.0, "max")
        if name == "4w":
            return cls("max(4w,2wmax)", 4.0, 2.0, "max")
        if name == "6eps-wmax":
            if epsilon is None:
                raise ValueError("bound 6eps-wmax needs epsilon")
            return cls(f"4wst+{2 + epsilon:g}wmax", 4.0, 2.0 + epsilon)
        if name == "custom":
            if a is None or b is None:
                raise ValueError("custom bound needs both coefficients")
            return cls(f"custom({a:g}w+{b:g}wmax)", float(a), float(b))
        raise ValueError(f"unknown bound {name!r}; choose from {BOUND_NAMES}")


BOUND_NAMES = ("6w", "2w-subset", "6wmax", "6eps-wmax", "4w", "custom")


def spanner_edge_set(g: Graph, h: Union[SpannerBuild, Graph, EdgeSet]) -> EdgeSet:
    """Edge ids of G used by ``h``; raises SubgraphError if ``h`` is not a subgraph."""
    if isinstance(h, SpannerBuild):
        if h.base is g:
            return h.in_h
        h = h.to_graph()
    if isinstance(h, EdgeSet):
        if h.capacity != g.m:
            raise SubgraphError("edge set size does not match the graph")
        return h
    if h.n != g.n:
        raise SubgraphError(f"spanner has {h.n} vertices, graph has {g.n}")
    ids = []
    for u, v, w in h.edges:
        e = g.edge_id(u, v)
        if e is None:
            raise SubgraphError(f"spanner edge ({u}, {v}) is not in the graph")
        if float(g.ew[e]) != w:
            raise SubgraphError(
                f"spanner edge ({u}, {v}) has weight {w}, graph has {float(g.ew[e])}")
        ids.append(e)
    return EdgeSet(g.m, ids)


def _fmt(x: float):
    return x if math.isfinite(x) else "inf"


@dataclass
class StretchReport:
    bound: Bound
    w_max: float
    s: np.ndarray
    t: np.ndarray
    d_g: np.ndarray
    d_h: np.ndarray
    w_min: np.ndarray
    w_tree: np.ndarray
    excess: np.ndarray
    violating: np.ndarray
    tree_violating: np.ndarray
    seeds: list[int] = field(default_factory=list)

    @property
    def pairs_checked(self) -> int:
        return int(self.s.size)

    @property
    def violations(self) -> list[tuple[int, int, float, float, float, float]]:
        """Pairs over the bound with the min-bottleneck ``W_st``."""
        return self._records(self.violating)

    @property
    def tree_violations(self) -> list[tuple[int, int, float, float, float, float]]:
        """Pairs over the bound even with the tree-path ``W_st``."""
        return self._records(self.tree_violating)

    @property
    def ok(self) -> bool:
        return not self.violating.any()

    def _records(self, sel: np.ndarray):
        return [
            (int(a), int(b), float(x), float(y), float(w), float(e))
            for a, b, x, y, w, e in zip(
                self.s[sel], self.t[sel], self.d_g[sel], self.d_h[sel],
                self.w_min[sel], self.excess[sel])
        ]

    @property
    def max_excess_ratio(self) -> float:
        """max excess / allowed over pairs with a positive allowance (<= 1 iff no violation)."""
        allowed = self.bound.allowed(self.w_min, self.w_max)
        pos = allowed > 0
        worst = float(np.max(self.excess[pos] / allowed[pos])) if pos.any() else 0.0
        if (~pos).any() and np.any(self.excess[~pos] > 0):
            return math.inf
        return worst

    @property
    def max_excess_over_wst(self) -> float:
        """max excess / W_st (W_st > 0 for every connected pair s != t)."""
        if self.s.size == 0:
            return 0.0
        return float(np.max(self.excess / self.w_min))

    def to_dict(self) -> dict:
        def rows(recs):
            return [[s, t, _fmt(dg), _fmt(dh), w, _fmt(e)] for s, t, dg, dh, w, e in recs]

        return {
            "bound": self.bound.name,
            "pairs_checked": self.pairs_checked,
            "violations": rows(self.violations),
            "tree_violations": rows(self.tree_violations),
            "max_excess_ratio": _fmt(self.max_excess_ratio),
            "max_excess_over_wst": _fmt(self.max_excess_over_wst),
            "seeds": list(self.seeds),
        }


def verify_stretch(
    g: Graph,
    h: Union[SpannerBuild, Graph, EdgeSet],
    bound: Bound,
    pairs: Optional[Iterable[int]] = None,
    *,
    cap: int = DEFAULT_APSP_CAP,
    seeds: Iterable[int] = (),
) -> StretchReport:
    """Check ``d_H(s,t) <= d_G(s,t) + allowed(W_st)`` for every pair s < t.

    ``pairs`` restricts the check to pairs inside a vertex subset (required
    for subset bounds).  Pairs disconnected in G are skipped; a pair
    connected in G but not in H is always a violation.
    """
    if bound.subset_only and pairs is None:
        raise ValueError(f"bound {bound.name} needs the vertex subset")
    in_h = spanner_edge_set(g, h)
    if g.n > cap:
        raise ValueError(f"verification refused: n={g.n} exceeds cap {cap}")
    full = apsp(g, cap)
    sub = apsp(g, cap, bottleneck=False, edge_filter=in_h)

    if pairs is None:
        verts = np.arange(g.n)
    else:
        verts = np.unique(np.fromiter((int(v) for v in pairs), dtype=np.int64))
        if verts.size and (verts[0] < 0 or verts[-1] >= g.n):
            raise ValueError("pair subset contains a vertex outside the graph")
    iu, ju = np.triu_indices(verts.size, k=1)
    s, t = verts[iu], verts[ju]
    d_g = full.dist[s, t]
    keep = np.isfinite(d_g)
    s, t, d_g = s[keep], t[keep], d_g[keep]
    d_h = sub.dist[s, t]
    w_min = full.bottleneck[s, t]
    w_tree = full.tree_bottleneck[s, t]
    with np.errstate(invalid="ignore"):
        excess = d_h - d_g
    slack = ABS_SLACK * (1.0 + d_g)
    violating = excess > bound.allowed(w_min, g.w_max) + slack
    tree_violating = excess > bound.allowed(w_tree, g.w_max) + slack
    return StretchReport(bound, g.w_max, s, t, d_g, d_h, w_min, w_tree, excess,
                         violating, tree_violating, list(seeds))


def verify_size(
    report_or_edges: Union[BuildReport, int],
    g: Graph,
    exponent: float,
    polylog_power: int = 0,
) -> float:
    """``edges / (n^exponent * (log2 n)^polylog_power)``."""
    edges = (report_or_edges.spanner_edges if isinstance(report_or_edges, BuildReport)
             else int(report_or_edges))
    if edges == 0:
        return 0.0
    n = g.n
    scale = n**exponent * max(math.log2(n), 1.0) ** polylog_power
    return edges / scale


def size_trend_ok(ratios, start: int = 1, band: float = 0.25) -> bool:
    """True iff ``ratios[k+1] <= (1 + band) * ratios[k]`` for every ``k >= start``."""
    r = list(ratios)
    return all(r[k + 1] <= (1.0 + band) * r[k] for k in range(start, len(r) - 1))


# -- sampling lemmas ----------------------------------------------------------

@dataclass
class SamplingVerdict:
    trials: int
    n: int
    d: int
    l: int
    threshold: float
    successes: dict[str, int]
    vacuous: dict[str, int]

    def rate(self, event: str) -> float:
        return self.successes[event] / self.trials

    @property
    def rates(self) -> dict[str, float]:
        return {k: self.rate(k) for k in self.successes}

    def passed(self, event: str) -> bool:
        return self.rate(event) >= self.threshold

    @property
    def ok(self) -> bool:
        return all(self.passed(k) for k in self.successes)


EVENTS = ("heavy_hit", "path_neighborhood_hit", "vertex_hit", "path_hit")


def _tree_path(pe: np.ndarray, pv: np.ndarray, t: int) -> tuple[list[int], list[int]]:
    verts, edges = [t], []
    while pe[t] >= 0:
        edges.append(int(pe[t]))
        t = int(pv[t])
        verts.append(t)
    verts.reverse()
    edges.reverse()
    return verts, edges


def _most_missing_path(g: Graph, in_h: np.ndarray):
    """Dijkstra-tree shortest path with the most missing edges (ties: smallest (s, t))."""
    alive = readonly_ones(g.m)
    best = (-1, 0, 0, None, None)
    for s in range(g.n):
        _, _, phi, pe, pv = K.sssp(g.indptr, g.nbr, g.eid, g.ew, 0.0, alive, in_h, s)
        t = int(np.argmax(phi))
        if phi[t] > best[0]:
            best = (int(phi[t]), s, t, pe, pv)
    phi, s, t, pe, pv = best
    if pe is None:
        return 0, [0], []
    verts, edges = _tree_path(pe, pv, t)
    return phi, verts, edges


def verify_sampling_lemmas(
    trials: int,
    n: int,
    d: int,
    l: int,
    *,
    p_edge: float = 0.3,
    seed: int = 0,
    w_range: tuple[float, float] = (1.0, 10.0),
) -> SamplingVerdict:
    """Empirical success rates of the hitting events, one G(n, p_edge) per trial.

    Events per trial:

    ``heavy_hit``  sample at 2 ln n/d; every vertex of degree >= d has a
        sampled vertex in its closed neighborhood.
    ``path_neighborhood_hit``  for the chosen path pi, sample at ln n/k with
        k = |N[pi]|; N[pi] contains a sampled vertex.
    ``vertex_hit``  after d-light init, sample D at 2 ln n/d; every endpoint
        of a missing edge of pi has an H-edge of weight <= W(pi) into D.
    ``path_hit``  if pi has >= l missing edges, sample R at ln n/(d l); some
        vertex of pi has an H-edge of weight <= W(pi) into R.

    pi is the shortest path (Dijkstra tree) with the most missing edges and
    W(pi) its heaviest edge.  Trials where an event's hypothesis is empty
    count as successes and are tallied in ``vacuous``.
    """
    if trials < 100:
        raise ValueError("use at least 100 trials")
    if n < 2 or d < 1 or l < 1:
        raise ValueError("need n >= 2, d >= 1, l >= 1")
    successes = dict.fromkeys(EVENTS, 0)
    vacuous = dict.fromkeys(EVENTS, 0)
    for trial in range(trials):
        g = generate_gnp(n, p_edge, w_range[0], w_range[1], (seed * 1_000_003 + trial) % 2**64)
        tag = f"trial{trial}"

        # neighborhoods of d-heavy vertices
        S = np.zeros(n, np.bool_)
        S[sample_vertices(n, SampleConfig(rate_heavy_hit(n, d), seed, tag + ":S"))] = True
        heavy = np.flatnonzero(g.degrees() >= d)
        if heavy.size == 0:
            vacuous["heavy_hit"] += 1
        if all(S[u] or S[g.neighbors(int(u))].any() for u in heavy):
            successes["heavy_hit"] += 1

        sb = d_light_init(g, d)
        in_h = sb.in_h.mask
        phi, verts, edges = _most_missing_path(g, in_h)
        w_pi = max((float(g.ew[e]) for e in edges), default=0.0)

        closed = set(verts)
        for v in verts:
            closed.update(g.neighbors(v))
        k = len(closed)
        if k >= 2:
            P = np.zeros(n, np.bool_)
            rate = min(1.0, math.log(n) / k)
            P[sample_vertices(n, SampleConfig(rate, seed, tag + ":P"))] = True
            if P[list(closed)].any():
                successes["path_neighborhood_hit"] += 1
        else:
            vacuous["path_neighborhood_hit"] += 1
            successes["path_neighborhood_hit"] += 1

        # light H-edges of weight <= W(pi) out of each vertex
        def hit(u: int, sample: np.ndarray) -> bool:
            for x, w, e in g.adjacency(u):
                if in_h[e] and w <= w_pi and sample[x]:
                    return True
            return False

        D = np.zeros(n, np.bool_)
        D[sample_vertices(n, SampleConfig(rate_heavy_hit(n, d), seed, tag + ":D"))] = True
        ends = sorted({x for e in edges if not in_h[e] for x in g.edge(e)[:2]})
        if not ends:
            vacuous["vertex_hit"] += 1
        if all(hit(u, D) for u in ends):
            successes["vertex_hit"] += 1

        if phi < l:
            vacuous["path_hit"] += 1
            successes["path_hit"] += 1
        else:
            R = np.zeros(n, np.bool_)
            R[sample_vertices(n, SampleConfig(rate_path_hit(n, d, l), seed, tag + ":R"))] = True
            if any(hit(r, R) for r in verts):
                successes["path_hit"] += 1
    return SamplingVerdict(trials, n, d, l, 1.0 - 5.0 / n, successes, vacuous)
