"""Exact shortest paths: plain Dijkstra, min-bottleneck Dijkstra and APSP.

Distances are float64 sums of input weights; unreachable is ``math.inf``.
Parents are edge ids with ``-1`` as the sentinel at the source and at
unreachable vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels as K
from .graph import EdgeSet, Graph, WorkingGraph, readonly_ones

__all__ = [
    "NO_PARENT",
    "SsspResult",
    "BottleneckResult",
    "ApspResult",
    "ApspTooLarge",
    "dijkstra",
    "bottleneck_dijkstra",
    "apsp",
    "DEFAULT_APSP_CAP",
]

NO_PARENT = -1
DEFAULT_APSP_CAP = 2000


class ApspTooLarge(ValueError):
    pass


EdgeFilter = Union[EdgeSet, WorkingGraph, None]


def _csr(g: Graph, edge_filter: EdgeFilter):
    """``(indptr, nbr, eid, alive)`` for the kernels."""
    if edge_filter is None:
        return g.indptr, g.nbr, g.eid, readonly_ones(g.m)
    if isinstance(edge_filter, WorkingGraph):
        if edge_filter.graph is not g:
            raise ValueError("working graph belongs to a different graph")
        w = edge_filter
        return w.indptr, w.nbr, w.eid, w.mask
    if edge_filter.capacity != g.m:
        raise ValueError("edge filter does not belong to this graph")
    return g.indptr, g.nbr, g.eid, edge_filter.mask


def _other(g: Graph, e: int, v: int) -> int:
    u = int(g.eu[e])
    return int(g.ev[e]) if u == v else u


@dataclass(frozen=True)
class SsspResult:
    source: int
    dist: np.ndarray
    parent: np.ndarray

    def reachable(self, v: int) -> bool:
        return bool(np.isfinite(self.dist[v]))

    def path_edges(self, g: Graph, v: int) -> Optional[list[int]]:
        """Edge ids of the tree path source -> v, or None if unreachable."""
        if not self.reachable(v):
            return None
        edges = []
        while v != self.source:
            e = int(self.parent[v])
            edges.append(e)
            v = _other(g, e, v)
        edges.reverse()
        return edges

    def path(self, g: Graph, v: int) -> Optional[list[int]]:
        """Vertex sequence of the tree path source -> v."""
        edges = self.path_edges(g, v)
        if edges is None:
            return None
        verts = [self.source]
        for e in edges:
            verts.append(_other(g, e, verts[-1]))
        return verts


@dataclass(frozen=True)
class BottleneckResult:
    source: int
    dist: np.ndarray
    bottleneck: np.ndarray
    parent: np.ndarray


def dijkstra(g: Graph, source: int, edge_filter: EdgeFilter = None) -> SsspResult:
    """Single-source shortest paths, optionally over the edges in ``edge_filter``.

    Ties pop the smaller vertex id first; the first strict improvement wins.
    """
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    indptr, nbr, eid, alive = _csr(g, edge_filter)
    dist, _, _, pe, _ = K.sssp(indptr, nbr, eid, g.ew, 0.0, alive, readonly_ones(g.m), source)
    return SsspResult(source, dist, pe)


def bottleneck_dijkstra(g: Graph, source: int, edge_filter: EdgeFilter = None) -> BottleneckResult:
    """Distances plus, per vertex, the smallest max-edge over all shortest paths.

    Runs Dijkstra on the key (distance, bottleneck).  Extending a path by an
    edge preserves the lexicographic order of keys, so one pass suffices.
    The source has bottleneck 0 (empty path).
    """
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    indptr, nbr, eid, alive = _csr(g, edge_filter)
    dist, bott, pe = K.bottleneck_sssp(indptr, nbr, eid, g.ew, alive, source)
    return BottleneckResult(source, dist, bott, pe)


@dataclass(frozen=True)
class ApspResult:
    """Row ``s`` holds the single-source results from ``s``.

    ``bottleneck`` is the min-bottleneck over all shortest paths;
    ``tree_bottleneck`` is the max edge on the plain Dijkstra tree path.
    Both are ``None`` when only distances were requested.
    """

    dist: np.ndarray
    bottleneck: Optional[np.ndarray] = None
    tree_bottleneck: Optional[np.ndarray] = None


def apsp(
    g: Graph,
    cap: int = DEFAULT_APSP_CAP,
    *,
    bottleneck: bool = True,
    edge_filter: EdgeFilter = None,
) -> ApspResult:
    """All-pairs distances (and bottlenecks) by ``n`` Dijkstra runs.

    Refuses graphs with more than ``cap`` vertices.
    """
    if g.n > cap:
        raise ApspTooLarge(f"apsp refused: n={g.n} exceeds cap {cap}")
    indptr, nbr, eid, alive = _csr(g, edge_filter)
    if g.n == 0:
        empty = np.empty((0, 0))
        return ApspResult(empty, empty if bottleneck else None, empty if bottleneck else None)
    D, B, T = K.apsp(indptr, nbr, eid, g.eu, g.ev, g.ew, alive, bottleneck)
    if not bottleneck:
        return ApspResult(D)
    return ApspResult(D, B, T)
