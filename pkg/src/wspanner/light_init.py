"""Spanner-in-progress state and d-light initialization."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Optional

import numpy as np

from . import _kernels as K
from .graph import EdgeSet, Graph, format_graph, readonly_ones

__all__ = ["SpannerBuild", "InvalidPath", "d_light_init", "count_missing_on_path", "add_path"]


class InvalidPath(ValueError):
    pass


class SpannerBuild:
    """A subgraph H of ``base`` being grown by a construction.

    ``in_h`` holds the edge ids of H; an edge of ``base`` is *missing* when
    it is not in ``in_h``.  ``d`` records the light-init parameter (0 if the
    build was never initialized).
    """

    def __init__(self, base: Graph, in_h: Optional[EdgeSet] = None, d: int = 0):
        self.base = base
        self.in_h = EdgeSet(base.m) if in_h is None else in_h
        if self.in_h.capacity != base.m:
            raise ValueError("edge set does not belong to the base graph")
        self.d = d

    @classmethod
    def full(cls, g: Graph) -> "SpannerBuild":
        return cls(g, EdgeSet.full(g.m))

    @property
    def size(self) -> int:
        return len(self.in_h)

    def missing(self, e: int) -> bool:
        return e not in self.in_h

    def missing_ids(self) -> np.ndarray:
        return np.flatnonzero(~self.in_h.mask)

    def path_edge_ids(self, path: Sequence[int]) -> list[int]:
        """Edge ids along a vertex sequence; raises on non-adjacent steps."""
        ids = []
        for a, b in zip(path, path[1:]):
            e = self.base.edge_id(int(a), int(b))
            if e is None:
                raise InvalidPath(f"vertices {a} and {b} are not adjacent")
            ids.append(e)
        return ids

    def count_missing(self, path: Sequence[int]) -> int:
        return sum(1 for e in self.path_edge_ids(path) if self.missing(e))

    def add_path(self, path: Sequence[int]) -> int:
        """Put every edge of ``path`` into H.  Returns the number of new edges."""
        return self.in_h.update(self.path_edge_ids(path))

    def add_edges(self, ids: Iterable[int]) -> int:
        return self.in_h.update(ids)

    def edge_ids(self) -> np.ndarray:
        return self.in_h.ids()

    def to_graph(self) -> Graph:
        """H as a standalone graph (edge ids renumbered)."""
        return self.base.subgraph(self.in_h.ids())

    def to_text(self) -> str:
        return format_graph(self.base, self.in_h.ids())

    def copy(self) -> "SpannerBuild":
        return SpannerBuild(self.base, self.in_h.copy(), self.d)

    def __repr__(self) -> str:
        return f"SpannerBuild(n={self.base.n}, |H|={self.size}/{self.base.m}, d={self.d})"


def light_edge_mask(g: Graph, d: int, alive: Optional[np.ndarray] = None) -> np.ndarray:
    """Bool mask of edges that are among the ``d`` lightest of either endpoint."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if alive is None:
        alive = readonly_ones(g.m)
    return K.light_edges(g.indptr, g.nbr, g.eid, g.ew, alive, int(d))


def d_light_init(
    g: Graph,
    d: int,
    *,
    alive: Optional[np.ndarray] = None,
    into: Optional[SpannerBuild] = None,
) -> SpannerBuild:
    """H = union over vertices of their ``d`` lightest incident edges.

    Equal weights are ordered by edge id.  With ``alive`` given, only those
    edges count (degrees and weights in the working graph).  With ``into``
    given, the light edges are added to that build instead of a new one.
    """
    keep = light_edge_mask(g, d, alive)
    sb = SpannerBuild(g) if into is None else into
    sb.add_edges(np.flatnonzero(keep))
    sb.d = int(d)
    return sb


def count_missing_on_path(sb: SpannerBuild, path: Sequence[int]) -> int:
    return sb.count_missing(path)


def add_path(sb: SpannerBuild, path: Sequence[int]) -> None:
    sb.add_path(path)
