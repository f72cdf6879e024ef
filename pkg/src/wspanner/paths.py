"""Paths under a budget of missing edges.

``mecsp`` is the layered Dijkstra that computes, for every vertex and every
``l`` below the budget, the lightest path using at most ``l`` missing edges.
``weak_csssp`` instead runs one Dijkstra after charging each missing edge a
surcharge of ``eps0 / g * W_max``; it returns near-shortest paths whose
missing-edge count is only weakly bounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .graph import Graph
from .light_init import SpannerBuild
from .shortest_paths import EdgeFilter, SsspResult, _csr

__all__ = [
    "ConstrainedPath",
    "MecspTable",
    "ReweightConfig",
    "WeakCssspResult",
    "mecsp",
    "mecsp_path",
    "weak_csssp",
]


@dataclass(frozen=True)
class ConstrainedPath:
    """A walk with its total weight and number of missing edges."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    weight: float
    missing: int

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class MecspTable:
    """Result of :func:`mecsp` from ``source`` with budget ``budget``.

    Only the layers up to convergence are stored; ``dist(l, v)`` for a
    higher ``l`` reads the last stored layer, which is what the recurrence
    would produce.
    """

    source: int
    budget: int
    F: np.ndarray
    parent_layer: np.ndarray = field(repr=False)
    parent_vertex: np.ndarray = field(repr=False)
    parent_edge: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    in_h: np.ndarray = field(repr=False)

    @property
    def stored_layers(self) -> int:
        return self.F.shape[0]

    @property
    def top(self) -> int:
        """Highest layer index, ``budget - 1``."""
        return self.budget - 1

    def _row(self, l: int) -> int:
        if not 0 <= l < self.budget:
            raise IndexError(f"layer {l} outside [0, {self.budget - 1}]")
        return min(l, self.stored_layers - 1)

    def layer(self, l: int) -> np.ndarray:
        return self.F[self._row(l)]

    def dist(self, l: int, v: int) -> float:
        return float(self.F[self._row(l), v])

    @property
    def f(self) -> np.ndarray:
        """Full ``budget x n`` table (materialized; meant for small cases)."""
        rows = [self._row(l) for l in range(self.budget)]
        return self.F[rows]

    def path(self, target: int, l: Optional[int] = None) -> Optional[ConstrainedPath]:
        return mecsp_path(self, target, self.top if l is None else l)


def mecsp(
    g: Graph,
    sb: SpannerBuild,
    source: int,
    budget: int,
    alive: EdgeFilter = None,
) -> MecspTable:
    """Lightest ``source``-paths with fewer than ``budget`` missing edges.

    ``f[l][v]`` is the minimum weight of a path from ``source`` to ``v`` using
    at most ``l`` edges outside ``sb.in_h``, for ``l`` in ``[0, budget-1]``.
    Layer ``l`` is finished before layer ``l+1`` reads it.  ``alive``
    restricts the search to a working subgraph.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    if sb.base is not g:
        raise ValueError("spanner build belongs to a different graph")
    indptr, nbr, eid, mask = _csr(g, alive)
    in_h = sb.in_h.mask
    F, PL, PV, PE = K.mecsp(indptr, nbr, eid, g.ew, mask, in_h, source, int(budget))
    return MecspTable(source, int(budget), F, PL, PV, PE, g.ew, in_h.copy())


def mecsp_path(table: MecspTable, target: int, l: int) -> Optional[ConstrainedPath]:
    """Path realizing ``f[l][target]``, or None when it is infinite."""
    row = table._row(l)
    if not np.isfinite(table.F[row, target]):
        return None
    verts, edges = K.mecsp_walk(
        table.parent_layer, table.parent_vertex, table.parent_edge, row, target
    )
    missing = int(np.count_nonzero(~table.in_h[edges])) if edges.size else 0
    return ConstrainedPath(
        tuple(verts.tolist()), tuple(edges.tolist()), float(table.F[row, target]), missing
    )


@dataclass(frozen=True)
class ReweightConfig:
    """Surcharge ``eps0 / g * w_max`` added to every missing edge."""

    g: int
    eps0: float
    w_max: float

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("missing-edge budget g must be at least 1")
        if not 0.0 < self.eps0 < 1.0:
            raise ValueError("eps0 must lie in (0, 1)")
        if self.w_max < 0:
            raise ValueError("w_max must be non-negative")

    @property
    def surcharge(self) -> float:
        return self.eps0 / self.g * self.w_max

    def delta(self, weight: float, missing: int) -> float:
        """Reweighted length of a path with the given weight and missing count."""
        return weight + missing * self.surcharge


@dataclass(frozen=True)
class WeakCssspResult(SsspResult):
    """Dijkstra tree on reweighted edges.

    ``dist`` holds reweighted distances, ``length`` the original weights of
    the same tree paths and ``missing`` their missing-edge counts.
    """

    length: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]
    missing: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]
    parent_vertex: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]

    def constrained_path(self, g: Graph, target: int) -> Optional[ConstrainedPath]:
        edges = self.path_edges(g, target)
        if edges is None:
            return None
        verts = self.path(g, target)
        return ConstrainedPath(
            tuple(verts), tuple(edges), float(self.length[target]), int(self.missing[target])
        )


def weak_csssp(
    g: Graph,
    sb: SpannerBuild,
    source: int,
    cfg: ReweightConfig,
    alive: EdgeFilter = None,
) -> WeakCssspResult:
    """Dijkstra on ``w(e) + surcharge * [e missing]``."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    if sb.base is not g:
        raise ValueError("spanner build belongs to a different graph")
    indptr, nbr, eid, mask = _csr(g, alive)
    dist, length, phi, pe, pv = K.sssp(
        indptr, nbr, eid, g.ew, cfg.surcharge, mask, sb.in_h.mask, source)
    return WeakCssspResult(source, dist, pe, length, phi, pv)
