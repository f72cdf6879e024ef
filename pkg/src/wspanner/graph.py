"""Weighted undirected simple graphs, edge-list I/O and random instances.

Vertices are dense ids ``0..n-1``; edges get dense ids ``0..m-1`` in input
order.  Adjacency is stored in CSR form (``indptr``/``nbr``/``eid``) so the
compiled kernels can walk it without Python objects.
"""
from __future__ import annotations

import math
import os
from collections.abc import Iterable, Iterator
from typing import Optional, Union

import numpy as np

PathLike = Union[str, "os.PathLike[str]"]

__all__ = [
    "Graph",
    "EdgeSet",
    "WorkingGraph",
    "GraphFormatError",
    "load_graph",
    "save_graph",
    "format_graph",
    "generate_gnp",
    "degree",
    "is_d_heavy",
]


class GraphFormatError(ValueError):
    """Malformed edge-list input.  ``line`` is 1-based, or None for EOF."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def readonly_ones(m: int) -> np.ndarray:
    """All-true edge mask, read-only like ``EdgeSet.mask``."""
    return _readonly(np.ones(m, dtype=np.bool_))


class Graph:
    """Immutable weighted undirected simple graph.

    >>> g = Graph(3, [(0, 1, 1.5), (1, 2, 2.0)])
    >>> g.n, g.m, g.w_max
    (3, 2, 2.0)
    >>> g.adjacency(1)
    [(0, 1.5, 0), (2, 2.0, 1)]
    """

    __slots__ = (
        "n", "m", "w_max", "eu", "ev", "ew",
        "indptr", "nbr", "eid", "_index",
    )

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]]):
        n = int(n)
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        us, vs, ws = [], [], []
        index: dict[tuple[int, int], int] = {}
        for k, (u, v, w) in enumerate(edges):
            u, v, w = int(u), int(v), float(w)
            _check_edge(n, u, v, w)
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise ValueError(f"duplicate edge {key}")
            index[key] = k
            us.append(u)
            vs.append(v)
            ws.append(w)
        self.n = n
        self.m = len(us)
        self.eu = _readonly(np.array(us, dtype=np.int64))
        self.ev = _readonly(np.array(vs, dtype=np.int64))
        self.ew = _readonly(np.array(ws, dtype=np.float64))
        self.w_max = float(self.ew.max()) if self.m else 0.0
        self._index = index

        # CSR: each edge appears once per endpoint, sorted by (vertex, edge id)
        src = np.concatenate([self.eu, self.ev])
        dst = np.concatenate([self.ev, self.eu])
        ids = np.concatenate([np.arange(self.m), np.arange(self.m)])
        order = np.lexsort((ids, src))
        self.nbr = _readonly(dst[order].astype(np.int64))
        self.eid = _readonly(ids[order].astype(np.int64))
        counts = np.bincount(src, minlength=n) if self.m else np.zeros(n, np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self.indptr = _readonly(indptr)

    # -- accessors -------------------------------------------------------
    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.eu.tolist(), self.ev.tolist(), self.ew.tolist()))

    def edge(self, e: int) -> tuple[int, int, float]:
        return int(self.eu[e]), int(self.ev[e]), float(self.ew[e])

    def edge_id(self, u: int, v: int) -> Optional[int]:
        """Id of edge {u, v}, or None if absent."""
        return self._index.get((u, v) if u < v else (v, u))

    def weight(self, u: int, v: int) -> float:
        e = self.edge_id(u, v)
        if e is None:
            raise KeyError(f"no edge between {u} and {v}")
        return float(self.ew[e])

    def adjacency(self, v: int) -> list[tuple[int, float, int]]:
        """``(neighbor, weight, edge id)`` triples of ``v`` in edge-id order."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        ids = self.eid[lo:hi]
        return list(zip(self.nbr[lo:hi].tolist(), self.ew[ids].tolist(), ids.tolist()))

    def neighbors(self, v: int) -> list[int]:
        return self.nbr[self.indptr[v]:self.indptr[v + 1]].tolist()

    def closed_neighborhood(self, v: int) -> set[int]:
        return {v, *self.neighbors(v)}

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Graph on the same vertices keeping ``edge_ids`` (renumbered in id order)."""
        ids = sorted(set(int(e) for e in edge_ids))
        return Graph(self.n, ((self.eu[e], self.ev[e], self.ew[e]) for e in ids))

    def canonical_edges(self) -> list[tuple[int, int, float]]:
        """Edges as sorted ``(min, max, w)`` triples; order-independent identity."""
        return sorted((min(u, v), max(u, v), w) for u, v, w in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.canonical_edges() == other.canonical_edges()

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.canonical_edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, w_max={self.w_max})"


def _check_edge(n: int, u: int, v: int, w: float) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex id out of range in edge ({u}, {v}) for n={n}")
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    if not (w > 0 and math.isfinite(w)):
        raise ValueError(f"edge ({u}, {v}) has non-positive or non-finite weight {w}")


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def is_d_heavy(g: Graph, v: int, d: int) -> bool:
    """True iff ``v`` has at least ``d`` neighbors."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return g.degree(v) >= d


class EdgeSet:
    """Membership mask over the edge ids of one graph.

    Backed by a numpy bool array so kernels can read it directly.  Mutate it
    only through ``add``/``update``/``discard_many`` to keep the count exact.
    """

    __slots__ = ("_mask", "_count")

    def __init__(self, m: int, ids: Iterable[int] = ()):
        self._mask = np.zeros(m, dtype=np.bool_)
        self._count = 0
        self.update(ids)

    @classmethod
    def full(cls, m: int) -> "EdgeSet":
        s = cls(m)
        s._mask[:] = True
        s._count = m
        return s

    @property
    def capacity(self) -> int:
        return len(self._mask)

    @property
    def mask(self) -> np.ndarray:
        """Read-only view of the membership array."""
        view = self._mask.view()
        view.setflags(write=False)
        return view

    def add(self, e: int) -> bool:
        if self._mask[e]:
            return False
        self._mask[e] = True
        self._count += 1
        return True

    def update(self, ids: Iterable[int]) -> int:
        """Add many ids; returns how many were new."""
        arr = np.unique(np.fromiter(ids, dtype=np.int64) if not isinstance(ids, np.ndarray)
                        else ids.astype(np.int64, copy=False))
        if arr.size == 0:
            return 0
        if arr[0] < 0 or arr[-1] >= len(self._mask):
            raise IndexError("edge id out of range")
        new = arr[~self._mask[arr]]
        self._mask[new] = True
        self._count += len(new)
        return len(new)

    def discard_many(self, ids: Iterable[int]) -> int:
        arr = np.unique(np.fromiter(ids, dtype=np.int64) if not isinstance(ids, np.ndarray)
                        else ids.astype(np.int64, copy=False))
        if arr.size == 0:
            return 0
        gone = arr[self._mask[arr]]
        self._mask[gone] = False
        self._count -= len(gone)
        return len(gone)

    def copy(self) -> "EdgeSet":
        s = EdgeSet(0)
        s._mask = self._mask.copy()
        s._count = self._count
        return s

    def ids(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def __contains__(self, e: object) -> bool:
        return bool(self._mask[e])  # type: ignore[index]

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids().tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return np.array_equal(self._mask, other._mask)

    def __repr__(self) -> str:
        return f"EdgeSet({self._count}/{len(self._mask)})"


class WorkingGraph:
    """The alive edges of ``graph`` as compact CSR (edge ids stay those of ``graph``).

    Builders that delete edges keep one of these per deletion round so that
    searches cost time proportional to the surviving edges.
    """

    __slots__ = ("graph", "edges", "indptr", "nbr", "eid")

    def __init__(self, graph: Graph, edges: Optional[EdgeSet] = None):
        self.graph = graph
        self.edges = EdgeSet.full(graph.m) if edges is None else edges
        if self.edges.capacity != graph.m:
            raise ValueError("edge set does not belong to this graph")
        keep = self.edges.mask[graph.eid]
        offsets = np.zeros(keep.size + 1, dtype=np.int64)
        np.cumsum(keep, out=offsets[1:])
        self.indptr = _readonly(offsets[graph.indptr])
        self.nbr = _readonly(graph.nbr[keep])
        self.eid = _readonly(graph.eid[keep])

    @property
    def mask(self) -> np.ndarray:
        return self.edges.mask

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def __repr__(self) -> str:
        return f"WorkingGraph({len(self.edges)}/{self.graph.m} edges)"


# -- edge-list format -----------------------------------------------------

def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise GraphFormatError("empty input, expected header 'n m'") from None
    if len(head) != 2:
        raise GraphFormatError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header values must be integers", lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count", lineno)

    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, parts in lines:
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edge lines", lineno)
        if len(parts) != 3:
            raise GraphFormatError("edge line must be 'u v w'", lineno)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"cannot parse edge {' '.join(parts)!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (w > 0 and math.isfinite(w)):
            raise GraphFormatError(f"weight must be positive and finite, got {parts[2]}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((u, v, w))
    if len(edges) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(edges)}")
    return Graph(n, edges)


def load_graph(path: PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph, edge_ids: Optional[Iterable[int]] = None) -> str:
    """Edge-list text.  Weights use ``repr`` so they read back bit-exactly."""
    ids = range(g.m) if edge_ids is None else sorted(int(e) for e in edge_ids)
    ids = list(ids)
    out = [f"{g.n} {len(ids)}"]
    for e in ids:
        out.append(f"{int(g.eu[e])} {int(g.ev[e])} {float(g.ew[e])!r}")
    return "\n".join(out) + "\n"


def save_graph(g: Graph, path: PathLike, edge_ids: Optional[Iterable[int]] = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g, edge_ids))


# -- generators -----------------------------------------------------------

def generate_gnp(n: int, p: float, w_min: float, w_max: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with weights uniform in ``[w_min, w_max]``.

    One coin and one weight are drawn per unordered pair in ``(i, j)``
    lexicographic order, so the output depends only on the arguments.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 < w_min <= w_max or not math.isfinite(w_max):
        raise ValueError(f"need 0 < w_min <= w_max, got {w_min}, {w_max}")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    iu, ju = np.triu_indices(n, k=1)
    coins = rng.random(iu.size)
    weights = rng.uniform(w_min, w_max, size=iu.size)
    keep = coins < p
    return Graph(n, zip(iu[keep], ju[keep], weights[keep]))
