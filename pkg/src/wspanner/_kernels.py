"""Compiled inner loops over CSR adjacency.

Every kernel takes the graph as ``(indptr, nbr, eid)`` plus per-edge arrays
indexed by edge id (weights, ``alive`` mask of the working graph, ``in_h``
mask of the spanner).  Heaps hold ``(key..., vertex)`` tuples, so equal keys
pop the smaller vertex id first; relaxations use strict ``<``.
"""
from __future__ import annotations

import heapq

import numpy as np
from numba import njit

INF = np.inf

# parent-layer code for the root entry of a MECSP table
ROOT = -1


@njit(cache=True)
def sssp(indptr, nbr, eid, w, surcharge, alive, in_h, source):
    """Dijkstra over alive edges on ``w(e) + surcharge * [e not in in_h]``.

    Returns ``(dist, length, phi, parent_edge, parent_vertex)`` where
    ``length`` re-sums the plain weights and ``phi`` counts edges outside
    ``in_h`` along the returned tree paths.
    """
    n = indptr.size - 1
    dist = np.full(n, INF)
    length = np.full(n, INF)
    phi = np.full(n, -1, np.int64)
    pe = np.full(n, -1, np.int64)
    pv = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    dist[source] = 0.0
    length[source] = 0.0
    phi[source] = 0
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for k in range(indptr[v], indptr[v + 1]):
            e = eid[k]
            if not alive[e]:
                continue
            t = nbr[k]
            if done[t]:
                continue
            miss = not in_h[e]
            nd = d + (w[e] + surcharge if miss else w[e])
            if nd < dist[t]:
                dist[t] = nd
                length[t] = length[v] + w[e]
                phi[t] = phi[v] + (1 if miss else 0)
                pe[t] = e
                pv[t] = v
                heapq.heappush(heap, (nd, t))
    return dist, length, phi, pe, pv


@njit(cache=True)
def bottleneck_sssp(indptr, nbr, eid, w, alive, source):
    """Dijkstra on the lexicographic key (distance, max edge on path)."""
    n = indptr.size - 1
    dist = np.full(n, INF)
    bott = np.full(n, INF)
    pe = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    dist[source] = 0.0
    bott[source] = 0.0
    heap = [(0.0, 0.0, source)]
    while heap:
        d, b, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for k in range(indptr[v], indptr[v + 1]):
            e = eid[k]
            if not alive[e]:
                continue
            t = nbr[k]
            if done[t]:
                continue
            nd = d + w[e]
            nb = b if b >= w[e] else w[e]
            if nd < dist[t] or (nd == dist[t] and nb < bott[t]):
                dist[t] = nd
                bott[t] = nb
                pe[t] = e
                heapq.heappush(heap, (nd, nb, t))
    return dist, bott, pe


@njit(cache=True)
def tree_bottleneck(eu, ev, w, dist, pe, source):
    """Max edge weight along each tree path given by parent edges."""
    n = dist.size
    order = np.argsort(dist, kind="mergesort")
    out = np.full(n, INF)
    out[source] = 0.0
    for v in order:
        if v == source or pe[v] < 0:
            continue
        e = pe[v]
        u = eu[e] if ev[e] == v else ev[e]
        b = out[u]
        out[v] = b if b >= w[e] else w[e]
    return out


@njit(cache=True)
def apsp(indptr, nbr, eid, eu, ev, w, alive, with_bottleneck):
    """All-pairs distances; optionally min and tree-path bottlenecks."""
    n = indptr.size - 1
    D = np.empty((n, n))
    if with_bottleneck:
        B = np.empty((n, n))
        T = np.empty((n, n))
    else:
        B = np.empty((0, 0))
        T = np.empty((0, 0))
    ones = np.ones(w.size, np.bool_)
    for s in range(n):
        dist, _, _, pe, _ = sssp(indptr, nbr, eid, w, 0.0, alive, ones, s)
        D[s] = dist
        if with_bottleneck:
            _, bott, _ = bottleneck_sssp(indptr, nbr, eid, w, alive, s)
            B[s] = bott
            T[s] = tree_bottleneck(eu, ev, w, dist, pe, s)
    return D, B, T


@njit(cache=True)
def _grow_f(a, rows):
    out = np.full((rows, a.shape[1]), INF)
    out[: a.shape[0]] = a
    return out


@njit(cache=True)
def _grow_i(a, rows, fill):
    out = np.full((rows, a.shape[1]), fill, np.int64)
    out[: a.shape[0]] = a
    return out


@njit(cache=True)
def mecsp(indptr, nbr, eid, w, alive, in_h, source, budget):
    """Layered Dijkstra: ``F[l, v]`` = min weight with at most ``l`` missing edges.

    Layer 0 is Dijkstra over spanner edges.  Layer ``l`` starts from layer
    ``l-1`` (carry), is seeded through missing edges out of layer ``l-1``,
    then closed under spanner edges.  Only vertices that improved in the
    previous layer can improve the next one, so each layer is seeded from
    that frontier.  Stops early once a layer equals its predecessor; all
    later layers would be identical.  Returns the computed layers only.

    Parents: ``PL`` = layer of the predecessor state (``ROOT`` at the
    source), ``PV`` its vertex, ``PE`` the edge used (-1 for a carry).
    """
    n = indptr.size - 1
    cap = budget if budget < n + 1 else n + 1
    rows = cap if cap < 4 else 4
    F = np.full((rows, n), INF)
    PL = np.full((rows, n), -2, np.int64)
    PV = np.full((rows, n), -1, np.int64)
    PE = np.full((rows, n), -1, np.int64)

    # layer 0
    F[0, source] = 0.0
    PL[0, source] = ROOT
    done = np.zeros(n, np.bool_)
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for k in range(indptr[v], indptr[v + 1]):
            e = eid[k]
            if not (alive[e] and in_h[e]):
                continue
            t = nbr[k]
            nd = d + w[e]
            if nd < F[0, t]:
                F[0, t] = nd
                PL[0, t] = 0
                PV[0, t] = v
                PE[0, t] = e
                heapq.heappush(heap, (nd, t))

    # vertices whose value changed in the last computed layer
    changed = np.isfinite(F[0])
    layers = 1
    for l in range(1, cap):
        if l == rows:
            rows = 2 * rows if 2 * rows < cap else cap
            F = _grow_f(F, rows)
            PL = _grow_i(PL, rows, -2)
            PV = _grow_i(PV, rows, -1)
            PE = _grow_i(PE, rows, -1)
        for v in range(n):
            F[l, v] = F[l - 1, v]
            PL[l, v] = l - 1
            PV[l, v] = v
            PE[l, v] = -1
        improved = np.zeros(n, np.bool_)
        for v in range(n):
            if not changed[v]:
                continue
            fv = F[l - 1, v]
            for k in range(indptr[v], indptr[v + 1]):
                e = eid[k]
                if not alive[e] or in_h[e]:
                    continue
                t = nbr[k]
                nd = fv + w[e]
                if nd < F[l, t]:
                    F[l, t] = nd
                    PL[l, t] = l - 1
                    PV[l, t] = v
                    PE[l, t] = e
                    improved[t] = True
        heap = [(0.0, 0)]
        heap.pop()
        for v in range(n):
            if improved[v]:
                heap.append((F[l, v], v))
        heapq.heapify(heap)
        done[:] = False
        while heap:
            d, v = heapq.heappop(heap)
            if done[v] or d > F[l, v]:
                continue
            done[v] = True
            for k in range(indptr[v], indptr[v + 1]):
                e = eid[k]
                if not (alive[e] and in_h[e]):
                    continue
                t = nbr[k]
                nd = d + w[e]
                if nd < F[l, t]:
                    F[l, t] = nd
                    PL[l, t] = l
                    PV[l, t] = v
                    PE[l, t] = e
                    improved[t] = True
                    heapq.heappush(heap, (nd, t))
        if not improved.any():
            break
        changed = improved
        layers = l + 1
    return F[:layers].copy(), PL[:layers].copy(), PV[:layers].copy(), PE[:layers].copy()


@njit(cache=True)
def mecsp_walk(PL, PV, PE, layer, target):
    """Vertices and edges of the table path ending at ``(layer, target)``, source first."""
    verts = [target]
    edges = [0]
    edges.pop()
    l = layer
    v = target
    while PL[l, v] != ROOT:
        e = PE[l, v]
        nl = PL[l, v]
        nv = PV[l, v]
        if e >= 0:
            edges.append(e)
            verts.append(nv)
        l = nl
        v = nv
    verts.reverse()
    edges.reverse()
    return np.array(verts, np.int64), np.array(edges, np.int64)


@njit(cache=True)
def mecsp_collect(F, PL, PV, PE, layer, targets):
    """Edge ids on the table paths to every reachable target at ``layer``.

    Walks stop at states already visited, so shared prefixes are emitted once.
    """
    L, n = F.shape
    seen = np.zeros((L, n), np.bool_)
    out = [0]
    out.pop()
    for t in targets:
        if not np.isfinite(F[layer, t]):
            continue
        l = layer
        v = t
        while PL[l, v] != ROOT and not seen[l, v]:
            seen[l, v] = True
            e = PE[l, v]
            if e >= 0:
                out.append(e)
            nl = PL[l, v]
            v = PV[l, v]
            l = nl
    return np.array(out, np.int64)


@njit(cache=True)
def tree_collect(pe, pv, targets):
    """Edge ids on parent-pointer paths to ``targets`` (unreachable skipped)."""
    n = pe.size
    seen = np.zeros(n, np.bool_)
    out = [0]
    out.pop()
    for t in targets:
        v = t
        while pe[v] >= 0 and not seen[v]:
            seen[v] = True
            out.append(pe[v])
            v = pv[v]
    return np.array(out, np.int64)


@njit(cache=True)
def light_edges(indptr, nbr, eid, w, alive, d):
    """Mark each vertex's ``d`` lightest alive incident edges (ties: smaller id)."""
    n = indptr.size - 1
    keep = np.zeros(w.size, np.bool_)
    if d <= 0:
        return keep
    for v in range(n):
        lo = indptr[v]
        hi = indptr[v + 1]
        cnt = 0
        for k in range(lo, hi):
            if alive[eid[k]]:
                cnt += 1
        if cnt == 0:
            continue
        ws = np.empty(cnt)
        ids = np.empty(cnt, np.int64)
        j = 0
        for k in range(lo, hi):
            e = eid[k]
            if alive[e]:
                ws[j] = w[e]
                ids[j] = e
                j += 1
        # eid is ascending inside a CSR row, so a stable sort on weight
        # breaks ties by edge id
        order = np.argsort(ws, kind="mergesort")
        take = d if d < cnt else cnt
        for j in range(take):
            keep[ids[order[j]]] = True
    return keep


@njit(cache=True)
def alive_degrees(indptr, eid, alive):
    n = indptr.size - 1
    deg = np.zeros(n, np.int64)
    for v in range(n):
        c = 0
        for k in range(indptr[v], indptr[v + 1]):
            if alive[eid[k]]:
                c += 1
        deg[v] = c
    return deg
