"""Compiled loops behind :mod:`geodim.geograph`.

Every kernel works on a CSR adjacency ``(indptr, indices)`` with sorted
rows, or on points already bucketed into cells. All of them release the GIL
so separate graphs can be processed from separate threads.
"""

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def _sqdist(points, i, j, torus):
    s = 0.0
    for k in range(points.shape[1]):
        diff = abs(points[i, k] - points[j, k])
        if torus and 1.0 - diff < diff:
            diff = 1.0 - diff
        s += diff * diff
    return s


@njit(**_JIT)
def brute_force_csr(points, r, torus):
    n = points.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            if np.sqrt(_sqdist(points, i, j, torus)) <= r:
                deg[i] += 1
                deg[j] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(deg)
    indices = np.empty(indptr[n], dtype=np.int32)
    fill = indptr[:-1].copy()
    # i increases in the outer loop, so rows come out sorted
    for i in range(n):
        for j in range(i + 1, n):
            if np.sqrt(_sqdist(points, i, j, torus)) <= r:
                indices[fill[i]] = j
                fill[i] += 1
                indices[fill[j]] = i
                fill[j] += 1
    return indptr, indices


@njit(**_JIT)
def _grow(buf, need):
    out = np.empty(max(2 * buf.shape[0], need), dtype=buf.dtype)
    out[:buf.shape[0]] = buf
    return out


@njit(**_JIT)
def pairs_to_csr(n, pu, pv, count):
    """Symmetric CSR with sorted rows from a list of unordered pairs.

    Two counting-sort passes: bucket each directed edge by its target, then
    sweep targets in increasing order appending to the source row.
    """
    deg = np.zeros(n, dtype=np.int64)
    for e in range(count):
        deg[pu[e]] += 1
        deg[pv[e]] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(deg)
    bucket = np.empty(2 * count, dtype=np.int32)
    fill = indptr[:-1].copy()
    for e in range(count):
        a = pu[e]
        b = pv[e]
        bucket[fill[b]] = a
        fill[b] += 1
        bucket[fill[a]] = b
        fill[a] += 1
    indices = np.empty(2 * count, dtype=np.int32)
    fill[:] = indptr[:-1]
    for y in range(n):
        for t in range(indptr[y], indptr[y + 1]):
            x = bucket[t]
            indices[fill[x]] = y
            fill[x] += 1
    return indptr, indices


@njit(**_JIT)
def cell_list_csr(points, r, torus, coords, counts):
    """Fixed-radius neighbours via a cell list.

    ``coords`` holds each point's integer cell coordinates and ``counts`` the
    number of cells per axis; cells have side at least ``r`` (and, on the
    torus, at least 3 cells per axis). Points are sorted by cell so each
    cell is a contiguous block, and every pair of adjacent cells is visited
    once through the forward half of the ``3^d`` stencil.
    """
    n, d = points.shape
    strides = np.ones(d, dtype=np.int64)
    for k in range(1, d):
        strides[k] = strides[k - 1] * counts[k - 1]
    total_cells = strides[d - 1] * counts[d - 1]
    keys = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for k in range(d):
            keys[i] += coords[i, k] * strides[k]
    order = np.argsort(keys, kind="mergesort")
    sorted_keys = keys[order]

    ncell = 0
    for t in range(n):
        if t == 0 or sorted_keys[t] != sorted_keys[t - 1]:
            ncell += 1
    cell_keys = np.empty(ncell, dtype=np.int64)
    starts = np.empty(ncell + 1, dtype=np.int64)
    c = 0
    for t in range(n):
        if t == 0 or sorted_keys[t] != sorted_keys[t - 1]:
            cell_keys[c] = sorted_keys[t]
            starts[c] = t
            c += 1
    starts[ncell] = n
    dense = total_cells <= 4 * n + (1 << 16)
    slot = np.full(total_cells if dense else 0, -1, dtype=np.int64)
    if dense:
        for c in range(ncell):
            slot[cell_keys[c]] = c

    noff = 3 ** d
    centre = (noff - 1) // 2
    offsets = np.empty((noff - centre - 1, d), dtype=np.int64)
    for o in range(centre + 1, noff):
        rem = o
        for k in range(d):
            offsets[o - centre - 1, k] = rem % 3 - 1
            rem //= 3

    r2 = r * r
    # squared comparison except in a thin band where rounding could differ from sqrt(q) <= r
    r2_lo = r2 * (1.0 - 1e-12)
    r2_hi = r2 * (1.0 + 1e-12)
    spt = np.ascontiguousarray(points.T)[:, order]
    cap = max(1024, 4 * n)
    pu = np.empty(cap, dtype=np.int32)
    pv = np.empty(cap, dtype=np.int32)
    count = 0
    acc = np.empty(n, dtype=np.float64)
    cell = np.empty(d, dtype=np.int64)
    for a in range(ncell):
        a0 = starts[a]
        a1 = starts[a + 1]
        for k in range(d):
            cell[k] = coords[order[a0], k]
        # o == -1 is the cell itself, where only later points are paired
        for o in range(-1, offsets.shape[0]):
            if o < 0:
                b = a
            else:
                key = 0
                inside = True
                for k in range(d):
                    ck = cell[k] + offsets[o, k]
                    if torus:
                        if ck < 0:
                            ck += counts[k]
                        elif ck >= counts[k]:
                            ck -= counts[k]
                    elif ck < 0 or ck >= counts[k]:
                        inside = False
                        break
                    key += ck * strides[k]
                if not inside:
                    continue
                if dense:
                    b = slot[key]
                    if b < 0:
                        continue
                else:
                    b = np.searchsorted(cell_keys, key)
                    if b >= ncell or cell_keys[b] != key:
                        continue
            b1 = starts[b + 1]
            need = count + (a1 - a0) * (b1 - starts[b])
            if need > pu.shape[0]:
                pu = _grow(pu, need)
                pv = _grow(pv, need)
            for s in range(a0, a1):
                b0 = s + 1 if o < 0 else starts[b]
                nb = b1 - b0
                acc[:nb] = 0.0
                for k in range(d):
                    x = spt[k, s]
                    col = spt[k]
                    for t in range(nb):
                        diff = abs(x - col[b0 + t])
                        if torus:
                            diff = min(diff, 1.0 - diff)
                        acc[t] += diff * diff
                for t in range(nb):
                    q = acc[t]
                    if q < r2_lo or (q <= r2_hi and np.sqrt(q) <= r):
                        pu[count] = order[s]
                        pv[count] = order[b0 + t]
                        count += 1
    return pairs_to_csr(n, pu, pv, count)


@njit(**_JIT)
def _intersect_count(a, b):
    i = 0
    j = 0
    count = 0
    while i < a.shape[0] and j < b.shape[0]:
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            count += 1
            i += 1
            j += 1
    return count


@njit(**_JIT)
def local_delta(indptr, indices, v):
    row = indices[indptr[v]:indptr[v + 1]]
    twice = 0
    for t in range(row.shape[0]):
        u = row[t]
        twice += _intersect_count(row, indices[indptr[u]:indptr[u + 1]])
    return twice // 2


@njit(**_JIT)
def all_deltas(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for v in range(n):
        out[v] = local_delta(indptr, indices, v)
    return out


@njit(**_JIT)
def forward_triangles(indptr, indices):
    """Triangles counted once each, along the orientation ``u < v < w``."""
    n = indptr.shape[0] - 1
    total = 0
    for u in range(n):
        row_u = indices[indptr[u]:indptr[u + 1]]
        a0 = np.searchsorted(row_u, u, side="right")
        for t in range(a0, row_u.shape[0]):
            v = row_u[t]
            row_v = indices[indptr[v]:indptr[v + 1]]
            b0 = np.searchsorted(row_v, v, side="right")
            total += _intersect_count(row_u[t + 1:], row_v[b0:])
    return total


@njit(**_JIT)
def lower_neighbour_counts(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for k in range(n):
        out[k] = np.searchsorted(indices[indptr[k]:indptr[k + 1]], k)
    return out


@njit(**_JIT)
def relabel(indptr, indices, perm):
    """Adjacency of the graph with vertex ``v`` renamed ``perm[v]``."""
    n = indptr.shape[0] - 1
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        deg[perm[v]] = indptr[v + 1] - indptr[v]
    new_indptr = np.zeros(n + 1, dtype=np.int64)
    new_indptr[1:] = np.cumsum(deg)
    new_indices = np.empty(indices.shape[0], dtype=np.int32)
    for v in range(n):
        start = new_indptr[perm[v]]
        for t in range(indptr[v], indptr[v + 1]):
            new_indices[start + t - indptr[v]] = perm[indices[t]]
        new_indices[start:start + indptr[v + 1] - indptr[v]].sort()
    return new_indptr, new_indices
