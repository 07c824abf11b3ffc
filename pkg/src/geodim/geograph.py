"""Random geometric graphs in sorted compressed-row form.

A :class:`Graph` stores every vertex's neighbours as a strictly increasing
slice of one contiguous ``indices`` array, so neighbourhood intersections
are linear merges.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, ParseError
from .pointcloud import TORUS, PointCloud, make_rng

__all__ = [
    "Graph",
    "VertexStats",
    "build_rgg",
    "brute_force_rgg",
    "vertex_stats",
    "vertex_delta",
    "count_triangles",
    "count_max_labeled_cherries",
    "count_cherries",
    "shuffle_labels",
    "read_edge_list",
    "write_edge_list",
]

# above this dimension the 3^d cell scan loses to brute force once 3^d > n
_CELL_SCAN_MAX_D = 8
_MAX_CELL_KEY = 1 << 62


class Graph:
    """Immutable undirected simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("_indptr", "_indices")

    def __init__(self, indptr, indices, check=True):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int32)
        if check:
            _validate(indptr, indices)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._indptr = indptr
        self._indices = indices

    @classmethod
    def from_edges(cls, n, edges):
        """Graph on ``n`` vertices from ``(u, v)`` pairs; repeats and reversals collapse."""
        n = int(n)
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise DomainError(f"edge endpoint outside 0..{n - 1}")
        if (e[:, 0] == e[:, 1]).any():
            raise DomainError("self-loops are not allowed")
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        keys = np.unique(rows * max(n, 1) + cols)
        rows, cols = np.divmod(keys, max(n, 1))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(indptr, cols, check=False)

    @classmethod
    def complete(cls, m):
        return cls.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])

    @property
    def n(self):
        return self._indptr.shape[0] - 1

    @property
    def indptr(self):
        return self._indptr

    @property
    def indices(self):
        return self._indices

    @property
    def edge_count(self):
        return self._indices.shape[0] // 2

    def neighbors(self, v):
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def degrees(self):
        return np.diff(self._indptr)

    def max_degree(self):
        return int(self.degrees().max()) if self.n else 0

    def edges(self):
        """``(m, 2)`` array of edges ``u < v`` in lexicographic order."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = rows < self._indices
        return np.column_stack([rows[keep], self._indices[keep].astype(np.int64)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._indptr, other._indptr) and np.array_equal(self._indices, other._indices)

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, edge_count={self.edge_count})"


def _validate(indptr, indices):
    if indptr.ndim != 1 or indptr.shape[0] < 1 or indptr[0] != 0 or indptr[-1] != indices.shape[0]:
        raise DomainError("malformed compressed adjacency")
    n = indptr.shape[0] - 1
    if (np.diff(indptr) < 0).any():
        raise DomainError("indptr must be nondecreasing")
    if indices.size == 0:
        return
    if indices.min() < 0 or indices.max() >= n:
        raise DomainError("neighbour label out of range")
    rows = np.repeat(np.arange(n), np.diff(indptr))
    if (rows == indices).any():
        raise DomainError("self-loops are not allowed")
    same_row = rows[1:] == rows[:-1]
    if (np.diff(indices.astype(np.int64))[same_row] <= 0).any():
        raise DomainError("neighbour lists must be strictly increasing")
    fwd = np.sort(rows.astype(np.int64) * n + indices)
    back = np.sort(indices.astype(np.int64) * n + rows)
    if not np.array_equal(fwd, back):
        raise DomainError("adjacency is not symmetric")


@dataclass(frozen=True)
class VertexStats:
    degree: int
    delta: int


def _check_radius(cloud, r):
    r = float(r)
    if not r > 0 or not math.isfinite(r):
        raise DomainError(f"radius must be positive, got {r!r}")
    if cloud.metric == TORUS and r > 0.5:
        raise DomainError(f"torus graphs need r <= 1/2, got {r}")
    return r


def brute_force_rgg(cloud, r):
    """All-pairs construction; O(n^2) time, used as the reference."""
    r = _check_radius(cloud, r)
    return Graph(*_kernels.brute_force_csr(cloud.points, r, cloud.metric == TORUS), check=False)


def _cells(cloud, r):
    """Integer cell coordinates and per-axis cell counts, or None to fall back."""
    pts = cloud.points
    if cloud.metric == TORUS:
        m = int(math.floor(1.0 / r))
        if m < 3:
            # wrapped neighbour offsets would alias
            return None
        coords = np.minimum((pts * m).astype(np.int64), m - 1)
        return coords, np.full(cloud.d, m, dtype=np.int64)
    lo = pts.min(axis=0)
    side = r
    while True:
        coords = np.floor((pts - lo) / side).astype(np.int64)
        counts = coords.max(axis=0) + 1
        if math.prod(int(c) for c in counts) < _MAX_CELL_KEY:
            return coords, counts
        side *= 2.0


def build_rgg(cloud, r):
    """Random geometric graph: ``i ~ j`` iff ``distance(X_i, X_j) <= r``.

    Points are bucketed into cells of side at least ``r`` (wrapped on the
    torus, bounding-box indexed otherwise) and each point scans its ``3^d``
    surrounding cells. Dimensions above 8 with ``3^d > n`` use all pairs.
    """
    r = _check_radius(cloud, r)
    if cloud.n <= 1:
        return Graph(np.zeros(cloud.n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32), check=False)
    torus = cloud.metric == TORUS
    cells = None
    if not (cloud.d > _CELL_SCAN_MAX_D and 3 ** cloud.d > cloud.n):
        cells = _cells(cloud, r)
    if cells is None:
        return Graph(*_kernels.brute_force_csr(cloud.points, r, torus), check=False)
    coords, counts = cells
    return Graph(*_kernels.cell_list_csr(cloud.points, r, torus, coords, counts), check=False)


def vertex_delta(g, v):
    """Number of edges among the neighbours of ``v``."""
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} not in graph of size {g.n}")
    return int(_kernels.local_delta(g.indptr, g.indices, int(v)))


def vertex_stats(g):
    deg = g.degrees()
    delta = _kernels.all_deltas(g.indptr, g.indices)
    return [VertexStats(int(a), int(b)) for a, b in zip(deg, delta)]


def degree_delta_arrays(g):
    """Degrees and neighbourhood edge counts as two int64 arrays."""
    return g.degrees().astype(np.int64), _kernels.all_deltas(g.indptr, g.indices)


def count_triangles(g):
    return int(_kernels.forward_triangles(g.indptr, g.indices))


def count_max_labeled_cherries(g):
    """Triples ``i < j < k`` with ``k`` adjacent to both ``i`` and ``j``.

    Depends on the labelling.
    """
    m = _kernels.lower_neighbour_counts(g.indptr, g.indices)
    return int(np.sum(m * (m - 1) // 2))


def count_cherries(g):
    """Paths of length two counted at their centre: ``sum_i C(D_i, 2)``."""
    deg = g.degrees()
    return int(np.sum(deg * (deg - 1) // 2))


def shuffle_labels(g, seed):
    """Relabel vertices by a uniformly random permutation drawn from ``seed``."""
    perm = make_rng(seed).permutation(g.n)
    return Graph(*_kernels.relabel(g.indptr, g.indices, perm), check=False)


def read_edge_list(stream):
    """Parse the ``n <count>`` / ``u v`` edge-list format."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    n = None
    edges = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(f"expected 'n <count>' header, got {line!r}", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer label in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"label out of range 0..{n - 1} in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return Graph.from_edges(n, edges)


def write_edge_list(g, stream=None):
    """Write ``n <count>`` then each edge once as ``u v`` (``u < v``), sorted.

    Returns the text when ``stream`` is None.
    """
    out = io.StringIO() if stream is None else stream
    out.write(f"n {g.n}\n")
    e = g.edges()
    if len(e):
        out.write("\n".join(f"{u} {v}" for u, v in e.tolist()))
        out.write("\n")
    if stream is None:
        return out.getvalue()
