"""Clustering statistics that estimate ``w_d``, and the dimension estimate.

All four statistics compare triangles with paths of length two:

* ``W1`` -- local clustering at the lowest-labelled vertex of maximum degree;
* ``W2`` -- triangles over cherries whose centre has the largest label;
* ``W3`` -- mean local clustering over vertices of degree at least 2;
* ``W4`` -- local clustering at the vertex labelled 0.

``W1``, ``W2`` and ``W4`` depend on the labelling and assume labels were
assigned uniformly at random; :func:`estimate_dimension` shuffles first.
``W2sym`` is the label-free variant ``3 * triangles / cherries``.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .geograph import (
    count_cherries,
    count_max_labeled_cherries,
    count_triangles,
    shuffle_labels,
    vertex_delta,
)
from .errors import DomainError
from .pointcloud import make_rng
from .wd import DEFAULT_CAP, dim_from_stat

__all__ = [
    "METHODS",
    "DEGENERATE_DEGREE",
    "EMPTY_DENOMINATOR",
    "EstimatorOutcome",
    "w1",
    "w2",
    "w2_symmetric",
    "w3",
    "w4",
    "estimate_dimension",
]

METHODS = ("W1", "W2", "W2sym", "W3", "W4")
LABEL_DEPENDENT = frozenset({"W1", "W2", "W4"})

DEGENERATE_DEGREE = "degenerate-degree"
EMPTY_DENOMINATOR = "empty-denominator"


@dataclass(frozen=True)
class EstimatorOutcome:
    """A statistic ``W`` (and its dimension) or the reason it is undefined."""

    method: str
    W: Optional[float] = None
    delta: Optional[int] = None
    clamped: bool = False
    failure: Optional[str] = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.W is None) == (self.failure is None):
            raise ValueError("exactly one of W and failure must be set")
        if self.W is None and self.delta is not None:
            raise ValueError("a failed outcome carries no dimension")

    @property
    def ok(self):
        return self.failure is None

    def with_dimension(self, cap=DEFAULT_CAP):
        if not self.ok:
            return self
        est = dim_from_stat(self.W, cap)
        return EstimatorOutcome(self.method, self.W, est.delta, est.clamped, None, self.diagnostics)

    def to_dict(self):
        return {
            "method": self.method,
            "W": self.W,
            "delta": self.delta,
            "clamped": self.clamped,
            "failure": self.failure,
            "diagnostics": dict(self.diagnostics),
        }


def _pairs(k):
    return k * (k - 1) // 2


def _local(method, g, v, extra):
    D = int(g.indptr[v + 1] - g.indptr[v])
    diag = dict(extra, vertex=int(v), degree=D)
    if D < 2:
        return EstimatorOutcome(method, failure=DEGENERATE_DEGREE, diagnostics=diag)
    delta = vertex_delta(g, v)
    diag["delta"] = delta
    return EstimatorOutcome(method, W=delta / _pairs(D), diagnostics=diag)


def _max_degree_vertex(g, rank):
    """Vertex of maximum degree with the smallest ``rank`` (its label)."""
    deg = g.degrees()
    top = np.flatnonzero(deg == deg.max())
    return int(top[np.argmin(rank[top])])


def w1(g):
    """``delta_M / C(D_M, 2)`` with ``M`` the smallest label of maximum degree."""
    if g.n == 0:
        return EstimatorOutcome("W1", failure=DEGENERATE_DEGREE, diagnostics={})
    M = _max_degree_vertex(g, np.arange(g.n))
    return _local("W1", g, M, {})


def w2(g):
    """Triangles over max-labelled cherries (label dependent)."""
    tri = count_triangles(g)
    den = count_max_labeled_cherries(g)
    diag = {"triangles": tri, "denominator": den}
    if den == 0:
        return EstimatorOutcome("W2", failure=EMPTY_DENOMINATOR, diagnostics=diag)
    return EstimatorOutcome("W2", W=tri / den, diagnostics=diag)


def w2_symmetric(g):
    tri = count_triangles(g)
    den = count_cherries(g)
    diag = {"triangles": tri, "denominator": den}
    if den == 0:
        return EstimatorOutcome("W2sym", failure=EMPTY_DENOMINATOR, diagnostics=diag)
    return EstimatorOutcome("W2sym", W=3 * tri / den, diagnostics=diag)


def w3(g):
    """Average of ``delta_i / C(D_i, 2)`` over vertices with ``D_i >= 2``."""
    deg = g.degrees().astype(np.int64)
    delta = _kernels.all_deltas(g.indptr, g.indices)
    keep = deg >= 2
    q = int(np.count_nonzero(keep))
    diag = {"qualifying": q}
    if q == 0:
        return EstimatorOutcome("W3", failure=EMPTY_DENOMINATOR, diagnostics=diag)
    d = deg[keep]
    ratios = delta[keep] / (d * (d - 1) // 2)
    return EstimatorOutcome("W3", W=math.fsum(ratios) / q, diagnostics=diag)


def w4(g):
    """Local clustering ``delta_0 / C(D_0, 2)`` at the vertex labelled 0."""
    if g.n == 0:
        return EstimatorOutcome("W4", failure=DEGENERATE_DEGREE, diagnostics={})
    return _local("W4", g, 0, {})


_STATISTICS = {"W1": w1, "W2": w2, "W2sym": w2_symmetric, "W3": w3, "W4": w4}


def statistic(g, method):
    try:
        return _STATISTICS[method](g)
    except KeyError:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}") from None


def estimate_dimension(g, method, seed=0, cap=DEFAULT_CAP):
    """Shuffle labels (for label-dependent methods), compute ``W``, invert to ``d``.

    For ``W1`` and ``W4`` only the images of a few vertices under the random
    permutation matter, so the relabelled graph is never materialised; the
    outcome is the same as ``w1(shuffle_labels(g, seed))``.
    """
    if method not in _STATISTICS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if method in ("W1", "W4") and g.n:
        perm = make_rng(seed).permutation(g.n)
        if method == "W1":
            out = _local("W1", g, _max_degree_vertex(g, perm), {})
        else:
            out = _local("W4", g, int(np.argmin(perm)), {})
    elif method in LABEL_DEPENDENT:
        out = statistic(shuffle_labels(g, seed), method)
    else:
        out = statistic(g, method)
    return out.with_dimension(cap)
