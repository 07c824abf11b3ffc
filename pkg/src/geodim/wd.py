"""The ball-overlap constant ``w_d`` and its inversion.

``w_d`` is the probability that two independent uniform points of the unit
ball in ``R^d`` are within distance 1 of each other. It equals
``(3/2) P{beta(1/2, (d+1)/2) >= 1/4}`` and decreases strictly to 0, so an
estimate of it identifies ``d``.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import reg_inc_beta

__all__ = ["DEFAULT_CAP", "DimensionEstimate", "wd", "wd_sum_form", "dim_from_stat", "wd_table"]

DEFAULT_CAP = 4096


def _check_dimension(d):
    if isinstance(d, bool) or not float(d).is_integer() or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    return int(d)


def wd(d):
    """Return ``w_d = (3/2) (1 - I_{1/4}(1/2, (d+1)/2))``.

    The upper tail is evaluated as ``I_{3/4}((d+1)/2, 1/2)`` so the result
    keeps its relative accuracy when ``w_d`` is tiny.
    """
    d = _check_dimension(d)
    return 1.5 * reg_inc_beta(0.5 * (d + 1), 0.5, 0.75)


def wd_sum_form(d):
    """Two-term form ``I_{1/4}(h, h) + 1 - I_{1/4}(1/2, h)`` with ``h = (d+1)/2``.

    Algebraically equal to :func:`wd`; kept as an independent cross-check.
    """
    d = _check_dimension(d)
    h = 0.5 * (d + 1)
    return reg_inc_beta(h, h, 0.25) + (1.0 - reg_inc_beta(0.5, h, 0.25))


@dataclass(frozen=True)
class DimensionEstimate:
    delta: int
    statistic: float
    evaluations: int
    clamped: bool


def dim_from_stat(W, cap=DEFAULT_CAP):
    """Invert a statistic: ``argmin_{1 <= d <= cap} |W - w_d|``.

    Doubles ``d`` until ``w_d`` drops below ``W`` and then bisects, so the
    number of ``w_d`` evaluations is ``O(log d)``. Exact midpoints go to the
    smaller dimension. Statistics at or beyond the ends of the range are
    clamped to 1 or ``cap``.
    """
    W = float(W)
    if math.isnan(W):
        raise DomainError("statistic is NaN")
    cap = _check_dimension(cap)
    cache = {}

    def w(k):
        if k not in cache:
            cache[k] = wd(k)
        return cache[k]

    def result(delta, clamped):
        return DimensionEstimate(delta, W, len(cache), clamped)

    if W >= w(1):
        return result(1, True)
    if W <= w(cap):
        return result(cap, True)

    # invariant: w(lo) > W > w(hi)
    lo, hi = 1, 2
    while hi < cap and w(hi) > W:
        lo, hi = hi, min(2 * hi, cap)
    if w(hi) == W:
        return result(hi, False)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        wm = w(mid)
        if wm == W:
            return result(mid, False)
        if wm > W:
            lo = mid
        else:
            hi = mid
    delta = lo if W - w(hi) >= w(lo) - W else hi
    return result(delta, False)


def wd_table(max_d):
    """List of ``(d, w_d)`` for ``d = 1 .. max_d``."""
    max_d = _check_dimension(max_d)
    return [(d, wd(d)) for d in range(1, max_d + 1)]
