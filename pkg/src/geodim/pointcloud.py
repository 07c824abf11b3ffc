"""Sampling densities, point clouds and the torus / Euclidean metrics.

Random streams come from :class:`numpy.random.Generator` on a PCG64 bit
generator. A 64-bit ``seed`` is always expanded through
:class:`numpy.random.SeedSequence`; a trial's substream is derived from the
entropy pair ``(seed, trial)``, see :func:`substream_seed`.
"""

import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ParseError
from .specfun import unit_ball_volume

__all__ = [
    "TORUS",
    "EUCLIDEAN",
    "DensitySpec",
    "PointCloud",
    "BallMass",
    "make_rng",
    "substream_seed",
    "sample_points",
    "sample_unit_ball",
    "distance",
    "pairwise_distances",
    "ball_mass",
    "read_cloud_csv",
    "write_cloud_csv",
]

TORUS = "torus"
EUCLIDEAN = "euclidean"
METRICS = (TORUS, EUCLIDEAN)

KINDS = ("uniform-torus", "uniform-cube", "gaussian-isotropic", "product-beta")
_SHORT_NAMES = {"torus": "uniform-torus", "cube": "uniform-cube", "gauss": "gaussian-isotropic", "beta": "product-beta"}

_SEED_MASK = (1 << 64) - 1


def make_rng(seed):
    """PCG64 generator for a 64-bit seed (negative or wider seeds are masked)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & _SEED_MASK)))


def substream_seed(seed, index, purpose=0):
    """Derive an independent 64-bit seed for unit ``index`` of a run.

    The mapping depends only on its arguments, so trials can run in any
    order or on any worker and still see the same randomness.
    """
    ss = np.random.SeedSequence([int(seed) & _SEED_MASK, int(index), int(purpose)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class DensitySpec:
    """One of the built-in sampling densities on ``R^d``.

    ``uniform-torus`` lives on ``[0, 1)^d`` with wraparound distances; all
    other kinds use the Euclidean metric.
    """

    kind: str
    d: int
    sigma: float = 1.0
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown density kind {self.kind!r}; expected one of {KINDS}")
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"gaussian scale must be positive, got {self.sigma!r}")
        if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"beta shapes must be positive, got a={self.a!r}, b={self.b!r}")

    @property
    def metric(self):
        return TORUS if self.kind == "uniform-torus" else EUCLIDEAN

    @classmethod
    def parse(cls, text, d):
        """Parse ``torus``, ``cube``, ``gauss:sigma=<v>`` or ``beta:a=<v>,b=<v>``."""
        name, _, rest = text.strip().partition(":")
        kind = _SHORT_NAMES.get(name, name)
        params = {}
        if rest:
            for item in rest.split(","):
                key, eq, value = item.partition("=")
                if not eq:
                    raise DomainError(f"bad density parameter {item!r} in {text!r}")
                try:
                    params[key.strip()] = float(value)
                except ValueError:
                    raise DomainError(f"bad density parameter {item!r} in {text!r}") from None
        allowed = {"gaussian-isotropic": {"sigma"}, "product-beta": {"a", "b"}}.get(kind, set())
        if kind == "product-beta" and set(params) != {"a", "b"}:
            raise DomainError(f"beta density needs a= and b=, got {text!r}")
        if not set(params) <= allowed:
            raise DomainError(f"unexpected parameters {sorted(set(params) - allowed)} for {kind}")
        return cls(kind, d, **params)

    def to_string(self):
        if self.kind == "gaussian-isotropic":
            return f"gauss:sigma={self.sigma!r}"
        if self.kind == "product-beta":
            return f"beta:a={self.a!r},b={self.b!r}"
        return "torus" if self.kind == "uniform-torus" else "cube"

    def draw(self, rng, n):
        if self.kind in ("uniform-torus", "uniform-cube"):
            return rng.random((n, self.d))
        if self.kind == "gaussian-isotropic":
            return self.sigma * rng.standard_normal((n, self.d))
        return rng.beta(self.a, self.b, size=(n, self.d))


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    metric: str = EUCLIDEAN
    d: int = field(init=False)
    n: int = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True, ndmin=2)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise DomainError(f"points must be an (n, d) array with d >= 1, got shape {pts.shape}")
        if self.metric not in METRICS:
            raise DomainError(f"unknown metric {self.metric!r}")
        if self.metric == TORUS and pts.size and not ((pts >= 0.0) & (pts < 1.0)).all():
            raise DomainError("torus coordinates must lie in [0, 1)")
        if not np.isfinite(pts).all():
            raise DomainError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "n", pts.shape[0])
        object.__setattr__(self, "d", pts.shape[1])

    @classmethod
    def empty(cls, d, metric=EUCLIDEAN):
        return cls(np.zeros((0, d)), metric)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.metric == other.metric and np.array_equal(self.points, other.points)

    __hash__ = None


def sample_points(spec, n, seed):
    """``n`` i.i.d. draws from ``spec``; a pure function of ``(spec, n, seed)``."""
    if not isinstance(spec, DensitySpec):
        raise DomainError(f"expected a DensitySpec, got {type(spec).__name__}")
    n = int(n)
    if n < 0:
        raise DomainError(f"sample size must be nonnegative, got {n}")
    pts = spec.draw(make_rng(seed), n)
    if spec.metric == TORUS:
        # rng.random is in [0, 1) already; this guards the invariant anyway
        pts[pts >= 1.0] = 0.0
    return PointCloud(pts.reshape(n, spec.d), spec.metric)


def sample_unit_ball(d, n, seed):
    """Uniform points in the unit ball: Gaussian direction times ``U^(1/d)``."""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    n = int(n)
    if n < 0:
        raise DomainError(f"sample size must be nonnegative, got {n}")
    return PointCloud(_unit_ball(make_rng(seed), int(d), n), EUCLIDEAN)


def _unit_ball(rng, d, n):
    g = rng.standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1)
    # a zero Gaussian vector has probability 0; redraw to stay exact
    while n and (norms == 0).any():
        bad = norms == 0
        g[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(g, axis=1)
    radius = rng.random(n) ** (1.0 / d)
    return g * (radius / norms)[:, None] if n else g


def _displacement(metric, diff):
    diff = np.abs(diff)
    if metric == TORUS:
        diff = np.minimum(diff, 1.0 - diff)
    return diff


def distance(metric, x, y):
    """Distance between two points under ``metric`` ("torus" or "euclidean")."""
    if metric not in METRICS:
        raise DomainError(f"unknown metric {metric!r}")
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DomainError(f"dimension mismatch: {x.size} vs {y.size}")
    if metric == TORUS and not (((x >= 0) & (x < 1)).all() and ((y >= 0) & (y < 1)).all()):
        raise DomainError("torus coordinates must lie in [0, 1)")
    return float(np.sqrt(np.sum(_displacement(metric, x - y) ** 2)))


def pairwise_distances(metric, points):
    """Dense ``(n, n)`` distance matrix; O(n^2) memory, for oracles and small inputs."""
    pts = np.asarray(points, dtype=np.float64)
    diff = _displacement(metric, pts[:, None, :] - pts[None, :, :])
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


class BallMass(NamedTuple):
    mass: float
    stderr: float


def ball_mass(spec, x, r, mc_samples=100_000, seed=0):
    """Probability mass that ``spec`` puts on the ball ``B(x, r)``.

    Exact ``V_d r^d`` for the torus (requires ``r <= 1/2``); otherwise a
    Monte Carlo estimate from ``mc_samples`` draws, returned with its
    standard error.
    """
    r = float(r)
    if not r > 0 or not math.isfinite(r):
        raise DomainError(f"radius must be positive, got {r!r}")
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size != spec.d:
        raise DomainError(f"point has dimension {x.size}, density has {spec.d}")
    if spec.metric == TORUS:
        if r > 0.5:
            raise DomainError(f"torus ball mass needs r <= 1/2, got {r}")
        return BallMass(unit_ball_volume(spec.d) * r ** spec.d, 0.0)
    mc_samples = int(mc_samples)
    if mc_samples < 1:
        raise DomainError("need at least one Monte Carlo sample")
    rng = make_rng(seed)
    hits = 0
    done = 0
    while done < mc_samples:
        m = min(1 << 20, mc_samples - done)
        pts = spec.draw(rng, m)
        hits += int(np.count_nonzero(np.sum((pts - x) ** 2, axis=1) <= r * r))
        done += m
    p = hits / mc_samples
    return BallMass(p, math.sqrt(p * (1.0 - p) / mc_samples))


def write_cloud_csv(cloud, stream=None):
    """Write a cloud as CSV with a ``# d=<d> metric=<metric>`` header.

    Coordinates use ``repr`` so reading back is exact. Returns the text when
    ``stream`` is None.
    """
    out = io.StringIO() if stream is None else stream
    out.write(f"# d={cloud.d} metric={cloud.metric}\n")
    for row in cloud.points:
        out.write(",".join(repr(float(v)) for v in row))
        out.write("\n")
    if stream is None:
        return out.getvalue()


def read_cloud_csv(stream):
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header = stream.readline()
    fields = dict(item.split("=", 1) for item in header.lstrip("#").split() if "=" in item)
    if not header.startswith("#") or "d" not in fields or "metric" not in fields:
        raise ParseError("expected header '# d=<d> metric=<torus|euclidean>'", 1)
    try:
        d = int(fields["d"])
    except ValueError:
        raise ParseError(f"bad dimension {fields['d']!r}", 1) from None
    rows = []
    for lineno, line in enumerate(stream, start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(v) for v in line.split(",")]
        except ValueError:
            raise ParseError(f"bad coordinate in {line!r}", lineno) from None
        if len(row) != d:
            raise ParseError(f"expected {d} coordinates, got {len(row)}", lineno)
        rows.append(row)
    pts = np.array(rows, dtype=np.float64).reshape(len(rows), d)
    try:
        return PointCloud(pts, fields["metric"])
    except DomainError as exc:
        raise ParseError(str(exc)) from None
