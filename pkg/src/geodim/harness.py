"""Seeded Monte Carlo experiments on random geometric graphs.

A run is described by an :class:`ExperimentConfig` (usually loaded from a
JSON manifest). Each trial draws its points and its label permutation from
seeds derived from ``(config.seed, unit index)``, so results do not depend
on how many workers run the trials or in what order they finish.
"""

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigurationError, DomainError
from .estimators import METHODS, estimate_dimension
from .geograph import build_rgg, write_edge_list
from .pointcloud import TORUS, DensitySpec, sample_points, substream_seed
from .wd import DEFAULT_CAP, wd

__all__ = [
    "RadiusRule",
    "ExperimentConfig",
    "TrialRecord",
    "ExperimentResult",
    "CSV_COLUMNS",
    "resolve_radius",
    "run_trial",
    "run_experiment",
    "summarize",
    "write_records_csv",
    "gen_graph",
]

CSV_COLUMNS = (
    "trial", "method", "n", "d_true", "r", "W", "delta",
    "clamped", "failed", "correct", "edges", "max_degree", "seconds",
)

RULE_KINDS = ("explicit", "nrd", "n32rd")

_POINTS, _LABELS = 0, 1


@dataclass(frozen=True)
class RadiusRule:
    """How ``r`` depends on ``n``: fixed, ``n r^d = c`` or ``n^(3/2) r^d = c``."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ConfigurationError(f"unknown radius rule {self.kind!r}; expected one of {RULE_KINDS}")
        if not (self.value > 0 and math.isfinite(self.value)):
            raise ConfigurationError(f"radius rule constant must be positive, got {self.value!r}")

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict) or len(obj) != 1:
            raise ConfigurationError(f"radius_rule must be one of {{'r': v}}, {{'nrd': c}}, {{'n32rd': c}}; got {obj!r}")
        (key, value), = obj.items()
        kind = "explicit" if key == "r" else key
        try:
            return cls(kind, float(value))
        except (TypeError, ValueError):
            raise ConfigurationError(f"bad radius rule value {value!r}") from None

    def to_dict(self):
        return {"r" if self.kind == "explicit" else self.kind: self.value}


def resolve_radius(rule, n, d, torus=True):
    """Radius for sample size ``n`` in dimension ``d`` under ``rule``."""
    n = int(n)
    if n < 1:
        raise ConfigurationError(f"radius rules need n >= 1, got {n}")
    if rule.kind == "explicit":
        r = rule.value
    elif rule.kind == "nrd":
        r = (rule.value / n) ** (1.0 / d)
    else:
        r = (rule.value / n ** 1.5) ** (1.0 / d)
    if not r > 0:
        raise ConfigurationError(f"radius rule {rule.to_dict()} gives r = {r} for n = {n}")
    if torus and r > 0.5:
        raise ConfigurationError(f"radius rule {rule.to_dict()} gives r = {r:.6g} > 1/2 on the torus for n = {n}")
    return r


@dataclass(frozen=True)
class ExperimentConfig:
    density: DensitySpec
    true_d: int
    n: tuple
    radius_rule: RadiusRule
    methods: tuple = ("W2",)
    trials: int = 1
    seed: int = 0
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.density.d != self.true_d:
            raise ConfigurationError(f"density dimension {self.density.d} differs from true_d {self.true_d}")
        ns = (self.n,) if isinstance(self.n, int) else tuple(self.n)
        if not ns or any(not isinstance(v, int) or isinstance(v, bool) or v < 1 for v in ns):
            raise ConfigurationError(f"n must be a positive integer or a list of them, got {self.n!r}")
        object.__setattr__(self, "n", ns)
        methods = tuple(self.methods)
        bad = [m for m in methods if m not in METHODS]
        if not methods or bad:
            raise ConfigurationError(f"methods must be a nonempty subset of {METHODS}, got {list(methods)}")
        object.__setattr__(self, "methods", methods)
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigurationError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.cap, int) or self.cap < 1:
            raise ConfigurationError(f"cap must be a positive integer, got {self.cap!r}")
        # fail on an impossible radius before any trial runs
        for n in ns:
            resolve_radius(self.radius_rule, n, self.true_d, self.density.metric == TORUS)

    @classmethod
    def from_dict(cls, obj):
        """Build from a JSON-style mapping.

        Keys mirror the field names; ``density`` uses the string grammar
        (``torus``, ``cube``, ``gauss:sigma=1``, ``beta:a=2,b=3``) and takes its
        dimension from ``true_d``.
        """
        if not isinstance(obj, dict):
            raise ConfigurationError("experiment config must be a JSON object")
        known = {"density", "true_d", "n", "radius_rule", "methods", "trials", "seed", "cap"}
        unknown = set(obj) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys {sorted(unknown)}")
        missing = {"density", "true_d", "n", "radius_rule"} - set(obj)
        if missing:
            raise ConfigurationError(f"missing config keys {sorted(missing)}")
        try:
            density = DensitySpec.parse(obj["density"], obj["true_d"])
        except (DomainError, TypeError, AttributeError) as exc:
            raise ConfigurationError(f"bad density: {exc}") from None
        n = obj["n"]
        return cls(
            density=density,
            true_d=obj["true_d"],
            n=n if isinstance(n, int) else tuple(n),
            radius_rule=RadiusRule.from_dict(obj["radius_rule"]),
            methods=tuple(obj.get("methods", ("W2",))),
            trials=obj.get("trials", 1),
            seed=obj.get("seed", 0),
            cap=obj.get("cap", DEFAULT_CAP),
        )

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config is not valid JSON: {exc}") from None
        return cls.from_dict(obj)

    def to_dict(self):
        return {
            "density": self.density.to_string(),
            "true_d": self.true_d,
            "n": list(self.n),
            "radius_rule": self.radius_rule.to_dict(),
            "methods": list(self.methods),
            "trials": self.trials,
            "seed": self.seed,
            "cap": self.cap,
        }


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    method: str
    n: int
    d_true: int
    r: float
    W: Optional[float]
    delta: Optional[int]
    clamped: bool
    failure: Optional[str]
    edges: int
    max_degree: int
    seconds: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def correct(self):
        return self.delta is not None and self.delta == self.d_true

    def csv_row(self):
        return [
            self.trial,
            self.method,
            self.n,
            self.d_true,
            repr(self.r),
            "" if self.W is None else repr(self.W),
            "" if self.delta is None else self.delta,
            int(self.clamped),
            self.failure or "",
            int(self.correct),
            self.edges,
            self.max_degree,
            "" if self.seconds is None else f"{self.seconds:.6f}",
        ]


def run_trial(config, n_index, trial, timing=False):
    """All method records for one trial (one point cloud, one graph)."""
    n = config.n[n_index]
    unit = n_index * config.trials + trial
    torus = config.density.metric == TORUS
    r = resolve_radius(config.radius_rule, n, config.true_d, torus)
    t0 = time.perf_counter()
    cloud = sample_points(config.density, n, substream_seed(config.seed, unit, _POINTS))
    g = build_rgg(cloud, r)
    build_seconds = time.perf_counter() - t0
    label_seed = substream_seed(config.seed, unit, _LABELS)
    records = []
    for method in config.methods:
        t1 = time.perf_counter()
        out = estimate_dimension(g, method, label_seed, config.cap)
        seconds = build_seconds + time.perf_counter() - t1
        records.append(
            TrialRecord(
                trial=trial,
                method=method,
                n=n,
                d_true=config.true_d,
                r=r,
                W=out.W,
                delta=out.delta,
                clamped=out.clamped,
                failure=out.failure,
                edges=g.edge_count,
                max_degree=g.max_degree(),
                seconds=seconds if timing else None,
                diagnostics=out.diagnostics,
            )
        )
    return records


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list
    summary: list

    def to_csv(self):
        return write_records_csv(self.records)

    def summary_json(self):
        return json.dumps({"config": self.config.to_dict(), "summary": self.summary}, indent=2, sort_keys=True) + "\n"


def summarize(config, records):
    """Per ``(n, method)``: fractions correct / incorrect / failed and mean ``|W - w_d|``."""
    w_true = wd(config.true_d)
    out = []
    for n in config.n:
        for method in config.methods:
            rows = [rec for rec in records if rec.n == n and rec.method == method]
            total = len(rows)
            failed = sum(rec.failure is not None for rec in rows)
            correct = sum(rec.correct for rec in rows)
            errors = [abs(rec.W - w_true) for rec in rows if rec.W is not None]
            out.append({
                "n": n,
                "method": method,
                "trials": total,
                "fraction_correct": correct / total,
                "fraction_incorrect": (total - correct - failed) / total,
                "fraction_failed": failed / total,
                "mean_abs_error": math.fsum(errors) / len(errors) if errors else None,
                "w_true": w_true,
            })
    return out


def run_experiment(config, workers=1, timing=False):
    """Run every trial of ``config``; output order is (n, trial, method).

    ``timing`` fills the wall-clock column, which makes the CSV
    non-reproducible; leave it off when byte-identical output matters.
    """
    units = [(i, t) for i in range(len(config.n)) for t in range(config.trials)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda u: run_trial(config, u[0], u[1], timing), units))
    else:
        chunks = [run_trial(config, i, t, timing) for i, t in units]
    records = [rec for chunk in chunks for rec in chunk]
    return ExperimentResult(config, records, summarize(config, records))


def write_records_csv(records, stream=None):
    out = io.StringIO() if stream is None else stream
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    if stream is None:
        return out.getvalue()


def gen_graph(spec, n, r, seed, path=None):
    """Sample a cloud, build its graph and optionally write the edge list.

    Returns the graph.
    """
    if spec.metric == TORUS and r > 0.5:
        raise ConfigurationError(f"torus graphs need r <= 1/2, got {r}")
    g = build_rgg(sample_points(spec, n, seed), r)
    if path is not None:
        with open(path, "w", newline="\n") as fh:
            write_edge_list(g, fh)
    return g
