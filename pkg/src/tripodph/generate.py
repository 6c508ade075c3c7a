"""Seeded random instances: filtered spaces, surjections, metric spaces, diagrams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError
from .filtered import FilteredSpace, enumerate_simplices
from .metric import FiniteMetricSpace
from .persistence import PersistenceDiagram

__all__ = [
    "RandomInstanceSpec",
    "random_filtered_space",
    "random_surjection",
    "random_metric_space",
    "random_diagram",
    "generate_instance",
]


def _draw(rng, low, high, decimals):
    v = float(rng.uniform(low, high))
    return round(v, decimals) if decimals is not None else v


def random_filtered_space(rng, n: int, cap: int | None = None, low: float = 0.0,
                          high: float = 1.0, decimals: int | None = None,
                          names=None) -> FilteredSpace:
    """Monotone by construction: each simplex takes the max of a fresh draw and its faces."""
    cap = n - 1 if cap is None else cap
    names = tuple(names) if names is not None else tuple(f"v{i}" for i in range(n))
    values = {}
    for s in enumerate_simplices(n, cap):
        v = _draw(rng, low, high, decimals)
        if len(s) > 1:
            v = max(v, *(values[s[:i] + s[i + 1:]] for i in range(len(s))))
        values[s] = v
    return FilteredSpace(names, values, cap)


def random_surjection(rng, n_target: int, n_source: int) -> list[int]:
    if n_source < n_target:
        raise InvalidSpecError("a surjection needs at least as many sources as targets")
    targets = list(range(n_target)) + [int(rng.integers(n_target)) for _ in range(n_source - n_target)]
    rng.shuffle(targets)
    return targets


def random_metric_space(rng, n: int, low: float = 0.1, high: float = 1.0,
                        decimals: int | None = None) -> FiniteMetricSpace:
    """Random edge weights closed under shortest paths."""
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = _draw(rng, low, high, decimals)
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    d = np.minimum(d, d.T)
    return FiniteMetricSpace(d, tuple(f"p{i}" for i in range(n)))


def random_diagram(rng, n_points: int, degree: int = 0, low: float = 0.0, high: float = 1.0,
                   essential_prob: float = 0.0, decimals: int | None = None) -> PersistenceDiagram:
    pts = []
    for _ in range(n_points):
        b, d = sorted((_draw(rng, low, high, decimals), _draw(rng, low, high, decimals)))
        if rng.random() < essential_prob:
            d = np.inf
        pts.append((b, d))
    return PersistenceDiagram(degree, tuple(pts))


@dataclass(frozen=True)
class RandomInstanceSpec:
    kind: str  # "filtered-space" | "metric-space" | "diagram"
    n: int
    seed: int = 0
    cap: int | None = None
    low: float = 0.0
    high: float = 1.0
    decimals: int | None = None
    essential_prob: float = 0.0

    def validate(self):
        if self.kind not in ("filtered-space", "metric-space", "diagram"):
            raise InvalidSpecError(f"unknown instance kind {self.kind!r}")
        if self.n < (0 if self.kind == "diagram" else 1):
            raise InvalidSpecError(f"size {self.n} too small for {self.kind}")
        if not self.low <= self.high:
            raise InvalidSpecError("empty value range")
        if self.cap is not None and self.cap < 0:
            raise InvalidSpecError("cap must be non-negative")


def generate_instance(spec: RandomInstanceSpec) -> str:
    """Serialized instance; byte-identical for equal specs."""
    from .io import diagram_to_dict, dump_filtered_space, dumps, metric_space_to_dict

    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "filtered-space":
        return dump_filtered_space(random_filtered_space(
            rng, spec.n, spec.cap, spec.low, spec.high, spec.decimals))
    if spec.kind == "metric-space":
        low = spec.low if spec.low > 0 else 0.1
        return dumps(metric_space_to_dict(random_metric_space(rng, spec.n, low, spec.high, spec.decimals)))
    return dumps(diagram_to_dict(random_diagram(
        rng, spec.n, 0, spec.low, spec.high, spec.essential_prob, spec.decimals)))
