"""Geodesics between filtered spaces and the path-length stability bound.

Along a minimizing correspondence ``T`` the two pullback filtrations are
linearly interpolated on ``Z = T``; the resulting curve of filtered spaces is
a geodesic.  Summing bottleneck distances of consecutive diagrams along it
gives a lower bound on the distance that is never worse than the bottleneck
distance of the endpoint diagrams.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bottleneck import bottleneck
from .errors import NotMinimizingError, OutOfRangeError
from .filtered import FilteredSpace, enumerate_simplices
from .persistence import diagrams
from .tripod import ATOL, Correspondence, Tripod, correspondence_cost, df_exact

__all__ = [
    "GeodesicCurve",
    "PathLengthReport",
    "SelfTestReport",
    "NoConvergenceWarning",
    "make_geodesic",
    "evaluate_geodesic",
    "geodesic_self_test",
    "diagram_path_length",
    "strengthened_lower_bound",
    "tripod_interpolation",
]


class NoConvergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class GeodesicCurve:
    X: FilteredSpace
    Y: FilteredSpace
    T: Correspondence
    distance: float
    z: tuple = field(repr=False)
    phi_x: tuple = field(repr=False)
    phi_y: tuple = field(repr=False)

    def __call__(self, t: float, cap: int | None = None) -> FilteredSpace:
        return evaluate_geodesic(self, t, cap)

    def _pullback_values(self, cap):
        # both endpoint pullbacks on Z, as aligned arrays
        cache = self.__dict__.setdefault("_cache", {})
        if cap not in cache:
            keys = list(enumerate_simplices(len(self.z), cap))
            fx = np.array([self.X.values[tuple(sorted({self.phi_x[i] for i in s}))] for s in keys])
            fy = np.array([self.Y.values[tuple(sorted({self.phi_y[i] for i in s}))] for s in keys])
            cache[cap] = (keys, fx, fy)
        return cache[cap]


def make_geodesic(X: FilteredSpace, Y: FilteredSpace, T, *, distance: float | None = None,
                  atol: float = ATOL) -> GeodesicCurve:
    """Geodesic along the correspondence ``T``, which must be minimizing.

    ``distance`` may pass a known exact distance to skip recomputing it.
    """
    T = T if isinstance(T, Correspondence) else Correspondence(T)
    T.validate(X, Y)
    cost = correspondence_cost(X, Y, T)
    if distance is None:
        distance = df_exact(X, Y).value
    if cost > distance + atol:
        raise NotMinimizingError(f"correspondence costs {cost}, the distance is {distance}")
    pairs = T.sorted_pairs(X, Y)
    return GeodesicCurve(X, Y, T, distance, tuple(pairs),
                         tuple(X.index(x) for x, _ in pairs),
                         tuple(Y.index(y) for _, y in pairs))


def evaluate_geodesic(curve: GeodesicCurve, t: float, cap: int | None = None) -> FilteredSpace:
    """The filtered space on ``Z`` at parameter ``t``.

    ``cap`` limits the stored dimension (default: the full powerset of ``Z``).
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeError(f"t = {t} outside [0, 1]")
    nz = len(curve.z)
    cap = nz - 1 if cap is None else min(cap, nz - 1)
    keys, fx, fy = curve._pullback_values(cap)
    vals = (1.0 - t) * fx + t * fy
    return FilteredSpace(curve.z, dict(zip(keys, vals.tolist())), cap, validate=False)


@dataclass
class SelfTestReport:
    distance: float
    rows: list  # (s, t, observed, expected)
    max_deviation: float

    @property
    def ok(self) -> bool:
        return self.max_deviation <= ATOL


def geodesic_self_test(curve: GeodesicCurve, samples=(0.0, 0.25, 0.5, 0.75, 1.0), *,
                       max_pairs: int = 12) -> SelfTestReport:
    """Compare exact distances between sampled points with ``|s - t|`` times the distance."""
    rows = []
    samples = sorted(set(float(s) for s in samples))
    spaces = {s: evaluate_geodesic(curve, s) for s in samples}
    for s, t in combinations(samples, 2):
        observed = df_exact(spaces[s], spaces[t], max_pairs=max_pairs).value
        rows.append((s, t, observed, (t - s) * curve.distance))
    dev = max((abs(o - e) for _, _, o, e in rows), default=0.0)
    return SelfTestReport(curve.distance, rows, dev)


@dataclass
class PathLengthReport:
    degree: int
    value: float
    partition: list
    segments: list
    sums: list = field(default_factory=list)  # partial sum at each dyadic depth
    converged: bool = True

    def to_dict(self) -> dict:
        return {"degree": self.degree, "value": self.value, "partition": self.partition,
                "segments": self.segments, "sums": self.sums, "converged": self.converged}


def diagram_path_length(curve: GeodesicCurve, k: int, tol: float = 1e-6,
                        max_depth: int = 14) -> PathLengthReport:
    """Bottleneck length of the degree-``k`` diagram path, by dyadic refinement.

    The partition is doubled until the sum of segment bottleneck distances
    grows by less than ``tol``.  Partial sums never decrease because of the
    triangle inequality; this is checked at every step.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    cap = k + 1

    def diagram_at(t):
        return diagrams(evaluate_geodesic(curve, t, cap), k)[k]

    dgms = [diagram_at(0.0), diagram_at(1.0)]
    segments = [bottleneck(dgms[0], dgms[1]).value]
    sums = [sum(segments)]
    depth, converged = 0, False
    while depth < max_depth:
        depth += 1
        n = 1 << depth
        new = []
        for i, d in enumerate(dgms[:-1]):
            new.append(d)
            new.append(diagram_at((2 * i + 1) / n))
        new.append(dgms[-1])
        dgms = new
        segments = [bottleneck(dgms[i], dgms[i + 1]).value for i in range(n)]
        total = sum(segments)
        if total < sums[-1] - ATOL:
            raise ArithmeticError(f"refinement decreased the length: {sums[-1]} -> {total}")
        sums.append(total)
        if total - sums[-2] < tol:
            converged = True
            break
    if not converged:
        warnings.warn(f"path length not converged after depth {max_depth}", NoConvergenceWarning,
                      stacklevel=2)
    n = len(segments)
    return PathLengthReport(k, sums[-1], [i / n for i in range(n + 1)], segments, sums, converged)


def strengthened_lower_bound(X: FilteredSpace, Y: FilteredSpace, k: int, tol: float = 1e-6,
                             max_depth: int = 14) -> float:
    """Largest diagram path length over all minimizing correspondences."""
    value, minimizers = df_exact(X, Y)
    best = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoConvergenceWarning)
        for T in minimizers:
            curve = make_geodesic(X, Y, T, distance=value)
            best = max(best, diagram_path_length(curve, k, tol, max_depth).value)
    return best


def tripod_interpolation(X: FilteredSpace, Y: FilteredSpace, tripod: Tripod, t: float,
                         cap: int | None = None) -> FilteredSpace:
    """Interpolated pullbacks on the parameter set of an arbitrary tripod.

    Unlike :class:`GeodesicCurve` this neither requires the tripod to be
    minimizing nor collapses it to its correspondence.
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeError(f"t = {t} outside [0, 1]")
    ix, iy = tripod.indices(X, Y)
    nz = len(tripod)
    cap = nz - 1 if cap is None else min(cap, nz - 1)
    values = {}
    for s in enumerate_simplices(nz, cap):
        fx = X.values[tuple(sorted({ix[i] for i in s}))]
        fy = Y.values[tuple(sorted({iy[i] for i in s}))]
        values[s] = (1.0 - t) * fx + t * fy
    return FilteredSpace(tripod.labels, values, cap, validate=False)
