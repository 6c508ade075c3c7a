"""Rips and Čech filtrations of finite metric spaces, and exact Gromov–Hausdorff."""

from __future__ import annotations

from collections.abc import Hashable, Sequence
from typing import NamedTuple

import numpy as np

from .errors import NotACorrespondenceError, NotAMetricError, TooLargeError
from .filtered import FilteredSpace, enumerate_simplices
from .tripod import ATOL, Correspondence

__all__ = [
    "FiniteMetricSpace",
    "GHResult",
    "rips_filtration",
    "cech_filtration",
    "distortion",
    "gromov_hausdorff_exact",
]


class FiniteMetricSpace:
    """Named points with a validated distance matrix."""

    def __init__(self, dist, points: Sequence[Hashable] | None = None, *, atol: float = ATOL):
        d = np.array(dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
            raise NotAMetricError(f"distance matrix must be square and non-empty, got shape {d.shape}")
        n = d.shape[0]
        points = tuple(range(n)) if points is None else tuple(points)
        if len(points) != n:
            raise NotAMetricError(f"{len(points)} names for {n} points")
        if len(set(points)) != n:
            raise NotAMetricError("duplicate point names")
        if not np.all(np.isfinite(d)):
            raise NotAMetricError("distances must be finite")
        if np.any(np.diag(d) != 0):
            raise NotAMetricError("non-zero self-distance")
        if np.any(d < 0) or not np.array_equal(d, d.T):
            raise NotAMetricError("distances must be symmetric and non-negative")
        # d[i, k] <= d[i, j] + d[j, k] for all triples
        if np.any(d[:, None, :] > d[:, :, None] + d[None, :, :] + atol):
            raise NotAMetricError("triangle inequality violated")
        d.setflags(write=False)
        self.points = points
        self.dist = d

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.points == other.points and np.array_equal(self.dist, other.dist)

    def __repr__(self):
        return f"FiniteMetricSpace(n_points={len(self.points)})"

    def index(self, point) -> int:
        return self.points.index(point)


def _default_cap(space, cap):
    n = len(space)
    return n - 1 if cap is None else cap


def rips_filtration(space: FiniteMetricSpace, cap: int | None = None) -> FilteredSpace:
    """Each simplex gets its diameter; vertices get 0."""
    cap = _default_cap(space, cap)
    d = space.dist
    values = {}
    for s in enumerate_simplices(len(space), cap):
        idx = np.array(s)
        values[s] = float(d[np.ix_(idx, idx)].max())
    return FilteredSpace(space.points, values, cap, validate=False)


def cech_filtration(space: FiniteMetricSpace, cap: int | None = None) -> FilteredSpace:
    """Each simplex gets its circumradius with witnesses drawn from the whole space."""
    cap = _default_cap(space, cap)
    d = space.dist
    values = {}
    for s in enumerate_simplices(len(space), cap):
        values[s] = float(d[:, list(s)].max(axis=1).min())
    return FilteredSpace(space.points, values, cap, validate=False)


def _corr_indices(M, N, corr):
    try:
        pairs = [(M.index(x), N.index(y)) for x, y in corr]
    except (ValueError, TypeError):
        raise NotACorrespondenceError("pair outside M x N") from None
    if {i for i, _ in pairs} != set(range(len(M))) or {j for _, j in pairs} != set(range(len(N))):
        raise NotACorrespondenceError("relation does not project onto both spaces")
    return pairs


def _distortion_idx(dm, dn, pairs) -> float:
    ii = np.array([p[0] for p in pairs])
    jj = np.array([p[1] for p in pairs])
    return float(np.abs(dm[np.ix_(ii, ii)] - dn[np.ix_(jj, jj)]).max())


def distortion(M: FiniteMetricSpace, N: FiniteMetricSpace, corr) -> float:
    """Largest metric discrepancy over all pairs of pairs in ``corr``."""
    return _distortion_idx(M.dist, N.dist, _corr_indices(M, N, corr))


class GHResult(NamedTuple):
    value: float
    minimizers: list


def gromov_hausdorff_exact(M: FiniteMetricSpace, N: FiniteMetricSpace, *,
                           max_pairs: int = 12, atol: float = ATOL) -> GHResult:
    """Half the smallest distortion, by enumerating every correspondence."""
    n, m = len(M), len(N)
    if n * m > max_pairs:
        raise TooLargeError(f"|M|*|N| = {n * m} exceeds {max_pairs}")
    all_pairs = [(i, j) for i in range(n) for j in range(m)]
    full_x, full_y = (1 << n) - 1, (1 << m) - 1
    results = []
    for bits in range(1, 1 << len(all_pairs)):
        chosen = [all_pairs[k] for k in range(len(all_pairs)) if bits >> k & 1]
        cx = cy = 0
        for i, j in chosen:
            cx |= 1 << i
            cy |= 1 << j
        if cx == full_x and cy == full_y:
            results.append((_distortion_idx(M.dist, N.dist, chosen), chosen))
    best = min(c for c, _ in results)
    minimizers = [Correspondence((M.points[i], N.points[j]) for i, j in p)
                  for c, p in results if c <= best + atol]
    return GHResult(0.5 * best, minimizers)
