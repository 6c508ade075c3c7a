"""scikit-learn style wrappers.

The transformers map collections of objects (metric spaces, filtered spaces,
diagram lists) to collections of other objects, and the distance estimators
turn a fitted reference collection into a distance matrix, so the pieces
compose in a :class:`sklearn.pipeline.Pipeline`::

    make_pipeline(RipsFiltration(cap=2), PersistenceDiagrams(k_max=1),
                  BottleneckDistance(degree=1)).fit(train).transform(test)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bottleneck import bottleneck
from .filtered import FilteredSpace
from .metric import FiniteMetricSpace, cech_filtration, rips_filtration
from .persistence import PersistenceDiagram, diagrams, is_prime
from .tripod import df_exact, df_upper

__all__ = [
    "check_metric_spaces",
    "check_filtered_spaces",
    "check_diagram_lists",
    "RipsFiltration",
    "CechFiltration",
    "PersistenceDiagrams",
    "BottleneckDistance",
    "TripodDistance",
]


def check_metric_spaces(X) -> list[FiniteMetricSpace]:
    """Accept metric spaces or square distance matrices; a single one is wrapped."""
    if isinstance(X, FiniteMetricSpace) or (isinstance(X, np.ndarray) and X.ndim == 2):
        X = [X]
    out = []
    for i, m in enumerate(X):
        if not isinstance(m, FiniteMetricSpace):
            try:
                m = FiniteMetricSpace(m)
            except ValueError as exc:
                raise ValueError(f"sample {i}: {exc}") from None
        out.append(m)
    if not out:
        raise ValueError("expected at least one metric space")
    return out


def check_filtered_spaces(X) -> list[FilteredSpace]:
    if isinstance(X, FilteredSpace):
        X = [X]
    X = list(X)
    for i, s in enumerate(X):
        if not isinstance(s, FilteredSpace):
            raise TypeError(f"sample {i}: expected FilteredSpace, got {type(s).__name__}")
    if not X:
        raise ValueError("expected at least one filtered space")
    return X


def check_diagram_lists(X, degree: int) -> list[PersistenceDiagram]:
    """Extract the degree-``degree`` diagram from each sample.

    A sample may be a single diagram or the list returned by
    :func:`~tripodph.persistence.diagrams`.
    """
    out = []
    for i, sample in enumerate(X):
        if isinstance(sample, PersistenceDiagram):
            out.append(sample)
            continue
        try:
            out.append(next(d for d in sample if d.degree == degree))
        except (StopIteration, TypeError, AttributeError):
            raise ValueError(f"sample {i}: no degree-{degree} diagram") from None
    if not out:
        raise ValueError("expected at least one sample")
    return out


class _Stateless(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        self._validate_params_()
        self.n_samples_fit_ = len(self._check(X))
        return self

    def _validate_params_(self):
        pass


class RipsFiltration(_Stateless):
    """Metric spaces to Rips filtered spaces (simplex value = diameter)."""

    def __init__(self, cap=None):
        self.cap = cap

    _check = staticmethod(check_metric_spaces)

    def _validate_params_(self):
        if self.cap is not None and self.cap < 0:
            raise ValueError("cap must be non-negative")

    def transform(self, X):
        check_is_fitted(self, "n_samples_fit_")
        return [rips_filtration(m, self.cap) for m in check_metric_spaces(X)]


class CechFiltration(RipsFiltration):
    """Metric spaces to Čech filtered spaces (simplex value = ambient circumradius)."""

    def transform(self, X):
        check_is_fitted(self, "n_samples_fit_")
        return [cech_filtration(m, self.cap) for m in check_metric_spaces(X)]


class PersistenceDiagrams(_Stateless):
    """Filtered spaces to lists of diagrams in degrees ``0..k_max``."""

    def __init__(self, k_max=1, field_prime=2, keep_diagonal=False):
        self.k_max = k_max
        self.field_prime = field_prime
        self.keep_diagonal = keep_diagonal

    _check = staticmethod(check_filtered_spaces)

    def _validate_params_(self):
        if self.k_max < 0:
            raise ValueError("k_max must be non-negative")
        if not is_prime(self.field_prime):
            raise ValueError(f"field_prime must be prime, got {self.field_prime}")

    def transform(self, X):
        check_is_fitted(self, "n_samples_fit_")
        return [diagrams(s, self.k_max, self.field_prime, self.keep_diagonal)
                for s in check_filtered_spaces(X)]


class BottleneckDistance(TransformerMixin, BaseEstimator):
    """Bottleneck distances from each sample to every fitted sample."""

    def __init__(self, degree=0):
        self.degree = degree

    def fit(self, X, y=None):
        self.diagrams_ = check_diagram_lists(X, self.degree)
        return self

    def transform(self, X):
        check_is_fitted(self, "diagrams_")
        rows = check_diagram_lists(X, self.degree)
        return np.array([[bottleneck(a, b).value for b in self.diagrams_] for a in rows])


class TripodDistance(TransformerMixin, BaseEstimator):
    """Distances between filtered spaces, exact or as a local-search upper bound."""

    def __init__(self, mode="exact", budget=2000, random_state=0, capped=False):
        self.mode = mode
        self.budget = budget
        self.random_state = random_state
        self.capped = capped

    def fit(self, X, y=None):
        if self.mode not in ("exact", "heuristic"):
            raise ValueError(f"mode must be 'exact' or 'heuristic', got {self.mode!r}")
        self.spaces_ = check_filtered_spaces(X)
        return self

    def _one(self, a, b):
        if self.mode == "exact":
            return df_exact(a, b, capped=self.capped).value
        return df_upper(a, b, self.budget, self.random_state, capped=self.capped)[0]

    def transform(self, X):
        check_is_fitted(self, "spaces_")
        return np.array([[self._one(a, b) for b in self.spaces_] for a in check_filtered_spaces(X)])
