"""Distance between filtered spaces through common parametrizations.

A tripod ``(Z, phi_x, phi_y)`` parametrizes both spaces from one finite set;
its cost is the sup-norm gap between the two pullback filtrations on ``Z``.
The distance is the infimum of that cost.  Every tripod has the same cost as
the correspondence ``{(phi_x(z), phi_y(z))}`` it induces, so exact
computation only needs to search the finitely many correspondences.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    CapTooLowForExactError,
    EmptyCompositeError,
    EnumerationBoundExceededError,
    NotACorrespondenceError,
    NotSurjectiveError,
    TooLargeError,
)
from .filtered import FilteredSpace, simplex_mask

__all__ = [
    "ATOL",
    "Tripod",
    "Correspondence",
    "DFResult",
    "tripod_cost",
    "correspondence_cost",
    "df_exact",
    "df_upper",
    "compose_tripods",
]

ATOL = 1e-9


class Correspondence(frozenset):
    """A set of ``(x, y)`` vertex-name pairs projecting onto both spaces."""

    def __new__(cls, pairs: Iterable[tuple[Hashable, Hashable]] = ()):
        return super().__new__(cls, (tuple(p) for p in pairs))

    @classmethod
    def identity(cls, space: FilteredSpace) -> Correspondence:
        return cls((v, v) for v in space.vertices)

    @classmethod
    def from_tripod(cls, tripod: Tripod) -> Correspondence:
        return cls(zip(tripod.phi_x, tripod.phi_y))

    def validate(self, X: FilteredSpace, Y: FilteredSpace) -> None:
        xs, ys = set(), set()
        for pair in self:
            if len(pair) != 2:
                raise NotACorrespondenceError(f"malformed pair {pair!r}")
            x, y = pair
            if x not in X._index or y not in Y._index:
                raise NotACorrespondenceError(f"pair {pair!r} is not in X x Y")
            xs.add(x)
            ys.add(y)
        if len(xs) != X.n_vertices or len(ys) != Y.n_vertices:
            raise NotACorrespondenceError("relation does not project onto both spaces")

    def sorted_pairs(self, X: FilteredSpace, Y: FilteredSpace) -> list[tuple]:
        return sorted(self, key=lambda p: (X.index(p[0]), Y.index(p[1])))

    def as_tripod(self, X: FilteredSpace | None = None, Y: FilteredSpace | None = None) -> Tripod:
        pairs = self.sorted_pairs(X, Y) if X is not None and Y is not None else sorted(self, key=repr)
        return Tripod(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), tuple(pairs))

    def __repr__(self):
        return f"Correspondence({sorted(self, key=repr)!r})"


@dataclass(frozen=True)
class Tripod:
    """Two maps out of a common parameter set ``Z = range(len(phi_x))``.

    ``phi_x[i]`` and ``phi_y[i]`` are the vertex names that parameter ``i``
    maps to; ``labels`` optionally names the parameters.
    """

    phi_x: tuple
    phi_y: tuple
    labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "phi_x", tuple(self.phi_x))
        object.__setattr__(self, "phi_y", tuple(self.phi_y))
        if len(self.phi_x) != len(self.phi_y):
            raise ValueError("both maps need the same domain")
        if not self.phi_x:
            raise ValueError("a tripod needs a non-empty parameter set")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(len(self.phi_x))))
        elif len(self.labels) != len(self.phi_x):
            raise ValueError("one label per parameter")

    def __len__(self):
        return len(self.phi_x)

    @classmethod
    def identity(cls, space: FilteredSpace) -> Tripod:
        return cls(space.vertices, space.vertices, space.vertices)

    def indices(self, X: FilteredSpace, Y: FilteredSpace) -> tuple[list[int], list[int]]:
        try:
            ix = [X.index(x) for x in self.phi_x]
            iy = [Y.index(y) for y in self.phi_y]
        except KeyError as exc:
            raise NotSurjectiveError(f"tripod maps outside its targets: {exc}") from None
        if len(set(ix)) != X.n_vertices or len(set(iy)) != Y.n_vertices:
            raise NotSurjectiveError("tripod maps are not both surjective")
        return ix, iy


def _require_full(X: FilteredSpace, Y: FilteredSpace, capped: bool) -> None:
    if not capped and not (X.is_full and Y.is_full):
        raise CapTooLowForExactError(
            "exact distance needs full powerset filtrations; pass capped=True "
            "to compare the capped filtrations instead")


def tripod_cost(X: FilteredSpace, Y: FilteredSpace, tripod: Tripod, *,
                capped: bool = False, max_size: int = 16) -> float:
    """Largest pullback gap over every non-empty subset of the parameter set.

    With ``capped`` the subsets whose image exceeds either dimension cap are
    skipped; otherwise both spaces must filter their full powersets.
    """
    if len(tripod) > max_size:
        raise EnumerationBoundExceededError(
            f"{len(tripod)} parameters exceed the enumeration bound {max_size}")
    ix, iy = tripod.indices(X, Y)
    _require_full(X, Y, capped)
    m = len(tripod)
    img_x = np.zeros(1 << m, dtype=np.int64)
    img_y = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        lo, hi = 1 << i, 1 << (i + 1)
        img_x[lo:hi] = img_x[:lo] | (1 << ix[i])
        img_y[lo:hi] = img_y[:lo] | (1 << iy[i])
    gaps = np.abs(X.mask_table()[img_x[1:]] - Y.mask_table()[img_y[1:]])
    gaps = gaps[~np.isnan(gaps)]
    return float(gaps.max()) if gaps.size else 0.0


class _PairCost:
    """Cost of correspondences between two fixed spaces.

    Precomputes, for every pair of stored simplices ``(s, t)``, the value gap
    ``|F_X(s) - F_Y(t)|``.  A correspondence only decides which pairs are
    compatible: ``s`` and ``t`` are compatible when every vertex of ``s`` has a
    partner in ``t`` and vice versa.
    """

    def __init__(self, X: FilteredSpace, Y: FilteredSpace, capped: bool = False):
        _require_full(X, Y, capped)
        self.X, self.Y = X, Y
        sx, sy = X.simplices(), Y.simplices()
        self.n, self.m = X.n_vertices, Y.n_vertices
        self.mask_y = np.array([simplex_mask(t) for t in sy], dtype=np.int64)
        self.mask_x = np.array([simplex_mask(s) for s in sx], dtype=np.int64)
        self.inc_x = np.zeros((len(sx), self.n))
        for a, s in enumerate(sx):
            self.inc_x[a, list(s)] = 1.0
        self.inc_y = np.zeros((len(sy), self.m))
        for b, t in enumerate(sy):
            self.inc_y[b, list(t)] = 1.0
        fx = np.array([X.values[s] for s in sx])
        fy = np.array([Y.values[t] for t in sy])
        self.gap = np.abs(fx[:, None] - fy[None, :])

    def __call__(self, pairs: Iterable[tuple[int, int]]) -> float:
        nbr_x = np.zeros(self.n, dtype=np.int64)
        nbr_y = np.zeros(self.m, dtype=np.int64)
        for i, j in pairs:
            nbr_x[i] |= 1 << j
            nbr_y[j] |= 1 << i
        # miss_x[x, b]: vertex x has no partner inside Y-simplex b
        miss_x = ((nbr_x[:, None] & self.mask_y[None, :]) == 0).astype(float)
        miss_y = ((nbr_y[:, None] & self.mask_x[None, :]) == 0).astype(float)
        bad = (self.inc_x @ miss_x) + (self.inc_y @ miss_y).T
        gaps = self.gap[bad == 0]
        return float(gaps.max()) if gaps.size else 0.0

    def to_indices(self, corr: Correspondence) -> list[tuple[int, int]]:
        corr.validate(self.X, self.Y)
        return [(self.X.index(x), self.Y.index(y)) for x, y in corr]

    def to_correspondence(self, pairs) -> Correspondence:
        vx, vy = self.X.vertices, self.Y.vertices
        return Correspondence((vx[i], vy[j]) for i, j in pairs)


def correspondence_cost(X: FilteredSpace, Y: FilteredSpace, corr: Correspondence, *,
                        capped: bool = False) -> float:
    """Largest value gap over simplex pairs that ``corr`` makes compatible.

    Equal to :func:`tripod_cost` of the tripod ``(corr, pi_1, pi_2)``.
    """
    if not isinstance(corr, Correspondence):
        corr = Correspondence(corr)
    cost = _PairCost(X, Y, capped)
    return cost(cost.to_indices(corr))


class DFResult(NamedTuple):
    value: float
    minimizers: list


def df_exact(X: FilteredSpace, Y: FilteredSpace, *, capped: bool = False,
             max_pairs: int = 12, atol: float = ATOL) -> DFResult:
    """Exact distance by enumerating every correspondence between ``X`` and ``Y``.

    Returns the minimum cost and every correspondence within ``atol`` of it,
    in enumeration order.
    """
    n, m = X.n_vertices, Y.n_vertices
    if n * m > max_pairs:
        raise TooLargeError(f"|X|*|Y| = {n * m} exceeds {max_pairs}")
    cost = _PairCost(X, Y, capped)
    all_pairs = [(i, j) for i in range(n) for j in range(m)]
    full_x, full_y = (1 << n) - 1, (1 << m) - 1
    results = []
    for bits in range(1, 1 << len(all_pairs)):
        chosen = [all_pairs[k] for k in range(len(all_pairs)) if bits >> k & 1]
        cx = cy = 0
        for i, j in chosen:
            cx |= 1 << i
            cy |= 1 << j
        if cx != full_x or cy != full_y:
            continue
        results.append((cost(chosen), chosen))
    best = min(c for c, _ in results)
    minimizers = [cost.to_correspondence(p) for c, p in results if c <= best + atol]
    return DFResult(best, minimizers)


def _random_correspondence(rng, n, m):
    pairs = {(i, int(rng.integers(m))) for i in range(n)}
    covered = {j for _, j in pairs}
    for j in range(m):
        if j not in covered:
            pairs.add((int(rng.integers(n)), j))
    return pairs


def _diagonal_correspondence(n, m):
    pairs = {(i, i % m) for i in range(n)}
    pairs.update((j % n, j) for j in range(m))
    return pairs


def _neighbours(pairs, n, m):
    rows = [0] * n
    cols = [0] * m
    for i, j in pairs:
        rows[i] += 1
        cols[j] += 1
    out = []
    for i in range(n):
        for j in range(m):
            if (i, j) not in pairs:
                out.append(pairs | {(i, j)})
    for i, j in pairs:
        if rows[i] > 1 and cols[j] > 1:
            out.append(pairs - {(i, j)})
        if cols[j] > 1:
            for j2 in range(m):
                if j2 != j and (i, j2) not in pairs:
                    out.append((pairs - {(i, j)}) | {(i, j2)})
    return out


def df_upper(X: FilteredSpace, Y: FilteredSpace, budget: int = 2000, seed: int = 0, *,
             capped: bool = False) -> tuple[float, Correspondence]:
    """Upper bound on the distance by first-improvement local search.

    Moves add a pair, drop a redundant pair, or re-target one pair.  The
    first descent starts from the index-aligned correspondence, later ones
    from random correspondences.  ``budget`` counts cost evaluations.
    """
    cost = _PairCost(X, Y, capped)
    n, m = X.n_vertices, Y.n_vertices
    rng = np.random.default_rng(seed)
    current = _diagonal_correspondence(n, m)
    current_cost = cost(current)
    used = 1
    best, best_cost = current, current_cost
    while used < budget:
        improved = False
        moves = _neighbours(current, n, m)
        for k in rng.permutation(len(moves)):
            if used >= budget:
                break
            c = cost(moves[k])
            used += 1
            if c < current_cost:
                current, current_cost, improved = moves[k], c, True
                break
        if current_cost < best_cost:
            best, best_cost = current, current_cost
        if best_cost == 0.0:
            break
        if not improved and used < budget:
            current = _random_correspondence(rng, n, m)
            current_cost = cost(current)
            used += 1
    return best_cost, cost.to_correspondence(best)


def compose_tripods(t1: Tripod, t2: Tripod) -> Tripod:
    """Compose ``X <- Z1 -> Y`` with ``Y <- Z2 -> W`` over their fibre product."""
    phi_x, phi_w, labels = [], [], []
    for a in range(len(t1)):
        for b in range(len(t2)):
            if t1.phi_y[a] == t2.phi_x[b]:
                phi_x.append(t1.phi_x[a])
                phi_w.append(t2.phi_y[b])
                labels.append((t1.labels[a], t2.labels[b]))
    if not labels:
        raise EmptyCompositeError("tripods do not share a middle space")
    return Tripod(tuple(phi_x), tuple(phi_w), tuple(labels))

