"""Persistence diagrams via boundary-matrix reduction over a prime field."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceedsSpaceError, InsufficientCapError, NotPrimeError
from .filtered import FilteredSpace, Simplex

__all__ = [
    "PersistenceDiagram",
    "ReductionResult",
    "sort_filtration",
    "boundary_matrix",
    "reduce",
    "diagrams",
    "persistence_of",
    "betti_number",
    "is_prime",
]

INF = math.inf


def is_prime(p: int) -> bool:
    if not isinstance(p, (int, np.integer)) or p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _check_prime(p):
    if not is_prime(p):
        raise NotPrimeError(f"field characteristic must be prime, got {p!r}")


def persistence_of(point) -> float:
    """``death - birth``; infinite for essential points."""
    birth, death = point
    return INF if math.isinf(death) else death - birth


@dataclass(frozen=True)
class PersistenceDiagram:
    """A finite multiset of ``(birth, death)`` points in one homology degree.

    Points are kept sorted so that equality is multiset equality.  Essential
    classes have ``death == inf``.
    """

    degree: int
    points: tuple = field(default=())

    def __post_init__(self):
        pts = []
        for b, d in self.points:
            b, d = float(b), (INF if d is None else float(d))
            if math.isnan(b) or math.isnan(d) or math.isinf(b):
                raise ValueError(f"invalid diagram point ({b}, {d})")
            if b > d:
                raise ValueError(f"diagram point ({b}, {d}) lies below the diagonal")
            pts.append((b, d))
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def essential(self) -> list:
        return [p for p in self.points if math.isinf(p[1])]

    @property
    def finite(self) -> list:
        return [p for p in self.points if not math.isinf(p[1])]

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)

    def without_diagonal(self) -> PersistenceDiagram:
        return PersistenceDiagram(self.degree, tuple(p for p in self.points if p[0] != p[1]))


def sort_filtration(space: FilteredSpace, working_cap: int | None = None) -> list:
    """``(simplex, value)`` pairs sorted by value, then dimension, then vertex order.

    Every face precedes its cofaces: monotonicity settles different values
    and the dimension tiebreak settles equal ones.
    """
    if working_cap is None:
        working_cap = space.dimension_cap
    if working_cap > space.dimension_cap and not space.is_full:
        raise CapExceedsSpaceError(
            f"working cap {working_cap} exceeds the space cap {space.dimension_cap}")
    items = [(s, v) for s, v in space.values.items() if len(s) - 1 <= working_cap]
    items.sort(key=lambda sv: (sv[1], len(sv[0]), sv[0]))
    return items


def boundary_matrix(order: Sequence[tuple[Simplex, float]], p: int = 2) -> list[dict]:
    """Sparse columns ``{row: coefficient mod p}`` of the ordered boundary operator."""
    position = {s: i for i, (s, _) in enumerate(order)}
    columns = []
    for s, _ in order:
        col = {}
        if len(s) > 1:
            for i in range(len(s)):
                coef = 1 if i % 2 == 0 else p - 1
                col[position[s[:i] + s[i + 1:]]] = coef % p
        columns.append(col)
    return columns


@dataclass
class ReductionResult:
    columns: list
    pairs: list
    unpaired: list


def reduce(columns: Sequence[dict], p: int = 2) -> ReductionResult:
    """Left-to-right column reduction over the prime field of order ``p``.

    Returns the reduced columns, the persistence pairs ``(low(j), j)`` and
    the indices that appear in no pair.
    """
    _check_prime(p)
    reduced = []
    pivot_of = {}  # lowest row -> column index owning it
    pairs = []
    for j, col in enumerate(columns):
        col = {r: c % p for r, c in col.items() if c % p}
        while col:
            low = max(col)
            i = pivot_of.get(low)
            if i is None:
                break
            other = reduced[i]
            factor = col[low] * pow(other[low], -1, p) % p
            for r, c in other.items():
                v = (col.get(r, 0) - factor * c) % p
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
        reduced.append(col)
        if col:
            low = max(col)
            pivot_of[low] = j
            pairs.append((low, j))
    used = {i for pair in pairs for i in pair}
    unpaired = [i for i in range(len(columns)) if i not in used]
    return ReductionResult(reduced, pairs, unpaired)


def diagrams(space: FilteredSpace, k_max: int, field_prime: int = 2,
             keep_diagonal: bool = False) -> list[PersistenceDiagram]:
    """Persistence diagrams of ``space`` in degrees ``0..k_max``.

    Degree ``k`` needs simplices up to dimension ``k + 1``, so the space cap
    must reach ``k_max + 1`` unless the space already filters its full
    powerset.
    """
    _check_prime(field_prime)
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if not space.is_full and space.dimension_cap < k_max + 1:
        raise InsufficientCapError(
            f"degree {k_max} needs dimension cap {k_max + 1}, space has {space.dimension_cap}")
    order = sort_filtration(space, k_max + 1)
    result = reduce(boundary_matrix(order, field_prime), field_prime)
    points = [[] for _ in range(k_max + 1)]
    for i, j in result.pairs:
        k = len(order[i][0]) - 1
        if k <= k_max:
            b, d = order[i][1], order[j][1]
            if keep_diagonal or b != d:
                points[k].append((b, d))
    for i in result.unpaired:
        k = len(order[i][0]) - 1
        if k <= k_max:
            points[k].append((order[i][1], INF))
    return [PersistenceDiagram(k, tuple(pts)) for k, pts in enumerate(points)]


def _rank_mod_p(matrix: np.ndarray, p: int) -> int:
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        r = rank + nz[0]
        a[[rank, r]] = a[[r, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        for r2 in others:
            if r2 != rank:
                a[r2] = (a[r2] - a[r2, c] * a[rank]) % p
        rank += 1
    return rank


def betti_number(simplices: Iterable[Simplex], k: int, p: int = 2) -> int:
    """Rank of ``H_k`` of a simplicial complex over the prime field of order ``p``.

    Computed from dense boundary-matrix ranks, independently of the
    persistence reduction.  The complex must contain its ``k + 1``-simplices.
    """
    _check_prime(p)
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(s))

    def rank_boundary(d):
        if d <= 0 or not by_dim.get(d) or not by_dim.get(d - 1):
            return 0
        rows = {s: i for i, s in enumerate(by_dim[d - 1])}
        m = np.zeros((len(rows), len(by_dim[d])), dtype=np.int64)
        for j, s in enumerate(by_dim[d]):
            for i in range(len(s)):
                m[rows[s[:i] + s[i + 1:]], j] = 1 if i % 2 == 0 else p - 1
        return _rank_mod_p(m, p)

    n_k = len(by_dim.get(k, ()))
    return n_k - rank_boundary(k) - rank_boundary(k + 1)
