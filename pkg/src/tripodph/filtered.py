"""Finite filtered spaces, sublevel complexes and pullbacks.

A filtered space is a finite ordered vertex set together with a monotone real
value on every non-empty vertex subset up to a dimension cap.  Simplices are
stored as strictly increasing tuples of vertex *indices* into the ordered
vertex set; the public helpers accept and return vertex names.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Iterable, Mapping, Sequence
from itertools import combinations
from types import MappingProxyType

import numpy as np

from .errors import (
    CapExceedsSpaceError,
    DuplicateSimplexError,
    DuplicateVertexError,
    MissingSimplexError,
    NonMonotoneError,
    NotSurjectiveError,
    TripodError,
    UnknownSimplexError,
)

Simplex = tuple  # strictly increasing tuple of vertex indices

__all__ = [
    "FilteredSpace",
    "Simplex",
    "build_filtered_space",
    "filtration_value",
    "sublevel_complex",
    "pullback",
    "enumerate_simplices",
    "simplex_mask",
]


def enumerate_simplices(n_vertices: int, max_dim: int):
    """Yield all non-empty index tuples of size <= max_dim + 1 in (dim, lex) order."""
    for d in range(min(max_dim, n_vertices - 1) + 1):
        yield from combinations(range(n_vertices), d + 1)


def simplex_mask(simplex: Iterable[int]) -> int:
    m = 0
    for i in simplex:
        m |= 1 << i
    return m


def _n_simplices(n: int, cap: int) -> int:
    return sum(math.comb(n, d + 1) for d in range(min(cap, n - 1) + 1))


class FilteredSpace:
    """An immutable finite filtered space.

    Parameters
    ----------
    vertices : sequence of hashable
        Vertex identifiers; their order fixes the canonical vertex indices.
    values : mapping
        Maps every strictly increasing index tuple of dimension at most
        ``dimension_cap`` to a finite float.
    dimension_cap : int
        Largest simplex dimension stored.  A cap of at least
        ``len(vertices) - 1`` means the full powerset is filtered.
    validate : bool
        Skip the completeness and monotonicity checks when the caller already
        guarantees them (used by trusted constructors such as pullbacks).
    """

    __slots__ = ("_vertices", "_index", "_cap", "_values", "_mask_table")

    def __init__(self, vertices: Sequence[Hashable], values: Mapping[Simplex, float],
                 dimension_cap: int, *, validate: bool = True):
        vertices = tuple(vertices)
        if not vertices:
            raise TripodError("a filtered space needs at least one vertex")
        index = {}
        for i, v in enumerate(vertices):
            if v in index:
                raise DuplicateVertexError(f"duplicate vertex {v!r}")
            index[v] = i
        if int(dimension_cap) != dimension_cap or dimension_cap < 0:
            raise TripodError(f"dimension_cap must be a non-negative integer, got {dimension_cap!r}")
        self._vertices = vertices
        self._index = MappingProxyType(index)
        self._cap = int(dimension_cap)
        self._values = MappingProxyType({tuple(k): float(v) for k, v in values.items()})
        self._mask_table = None
        if validate:
            self._validate()

    def _validate(self):
        n, top = len(self._vertices), self.max_dimension
        for key, val in self._values.items():
            if (not key or len(key) - 1 > top or any(a >= b for a, b in zip(key, key[1:]))
                    or key[0] < 0 or key[-1] >= n):
                raise TripodError(f"invalid simplex key {key!r}")
            if not math.isfinite(val):
                raise TripodError(f"non-finite value {val!r} on simplex {self.names(key)}")
        if len(self._values) != _n_simplices(n, self._cap):
            for s in enumerate_simplices(n, self._cap):
                if s not in self._values:
                    raise MissingSimplexError(f"no value for simplex {self.names(s)}")
        for s, val in self._values.items():
            if len(s) < 2:
                continue
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                fval = self._values[face]
                if fval > val:
                    raise NonMonotoneError(self.names(face), self.names(s), fval, val)

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def dimension_cap(self) -> int:
        return self._cap

    @property
    def max_dimension(self) -> int:
        """Largest dimension actually present, ``min(cap, n - 1)``."""
        return min(self._cap, len(self._vertices) - 1)

    @property
    def is_full(self) -> bool:
        """True when every non-empty vertex subset carries a value."""
        return self._cap >= len(self._vertices) - 1

    @property
    def values(self) -> Mapping[Simplex, float]:
        return self._values

    def index(self, vertex) -> int:
        try:
            return self._index[vertex]
        except (KeyError, TypeError):
            raise UnknownSimplexError(f"unknown vertex {vertex!r}") from None

    def names(self, simplex: Simplex) -> tuple:
        return tuple(self._vertices[i] for i in simplex)

    def key(self, simplex_vertices: Iterable[Hashable]) -> Simplex:
        """Canonical index tuple for a collection of vertex names."""
        idx = [self.index(v) for v in simplex_vertices]
        key = tuple(sorted(set(idx)))
        if not key:
            raise UnknownSimplexError("the empty simplex is not filtered")
        if len(key) != len(idx):
            raise TripodError(f"repeated vertex in simplex {list(simplex_vertices)!r}")
        return key

    def simplices(self) -> list[Simplex]:
        """All stored simplices in canonical (dimension, lexicographic) order."""
        return list(enumerate_simplices(self.n_vertices, self._cap))

    def value(self, simplex_vertices: Iterable[Hashable]) -> float:
        return filtration_value(self, simplex_vertices)

    def value_of(self, simplex: Simplex) -> float:
        try:
            return self._values[simplex]
        except KeyError:
            raise UnknownSimplexError(f"simplex {simplex!r} is not stored") from None

    def mask_table(self) -> np.ndarray:
        """Values indexed by vertex bitmask; NaN for masks outside the cap."""
        if self._mask_table is None:
            n = self.n_vertices
            if n > 24:
                raise TripodError("mask tables are limited to 24 vertices")
            table = np.full(1 << n, np.nan)
            for s, v in self._values.items():
                table[simplex_mask(s)] = v
            table.setflags(write=False)
            self._mask_table = table
        return self._mask_table

    def with_cap(self, cap: int) -> FilteredSpace:
        """Restriction to a smaller dimension cap."""
        if cap > self._cap and not self.is_full:
            raise CapExceedsSpaceError(f"cap {cap} exceeds stored cap {self._cap}")
        vals = {s: v for s, v in self._values.items() if len(s) - 1 <= cap}
        return FilteredSpace(self._vertices, vals, cap, validate=False)

    # -- comparisons -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FilteredSpace):
            return NotImplemented
        return (self._vertices == other._vertices and self._cap == other._cap
                and dict(self._values) == dict(other._values))

    def __hash__(self):
        return hash((self._vertices, self._cap, frozenset(self._values.items())))

    def allclose(self, other: FilteredSpace, atol: float = 1e-9) -> bool:
        if self._vertices != other._vertices or self._cap != other._cap:
            return False
        return all(abs(v - other._values[s]) <= atol for s, v in self._values.items())

    def __repr__(self):
        return (f"FilteredSpace(n_vertices={self.n_vertices}, dimension_cap={self._cap}, "
                f"n_simplices={len(self._values)})")


def build_filtered_space(vertices: Sequence[Hashable],
                         assignments: Iterable[tuple[Iterable[Hashable], float]],
                         dimension_cap: int | None = None) -> FilteredSpace:
    """Validate named ``(simplex, value)`` assignments into a :class:`FilteredSpace`.

    ``dimension_cap`` defaults to the largest dimension among the assignments.
    Raises on duplicate vertices or simplices, missing simplices within the
    cap, and faces whose value exceeds that of a coface.
    """
    vertices = tuple(vertices)
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateVertexError(f"duplicate vertex {v!r}")
        seen.add(v)
    index = {v: i for i, v in enumerate(vertices)}
    values = {}
    for simplex, value in assignments:
        simplex = list(simplex)
        try:
            idx = [index[v] for v in simplex]
        except (KeyError, TypeError) as exc:
            raise UnknownSimplexError(f"simplex {simplex!r} uses unknown vertex {exc}") from None
        key = tuple(sorted(idx))
        if not key or len(set(key)) != len(key):
            raise TripodError(f"invalid simplex {simplex!r}")
        if key in values:
            raise DuplicateSimplexError(f"simplex {simplex!r} assigned twice")
        values[key] = float(value)
    if dimension_cap is None:
        dimension_cap = max((len(k) - 1 for k in values), default=0)
    for key in values:
        if len(key) - 1 > dimension_cap:
            raise TripodError(f"simplex {[vertices[i] for i in key]!r} exceeds cap {dimension_cap}")
    return FilteredSpace(vertices, values, dimension_cap)


def filtration_value(space: FilteredSpace, simplex_vertices: Iterable[Hashable]) -> float:
    key = space.key(simplex_vertices)
    if len(key) - 1 > space.dimension_cap:
        raise UnknownSimplexError(f"simplex {list(simplex_vertices)!r} is above the dimension cap")
    return space.values[key]


def sublevel_complex(space: FilteredSpace, eps: float) -> list[tuple]:
    """Named simplices with value <= eps, in canonical order."""
    return [space.names(s) for s in space.simplices() if space.values[s] <= eps]


def pullback(space: FilteredSpace, mapping, cap: int | None = None) -> FilteredSpace:
    """Pull ``space`` back along a surjective vertex map ``Z -> X``.

    ``mapping`` is either a mapping from new vertex names to vertices of
    ``space`` or a sequence of target vertices (new vertices are then
    ``0..len-1``).  The new cap defaults to ``|Z| - 1`` when ``space`` is full
    and to ``min(|Z| - 1, space.dimension_cap)`` otherwise.
    """
    if isinstance(mapping, Mapping):
        z_vertices = tuple(mapping.keys())
        targets = [mapping[z] for z in z_vertices]
    else:
        targets = list(mapping)
        z_vertices = tuple(range(len(targets)))
    if not z_vertices:
        raise NotSurjectiveError("empty parametrization")
    phi = [space.index(x) for x in targets]
    missing = set(range(space.n_vertices)) - set(phi)
    if missing:
        raise NotSurjectiveError(
            f"map misses vertices {[space.vertices[i] for i in sorted(missing)]!r}")
    nz = len(z_vertices)
    if cap is None:
        cap = nz - 1 if space.is_full else min(nz - 1, space.dimension_cap)
    elif not space.is_full and min(cap, nz - 1) > space.dimension_cap:
        raise CapExceedsSpaceError(
            f"pullback cap {cap} exceeds the stored cap {space.dimension_cap}")
    src = space.values
    values = {tau: src[tuple(sorted({phi[i] for i in tau}))]
              for tau in enumerate_simplices(nz, cap)}
    return FilteredSpace(z_vertices, values, cap, validate=False)
