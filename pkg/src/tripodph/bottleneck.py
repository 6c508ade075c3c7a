"""Exact bottleneck distance between persistence diagrams.

Matched points pay their sup-norm distance and unmatched points pay half
their persistence.  Essential points (infinite death) only ever match other
essential points, at cost ``|birth - birth'|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidMatchingError, TooLargeError
from .persistence import PersistenceDiagram, persistence_of

__all__ = [
    "BottleneckResult",
    "point_distance",
    "matching_cost",
    "bottleneck",
    "bottleneck_bruteforce",
    "max_bipartite_matching",
]

INF = math.inf


def _points(diagram) -> list:
    if isinstance(diagram, PersistenceDiagram):
        return list(diagram.points)
    return [(float(b), INF if d is None else float(d)) for b, d in diagram]


def point_distance(p, q) -> float:
    """Sup-norm distance with ``inf - inf = 0``."""
    pe, qe = math.isinf(p[1]), math.isinf(q[1])
    if pe and qe:
        return abs(p[0] - q[0])
    if pe or qe:
        return INF
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _half_pers(p) -> float:
    return 0.5 * persistence_of(p)


@dataclass(frozen=True)
class BottleneckResult:
    value: float
    certificate: tuple  # ((i, j), ...) index pairs into the two point lists


def matching_cost(d1, d2, matching) -> float:
    """Cost of a partial matching given as ``(i, j)`` index pairs."""
    p1, p2 = _points(d1), _points(d2)
    left, right = set(), set()
    cost = 0.0
    for i, j in matching:
        if not (0 <= i < len(p1) and 0 <= j < len(p2)):
            raise InvalidMatchingError(f"pair ({i}, {j}) out of range")
        if i in left or j in right:
            raise InvalidMatchingError(f"pair ({i}, {j}) reuses an index")
        left.add(i)
        right.add(j)
        cost = max(cost, point_distance(p1[i], p2[j]))
    for i, p in enumerate(p1):
        if i not in left:
            cost = max(cost, _half_pers(p))
    for j, q in enumerate(p2):
        if j not in right:
            cost = max(cost, _half_pers(q))
    return cost


def max_bipartite_matching(adjacency: list[list[int]], n_right: int) -> list[int]:
    """Maximum matching by augmenting paths; returns ``match_of_left`` (-1 if free).

    Neighbours are tried in list order, so results are deterministic.
    """
    match_left = [-1] * len(adjacency)
    match_right = [-1] * n_right

    def augment(u, seen):
        for v in adjacency[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(len(adjacency)):
        # greedy first, augmenting search only when needed
        for v in adjacency[u]:
            if match_right[v] == -1:
                match_left[u], match_right[v] = v, u
                break
        else:
            augment(u, [False] * n_right)
    return match_left


def _finite_feasible(p1, p2, delta):
    """Perfect matching of the diagonal-augmented graph at threshold ``delta``.

    Left nodes: points of ``p1`` then diagonal copies of ``p2``.  Right nodes:
    points of ``p2`` then diagonal copies of ``p1``.
    """
    n1, n2 = len(p1), len(p2)
    adjacency = []
    for i, p in enumerate(p1):
        nbrs = [j for j, q in enumerate(p2) if point_distance(p, q) <= delta]
        if _half_pers(p) <= delta:
            nbrs.append(n2 + i)
        adjacency.append(nbrs)
    for j, q in enumerate(p2):
        nbrs = [j] if _half_pers(q) <= delta else []
        nbrs.extend(n2 + i for i in range(n1))
        adjacency.append(nbrs)
    match = max_bipartite_matching(adjacency, n1 + n2)
    if any(m == -1 for m in match):
        return None
    return [(i, match[i]) for i in range(n1) if match[i] < n2]


def bottleneck(d1, d2) -> BottleneckResult:
    """Exact bottleneck distance with a matching that attains it."""
    p1, p2 = _points(d1), _points(d2)
    ess1 = sorted((i for i, p in enumerate(p1) if math.isinf(p[1])), key=lambda i: (p1[i][0], i))
    ess2 = sorted((j for j, q in enumerate(p2) if math.isinf(q[1])), key=lambda j: (p2[j][0], j))
    fin1 = [i for i, p in enumerate(p1) if not math.isinf(p[1])]
    fin2 = [j for j, q in enumerate(p2) if not math.isinf(q[1])]

    # essential births on a line: sorted order minimises the largest gap
    ess_pairs = list(zip(ess1, ess2))
    ess_value = max((abs(p1[i][0] - p2[j][0]) for i, j in ess_pairs), default=0.0)
    if len(ess1) != len(ess2):
        ess_value = INF

    f1 = [p1[i] for i in fin1]
    f2 = [p2[j] for j in fin2]
    candidates = {0.0}
    candidates.update(_half_pers(p) for p in f1)
    candidates.update(_half_pers(q) for q in f2)
    candidates.update(point_distance(p, q) for p in f1 for q in f2)
    candidates = sorted(candidates)
    lo, hi = 0, len(candidates) - 1
    best = _finite_feasible(f1, f2, candidates[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        found = _finite_feasible(f1, f2, candidates[mid])
        if found is None:
            lo = mid + 1
        else:
            hi, best = mid, found
    fin_value = candidates[lo]
    certificate = tuple(sorted(ess_pairs + [(fin1[a], fin2[b]) for a, b in best]))
    return BottleneckResult(max(ess_value, fin_value), certificate)


def bottleneck_bruteforce(d1, d2, max_points: int = 12) -> float:
    """Minimum matching cost over every partial matching; exponential, for testing."""
    p1, p2 = _points(d1), _points(d2)
    if len(p1) + len(p2) > max_points:
        raise TooLargeError(f"{len(p1) + len(p2)} points exceed the brute-force bound {max_points}")
    best = INF
    n1, n2 = len(p1), len(p2)

    def search(i, used, current):
        nonlocal best
        if current >= best:
            return
        if i == n1:
            rest = max((_half_pers(p2[j]) for j in range(n2) if j not in used), default=0.0)
            best = min(best, max(current, rest))
            return
        search(i + 1, used, max(current, _half_pers(p1[i])))
        for j in range(n2):
            if j not in used:
                search(i + 1, used | {j}, max(current, point_distance(p1[i], p2[j])))

    search(0, frozenset(), 0.0)
    return best

