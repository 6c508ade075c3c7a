import math
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripodph import bottleneck, bottleneck_bruteforce, diagrams, matching_cost
from tripodph.errors import InvalidMatchingError, TooLargeError
from tripodph.generate import random_diagram, random_filtered_space

INF = math.inf


def _cost(p1, p2, pairs):
    """Matching cost written out directly from the definition."""
    def dist(p, q):
        if p[1] == INF and q[1] == INF:
            return abs(p[0] - q[0])
        if p[1] == INF or q[1] == INF:
            return INF
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    used1 = {i for i, _ in pairs}
    used2 = {j for _, j in pairs}
    terms = [dist(p1[i], p2[j]) for i, j in pairs]
    terms += [(p[1] - p[0]) / 2 for i, p in enumerate(p1) if i not in used1]
    terms += [(q[1] - q[0]) / 2 for j, q in enumerate(p2) if j not in used2]
    return max(terms, default=0.0)


def enumerate_oracle(p1, p2):
    best = INF
    for k in range(min(len(p1), len(p2)) + 1):
        for b1 in combinations(range(len(p1)), k):
            for b2 in permutations(range(len(p2)), k):
                best = min(best, _cost(p1, p2, list(zip(b1, b2))))
    return best


TWO_POINT_D0 = [(0.0, INF), (0.0, 1.0)]
ONE_POINT_D0 = [(0.0, INF)]


def test_matching_cost_two_point():
    assert matching_cost(TWO_POINT_D0, ONE_POINT_D0, [(0, 0)]) == 0.5


def test_matching_cost_identity():
    d = [(0.0, 1.0), (0.2, 0.7), (0.1, INF)]
    assert matching_cost(d, d, [(0, 0), (1, 1), (2, 2)]) == 0


def test_matching_cost_unmatched_essential():
    assert matching_cost([(0.0, INF)], [], []) == INF


def test_matching_cost_invalid():
    with pytest.raises(InvalidMatchingError):
        matching_cost([(0, 1)], [(0, 1)], [(0, 0), (0, 0)])
    with pytest.raises(InvalidMatchingError):
        matching_cost([(0, 1)], [(0, 1)], [(1, 0)])


def test_bottleneck_two_point(two_point, one_point):
    res = bottleneck(diagrams(two_point, 0)[0], diagrams(one_point, 0)[0])
    assert res.value == 0.5
    assert bottleneck_bruteforce(TWO_POINT_D0, ONE_POINT_D0) == 0.5


def test_bottleneck_self():
    d = [(0.0, 1.0), (0.2, 0.7), (0.1, INF)]
    res = bottleneck(d, d)
    assert res.value == 0
    assert res.certificate == ((0, 0), (1, 1), (2, 2))


def test_single_point_vs_empty():
    expected = enumerate_oracle([(0.0, 1.0)], [])
    assert expected == 0.5
    assert bottleneck([(0.0, 1.0)], []).value == expected


def test_matched_beats_diagonal():
    expected = enumerate_oracle([(0.0, 2.0)], [(0.5, 2.0)])
    assert expected == 0.5
    assert bottleneck([(0.0, 2.0)], [(0.5, 2.0)]).value == expected


def test_essential_count_mismatch_is_infinite():
    res = bottleneck([(0.0, INF), (1.0, INF)], [(0.0, INF)])
    assert res.value == INF
    assert matching_cost([(0.0, INF), (1.0, INF)], [(0.0, INF)], res.certificate) == INF


def test_essentials_sorted_pairing():
    assert bottleneck([(0.0, INF), (1.0, INF)], [(0.9, INF), (0.2, INF)]).value == pytest.approx(0.2)


def test_empty_vs_empty():
    assert bottleneck([], []).value == 0
    assert bottleneck_bruteforce([], []) == 0


def test_bruteforce_too_large():
    with pytest.raises(TooLargeError):
        bottleneck_bruteforce([(0, 1)] * 7, [(0, 1)] * 6)


def test_bruteforce_matches_enumeration_oracle():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = random_diagram(rng, int(rng.integers(0, 4)), essential_prob=0.2, decimals=1)
        b = random_diagram(rng, int(rng.integers(0, 4)), essential_prob=0.2, decimals=1)
        assert bottleneck_bruteforce(a, b) == enumerate_oracle(a.points, b.points)


@pytest.mark.parametrize("seed", range(3))
def test_oracle_agreement(seed):
    rng = np.random.default_rng(seed)
    for trial in range(100):
        ess = 0.3 if trial % 4 == 0 else 0.0
        dec = 1 if trial % 2 else None
        a = random_diagram(rng, int(rng.integers(0, 6)), essential_prob=ess, decimals=dec)
        b = random_diagram(rng, int(rng.integers(0, 6)), essential_prob=ess, decimals=dec)
        res = bottleneck(a, b)
        brute = bottleneck_bruteforce(a, b)
        assert res.value == brute or abs(res.value - brute) <= 1e-9
        assert matching_cost(a, b, res.certificate) == pytest.approx(res.value, abs=1e-9)


diagram_points = st.lists(
    st.tuples(st.floats(0, 1), st.floats(0, 1)).map(lambda p: (min(p), max(p))), max_size=5)


@settings(max_examples=150, deadline=None)
@given(a=diagram_points, b=diagram_points, c=diagram_points)
def test_metric_axioms(a, b, c):
    ab = bottleneck(a, b).value
    assert ab == bottleneck(b, a).value
    assert bottleneck(a, c).value <= ab + bottleneck(b, c).value + 1e-9


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 5))
def test_stability_same_set(seed, n):
    rng = np.random.default_rng(seed)
    F = random_filtered_space(rng, n, 3)
    G = random_filtered_space(rng, n, 3)
    gap = max(abs(F.values[s] - G.values[s]) for s in F.values)
    for a, b in zip(diagrams(F, 2), diagrams(G, 2)):
        assert bottleneck(a, b).value <= gap + 1e-9
