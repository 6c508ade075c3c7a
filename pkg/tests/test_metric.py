import math
from itertools import combinations

import numpy as np
import pytest

from tripodph import (
    Correspondence,
    FiniteMetricSpace,
    bottleneck,
    cech_filtration,
    df_exact,
    diagrams,
    distortion,
    gromov_hausdorff_exact,
    rips_filtration,
)
from tripodph.errors import NotACorrespondenceError, NotAMetricError, TooLargeError
from tripodph.generate import random_metric_space


def two_points(d):
    return FiniteMetricSpace([[0, d], [d, 0]], ["p", "q"])


def test_rips_two_points():
    F = rips_filtration(two_points(0.7))
    assert F.value(["p"]) == 0 and F.value(["p", "q"]) == 0.7
    D0 = diagrams(F, 0)[0]
    assert D0.points == ((0.0, 0.7), (0.0, math.inf))


def test_cech_equilateral():
    M = FiniteMetricSpace(np.ones((3, 3)) - np.eye(3))
    C = cech_filtration(M)
    assert C.value((0, 1)) == 1
    assert C.value((0, 1, 2)) == 1
    R = rips_filtration(M)
    assert R.value((0, 1, 2)) == 1


def test_cech_uses_ambient_witness():
    # the midpoint m witnesses the edge {a, b} at radius 1
    M = FiniteMetricSpace([[0, 2, 1], [2, 0, 1], [1, 1, 0]], ["a", "b", "m"])
    assert cech_filtration(M).value(["a", "b"]) == 1
    assert rips_filtration(M).value(["a", "b"]) == 2


@pytest.mark.parametrize("seed", range(10))
def test_radius_diameter_sandwich(seed):
    M = random_metric_space(np.random.default_rng(seed), 5)
    R, C = rips_filtration(M), cech_filtration(M)
    for s in R.simplices():
        assert C.value_of(s) <= R.value_of(s) + 1e-12
        assert R.value_of(s) <= 2 * C.value_of(s) + 1e-12


def test_cap():
    M = random_metric_space(np.random.default_rng(0), 4)
    assert rips_filtration(M, 1).dimension_cap == 1
    assert len(rips_filtration(M, 1).simplices()) == 4 + 6


def test_distortion_two_points():
    M, N = two_points(1.0), two_points(0.25)
    assert distortion(M, N, [("p", "p"), ("q", "q")]) == 0.75
    assert distortion(M, N, [("p", "p"), ("p", "q"), ("q", "q")]) == 1.0
    with pytest.raises(NotACorrespondenceError):
        distortion(M, N, [("p", "p")])


def _gh_oracle(M, N):
    """Independent enumeration: half the least distortion over all correspondences."""
    pairs = [(x, y) for x in M.points for y in N.points]
    best = math.inf
    for r in range(1, len(pairs) + 1):
        for R in combinations(pairs, r):
            if {x for x, _ in R} != set(M.points) or {y for _, y in R} != set(N.points):
                continue
            dis = max(abs(M.dist[M.index(a), M.index(b)] - N.dist[N.index(c), N.index(d)])
                      for a, c in R for b, d in R)
            best = min(best, dis)
    return best / 2


@pytest.mark.parametrize("d1,d2", [(1.0, 0.25), (0.3, 0.3), (2.0, 0.5), (0.1, 0.9)])
def test_gh_two_point_closed_form(d1, d2):
    M, N = two_points(d1), two_points(d2)
    value = gromov_hausdorff_exact(M, N).value
    assert value == abs(d1 - d2) / 2
    assert value == _gh_oracle(M, N)


def test_gh_point_vs_two_points():
    P = FiniteMetricSpace([[0.0]], ["o"])
    res = gromov_hausdorff_exact(P, two_points(0.8))
    assert res.value == 0.4
    assert res.minimizers == [Correspondence([("o", "p"), ("o", "q")])]


@pytest.mark.parametrize("seed", range(10))
def test_gh_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    M, N = random_metric_space(rng, 3), random_metric_space(rng, 3)
    assert gromov_hausdorff_exact(M, N).value == pytest.approx(_gh_oracle(M, N), abs=1e-12)


def test_gh_too_large():
    M = random_metric_space(np.random.default_rng(0), 4)
    with pytest.raises(TooLargeError):
        gromov_hausdorff_exact(M, M)


@pytest.mark.parametrize("seed", range(15))
def test_filtration_stability(seed):
    rng = np.random.default_rng(seed)
    M = random_metric_space(rng, int(rng.integers(2, 4)))
    N = random_metric_space(rng, int(rng.integers(2, 4)))
    gh = gromov_hausdorff_exact(M, N).value
    for build in (rips_filtration, cech_filtration):
        assert df_exact(build(M), build(N)).value <= 2 * gh + 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_diagram_stability(seed):
    rng = np.random.default_rng(seed)
    M, N = random_metric_space(rng, 4), random_metric_space(rng, 3)
    gh = gromov_hausdorff_exact(M, N).value
    for build in (rips_filtration, cech_filtration):
        dm, dn = diagrams(build(M, 2), 1), diagrams(build(N, 2), 1)
        for a, b in zip(dm, dn):
            assert bottleneck(a, b).value <= 2 * gh + 1e-9


def test_minimizing_filtration_correspondence_has_large_distortion():
    rng = np.random.default_rng(11)
    M, N = random_metric_space(rng, 3), random_metric_space(rng, 2)
    gh = gromov_hausdorff_exact(M, N).value
    for R in df_exact(rips_filtration(M), rips_filtration(N)).minimizers:
        assert distortion(M, N, R) >= 2 * gh - 1e-9


@pytest.mark.parametrize("dist", [
    [[0, 1], [2, 0]],
    [[0, -1], [-1, 0]],
    [[1, 1], [1, 0]],
    [[0, 1, 5], [1, 0, 1], [5, 1, 0]],
    [[0, math.inf], [math.inf, 0]],
    [[0, 1, 2]],
])
def test_not_a_metric(dist):
    with pytest.raises(NotAMetricError):
        FiniteMetricSpace(dist)
