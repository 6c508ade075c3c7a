from itertools import chain, combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripodph import (
    Correspondence,
    Tripod,
    build_filtered_space,
    compose_tripods,
    correspondence_cost,
    df_exact,
    df_upper,
    tripod_cost,
)
from tripodph.errors import (
    CapTooLowForExactError,
    EmptyCompositeError,
    NotACorrespondenceError,
    NotSurjectiveError,
    TooLargeError,
)
from tripodph.generate import random_filtered_space


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(1, len(items) + 1))


def subset_oracle(X, Y, corr):
    """Max gap over all non-empty subsets of the relation, straight from the definition."""
    best = 0.0
    for S in _subsets(corr):
        xs = X.key({x for x, _ in S})
        ys = Y.key({y for _, y in S})
        best = max(best, abs(X.values[xs] - Y.values[ys]))
    return best


def _all_correspondences(X, Y):
    pairs = [(x, y) for x in X.vertices for y in Y.vertices]
    for S in _subsets(pairs):
        if {x for x, _ in S} == set(X.vertices) and {y for _, y in S} == set(Y.vertices):
            yield Correspondence(S)


def test_two_point_vs_point_distance(two_point, one_point):
    res = df_exact(two_point, one_point)
    assert res.value == 1
    assert res.minimizers == [Correspondence([("a", "*"), ("b", "*")])]


def test_flat_distance(two_point_flat, one_point):
    assert df_exact(two_point_flat, one_point).value == 0


def test_collapse_tripod_cost(two_point, one_point):
    assert tripod_cost(two_point, one_point, Tripod(("a", "b"), ("*", "*"))) == 1


def test_point_against_constant():
    rng = np.random.default_rng(0)
    Y = random_filtered_space(rng, 3)
    c = 0.3
    point = build_filtered_space(["p"], [(["p"], c)], 0)
    expected = max(abs(v - c) for v in Y.values.values())
    assert df_exact(point, Y).value == pytest.approx(expected)


def test_identity_is_zero():
    X = random_filtered_space(np.random.default_rng(1), 3)
    assert correspondence_cost(X, X, Correspondence.identity(X)) == 0
    assert tripod_cost(X, X, Tripod.identity(X)) == 0
    assert df_exact(X, X).value == 0


@pytest.mark.parametrize("seed", range(20))
def test_correspondence_cost_matches_subset_oracle(seed):
    rng = np.random.default_rng(seed)
    X = random_filtered_space(rng, int(rng.integers(1, 4)))
    Y = random_filtered_space(rng, int(rng.integers(1, 4)))
    for corr in list(_all_correspondences(X, Y))[:40]:
        expected = subset_oracle(X, Y, corr)
        assert correspondence_cost(X, Y, corr) == pytest.approx(expected, abs=1e-12)
        assert tripod_cost(X, Y, corr.as_tripod(X, Y)) == pytest.approx(expected, abs=1e-12)


def test_df_exact_is_minimum_over_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        X = random_filtered_space(rng, 2)
        Y = random_filtered_space(rng, 3)
        costs = [subset_oracle(X, Y, R) for R in _all_correspondences(X, Y)]
        res = df_exact(X, Y)
        assert res.value == pytest.approx(min(costs), abs=1e-12)
        for R in res.minimizers:
            assert subset_oracle(X, Y, R) == pytest.approx(min(costs), abs=1e-9)


def test_tripod_with_repeated_parameters():
    # repeating a parameter changes the tripod but not its cost
    rng = np.random.default_rng(2)
    X = random_filtered_space(rng, 2)
    Y = random_filtered_space(rng, 2)
    t = Tripod(("v0", "v1", "v1"), ("v0", "v1", "v0"))
    t_dup = Tripod(("v0", "v1", "v1", "v1"), ("v0", "v1", "v0", "v0"))
    assert tripod_cost(X, Y, t) == tripod_cost(X, Y, t_dup)


def test_not_surjective():
    rng = np.random.default_rng(3)
    X = random_filtered_space(rng, 2)
    Y = random_filtered_space(rng, 2)
    with pytest.raises(NotSurjectiveError):
        tripod_cost(X, Y, Tripod(("v0", "v0"), ("v0", "v1")))
    with pytest.raises(NotSurjectiveError):
        tripod_cost(X, Y, Tripod(("v0", "v9"), ("v0", "v1")))
    with pytest.raises(NotACorrespondenceError):
        correspondence_cost(X, Y, Correspondence([("v0", "v0"), ("v0", "v1")]))


def test_cap_too_low(two_point):
    X = random_filtered_space(np.random.default_rng(0), 3, cap=1)
    with pytest.raises(CapTooLowForExactError):
        df_exact(X, X)
    assert df_exact(X, X, capped=True).value == 0


def test_too_large():
    X = random_filtered_space(np.random.default_rng(0), 4)
    with pytest.raises(TooLargeError):
        df_exact(X, X)


def test_compose_tripods():
    t1 = Tripod(("a", "b"), (0, 0))
    t2 = Tripod((0, 0), ("u", "v"))
    comp = compose_tripods(t1, t2)
    assert len(comp) == 4
    assert set(zip(comp.phi_x, comp.phi_y)) == {("a", "u"), ("a", "v"), ("b", "u"), ("b", "v")}
    with pytest.raises(EmptyCompositeError):
        compose_tripods(t1, Tripod((1,), ("u",)))


@pytest.mark.parametrize("seed", range(10))
def test_composition_subadditive(seed):
    rng = np.random.default_rng(seed)
    X, Y, W = (random_filtered_space(rng, int(rng.integers(1, 4))) for _ in range(3))
    rxy = df_exact(X, Y).minimizers[0].as_tripod(X, Y)
    ryw = df_exact(Y, W).minimizers[0].as_tripod(Y, W)
    comp = compose_tripods(rxy, ryw)
    assert tripod_cost(X, W, comp) <= tripod_cost(X, Y, rxy) + tripod_cost(Y, W, ryw) + 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_upper_bound_dominates_exact(seed):
    rng = np.random.default_rng(seed)
    X = random_filtered_space(rng, 3)
    Y = random_filtered_space(rng, 4)
    exact = df_exact(X, Y).value
    value, witness = df_upper(X, Y, budget=500, seed=seed)
    assert value >= exact - 1e-9
    assert correspondence_cost(X, Y, witness) == value


def test_upper_bound_self_is_zero():
    X = random_filtered_space(np.random.default_rng(4), 6)
    assert df_upper(X, X, budget=50)[0] == 0


def test_upper_bound_deterministic():
    rng = np.random.default_rng(5)
    X, Y = random_filtered_space(rng, 4), random_filtered_space(rng, 5)
    assert df_upper(X, Y, 300, seed=9) == df_upper(X, Y, 300, seed=9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_pseudometric(seed):
    rng = np.random.default_rng(seed)
    X = random_filtered_space(rng, int(rng.integers(1, 3)), decimals=2)
    Y = random_filtered_space(rng, int(rng.integers(1, 3)), decimals=2)
    W = random_filtered_space(rng, int(rng.integers(1, 3)), decimals=2)
    xy = df_exact(X, Y).value
    assert xy >= 0
    assert xy == df_exact(Y, X).value
    assert df_exact(X, W).value <= xy + df_exact(Y, W).value + 1e-9


@pytest.mark.parametrize("seed", range(20))
def test_tripod_cost_depends_only_on_correspondence(seed):
    from tripodph.generate import random_surjection

    rng = np.random.default_rng(seed)
    X = random_filtered_space(rng, int(rng.integers(1, 4)))
    Y = random_filtered_space(rng, int(rng.integers(1, 4)))
    z = int(rng.integers(max(X.n_vertices, Y.n_vertices), 8))
    phi_x = [X.vertices[i] for i in random_surjection(rng, X.n_vertices, z)]
    phi_y = [Y.vertices[i] for i in random_surjection(rng, Y.n_vertices, z)]
    tripod = Tripod(phi_x, phi_y)
    assert tripod_cost(X, Y, tripod) == correspondence_cost(X, Y, Correspondence.from_tripod(tripod))
