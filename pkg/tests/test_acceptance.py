"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Each test appends a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from tripodph import (
    FiniteMetricSpace,
    bottleneck,
    df_exact,
    diagrams,
    gromov_hausdorff_exact,
    strengthened_lower_bound,
)
from tripodph.verify import run_suite

pytestmark = pytest.mark.acceptance


def _record(log, number, title, ok, elapsed, limit, detail=""):
    timely = elapsed < limit
    status = "PASS" if ok and timely else "FAIL"
    log.append(f"[{status}] {number}. {title}: {detail} ({elapsed:.2f}s, limit {limit:g}s)")
    assert ok, f"criterion {number} failed: {detail}"
    assert timely, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def _suite(log, number, title, suites, limit):
    start = time.perf_counter()
    reports = [run_suite(name, trials, seed=0) for name, trials in suites]
    elapsed = time.perf_counter() - start
    detail = "; ".join(f"{r.name} {r.trials} trials, {len(r.violations)} violations" for r in reports)
    bad = [v for r in reports for v in r.violations][:5]
    _record(log, number, title, not bad, elapsed, limit, detail + ("" if not bad else f" e.g. {bad}"))


def test_distance_two_point_vs_point(acceptance_log, two_point, two_point_flat, one_point):
    start = time.perf_counter()
    d = df_exact(one_point, two_point).value
    d_flat = df_exact(one_point, two_point_flat).value
    elapsed = time.perf_counter() - start
    _record(acceptance_log, 1, "two-point vs point distance", d == 1 and d_flat == 0, elapsed, 1,
            f"d_F = {d}, flat variant {d_flat}")


def test_bottleneck_not_tight(acceptance_log, two_point, one_point):
    start = time.perf_counter()
    dx, dy = diagrams(two_point, 3), diagrams(one_point, 3)
    gap = bottleneck(dx[0], dy[0]).value
    d = df_exact(two_point, one_point).value
    elapsed = time.perf_counter() - start
    ok = (dx[0].points == ((0.0, 1.0), (0.0, math.inf)) and dy[0].points == ((0.0, math.inf),)
          and all(not a.points and not b.points for a, b in zip(dx[1:], dy[1:]))
          and gap == 0.5 and d == 1 and gap < d)
    _record(acceptance_log, 2, "bottleneck bound is not tight", ok, elapsed, 1,
            f"D_0 {dx[0].points} vs {dy[0].points}, d_D = {gap} < d_F = {d}")


def test_strengthened_bound(acceptance_log, two_point, one_point):
    start = time.perf_counter()
    value = strengthened_lower_bound(two_point, one_point, 0, 1e-6, max_depth=14)
    elapsed = time.perf_counter() - start
    d = df_exact(two_point, one_point).value
    ok = abs(value - 1.0) <= 1e-3 and value > 0.5 and abs(value - d) <= 1e-3
    _record(acceptance_log, 3, "path-length bound closes the gap", ok, elapsed, 30,
            f"length bound {value:.9f}, bottleneck 0.5, d_F {d}")


def test_stability(acceptance_log):
    _suite(acceptance_log, 4, "diagram stability", [("stability", 200)], 60)


def test_pullback_invariance(acceptance_log):
    _suite(acceptance_log, 5, "pullback invariance", [("pullback", 200)], 60)


def test_pseudometric(acceptance_log):
    _suite(acceptance_log, 6, "pseudometric axioms", [("pseudometric", 50)], 120)


def test_geodesics(acceptance_log):
    _suite(acceptance_log, 7, "geodesic distances", [("geodesic", 30)], 120)


def test_gh_stability(acceptance_log):
    start = time.perf_counter()
    closed_form_ok = True
    for d1, d2 in np.random.default_rng(0).uniform(0.1, 2.0, (20, 2)).round(3):
        M = FiniteMetricSpace([[0, d1], [d1, 0]])
        N = FiniteMetricSpace([[0, d2], [d2, 0]])
        closed_form_ok &= gromov_hausdorff_exact(M, N).value == abs(d1 - d2) / 2
    report = run_suite("gh-stability", 100, seed=0)
    elapsed = time.perf_counter() - start
    _record(acceptance_log, 8, "Gromov-Hausdorff stability", closed_form_ok and report.ok, elapsed, 120,
            f"closed form {'matches' if closed_form_ok else 'differs'}; "
            f"{report.trials} trials, {len(report.violations)} violations")


def test_oracles(acceptance_log):
    _suite(acceptance_log, 9, "oracle agreement",
           [("bottleneck", 300), ("reduction", 200), ("persistence", 100)], 180)
