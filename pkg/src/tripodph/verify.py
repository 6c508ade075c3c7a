"""Randomized property suites.

Every suite draws its instances from a per-trial generator seeded with
``(seed, trial)`` so a reported counterexample can be replayed on its own.
"""

from __future__ import annotations

import math
import warnings
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bottleneck import bottleneck, bottleneck_bruteforce, matching_cost
from .errors import UnknownSuiteError
from .filtered import FilteredSpace, build_filtered_space, pullback, sublevel_complex
from .generate import (
    random_diagram,
    random_filtered_space,
    random_metric_space,
    random_surjection,
)
from .geodesic import (
    NoConvergenceWarning,
    diagram_path_length,
    evaluate_geodesic,
    geodesic_self_test,
    make_geodesic,
    tripod_interpolation,
)
from .metric import cech_filtration, distortion, gromov_hausdorff_exact, rips_filtration
from .persistence import betti_number, diagrams
from .tripod import (
    ATOL,
    Correspondence,
    Tripod,
    correspondence_cost,
    df_exact,
    df_upper,
    tripod_cost,
)

__all__ = ["SuiteReport", "SUITES", "DEFAULT_TRIALS", "run_suite", "run_verify"]


@dataclass
class SuiteReport:
    name: str
    trials: int
    seed: int
    checks: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, cond: bool, trial: int, message: str) -> None:
        self.checks += 1
        if not cond:
            self.violations.append(f"[{self.name} seed={self.seed} trial={trial}] {message}")

    def to_dict(self) -> dict:
        return {"suite": self.name, "trials": self.trials, "seed": self.seed, "checks": self.checks,
                "violations": self.violations, "ok": self.ok, "elapsed": round(self.elapsed, 3)}


def _rng(seed, trial):
    return np.random.default_rng((seed, trial))


def _two_point(top):
    return build_filtered_space(["x1", "x2"], [(["x1"], 0), (["x2"], 0), (["x1", "x2"], top)], 1)


def _one_point(c=0.0):
    return build_filtered_space(["*"], [(["*"], c)], 0)


def _small_pair(rng, sizes=(1, 2, 3)):
    n, m = int(rng.choice(sizes)), int(rng.choice(sizes))
    dec = 1 if rng.random() < 0.5 else None
    X = random_filtered_space(rng, n, decimals=dec, names=[f"x{i}" for i in range(n)])
    Y = random_filtered_space(rng, m, decimals=dec, names=[f"y{j}" for j in range(m)])
    return X, Y


# -- suites --------------------------------------------------------------
def suite_core(report, rng, trial):
    n = int(rng.integers(1, 6))
    cap = int(rng.integers(0, 4))
    X = random_filtered_space(rng, n, cap, decimals=1)
    nz = int(rng.integers(n, 8))
    phi = random_surjection(rng, n, nz)
    P = pullback(X, [X.vertices[i] for i in phi])
    try:
        FilteredSpace(P.vertices, P.values, P.dimension_cap)
        report.check(True, trial, "")
    except ValueError as exc:
        report.check(False, trial, f"pullback not a valid filtration: {exc}")
    ident = pullback(X, {v: v for v in X.vertices}, X.dimension_cap)
    report.check(ident == X, trial, "pullback along the identity changed values")
    levels = sorted(set(X.values.values()))
    for a, b in zip(levels, levels[1:]):
        la, lb = set(sublevel_complex(X, a)), set(sublevel_complex(X, b))
        report.check(la <= lb, trial, f"sublevel complexes not nested at {a} <= {b}")
    for eps in levels:
        cx = set(sublevel_complex(X, eps))
        closed = all(s[:i] + s[i + 1:] in cx for s in cx if len(s) > 1 for i in range(len(s)))
        report.check(closed, trial, f"sublevel complex at {eps} not closed under faces")


def suite_pullback(report, rng, trial):
    n = int(rng.integers(1, 6))
    X = random_filtered_space(rng, n, 3, decimals=1 if trial % 2 else None)
    nz = int(rng.integers(n, 8))
    phi = random_surjection(rng, n, nz)
    P = pullback(X, {f"z{i}": X.vertices[t] for i, t in enumerate(phi)})
    dx, dp = diagrams(X, 2), diagrams(P, 2)
    for k in range(3):
        report.check(dx[k] == dp[k], trial, f"D_{k} differs under pullback: {dx[k].points} vs {dp[k].points}")


def suite_persistence(report, rng, trial):
    n = int(rng.integers(1, 6))
    cap = int(rng.integers(1, 4))
    while sum(math.comb(n, d + 1) for d in range(min(cap, n - 1) + 1)) > 25:
        cap -= 1
    X = random_filtered_space(rng, n, cap, decimals=1)
    k_max = max(0, min(cap, n) - 1) if not X.is_full else min(2, n - 1)
    d2, d3 = diagrams(X, k_max, 2), diagrams(X, k_max, 3)
    report.check(d2 == d3, trial, "diagrams over F_2 and F_3 differ")
    top = max(X.values.values())
    comps = betti_number([X.key(s) for s in sublevel_complex(X, top)], 0, 2)
    report.check(len(d2[0].essential) == comps, trial,
                 f"{len(d2[0].essential)} essential D_0 points vs {comps} components")
    for eps in sorted(set(X.values.values())):
        cx = [X.key(s) for s in sublevel_complex(X, eps)]
        for k in range(k_max + 1):
            alive = sum(1 for b, d in d2[k] if b <= eps < d)
            rank = betti_number(cx, k, 2)
            report.check(alive == rank, trial, f"eps={eps} k={k}: diagram rank {alive} vs homology {rank}")


def suite_bottleneck(report, rng, trial):
    ess = 0.3 if trial % 3 == 0 else 0.0
    dec = 1 if trial % 2 else None
    ds = [random_diagram(rng, int(rng.integers(0, 6)), essential_prob=ess, decimals=dec) for _ in range(3)]
    a, b, c = ds
    res = bottleneck(a, b)
    brute = bottleneck_bruteforce(a, b)
    same = res.value == brute or abs(res.value - brute) <= ATOL
    report.check(same, trial, f"bottleneck {res.value} vs brute force {brute} on {a.points} / {b.points}")
    cert = matching_cost(a, b, res.certificate)
    report.check(cert == res.value or abs(cert - res.value) <= ATOL, trial,
                 f"certificate costs {cert}, value {res.value}")
    report.check(res.value == bottleneck(b, a).value, trial, "bottleneck not symmetric")
    ab, bc, ac = res.value, bottleneck(b, c).value, bottleneck(a, c).value
    report.check(ac <= ab + bc + ATOL, trial, f"triangle inequality: {ac} > {ab} + {bc}")


def suite_stability(report, rng, trial):
    n = int(rng.integers(1, 6))
    X = random_filtered_space(rng, n, 3)
    G = random_filtered_space(rng, n, 3)
    gap = max(abs(X.values[s] - G.values[s]) for s in X.values)
    k_max = 2 if X.is_full or X.dimension_cap >= 3 else 0
    for k, (a, b) in enumerate(zip(diagrams(X, k_max), diagrams(G, k_max))):
        d = bottleneck(a, b).value
        report.check(d <= gap + ATOL, trial, f"k={k}: d_D {d} > sup gap {gap}")
    # lower-bound dominance across different spaces
    A, B = _small_pair(rng)
    df = df_exact(A, B).value
    for k in range(3):
        d = bottleneck(diagrams(A, k)[k], diagrams(B, k)[k]).value
        report.check(d <= df + ATOL, trial, f"k={k}: d_D {d} > d_F {df}")
    if trial == 0:
        X2, Y1 = _two_point(1.0), _one_point(0.0)
        d = bottleneck(diagrams(X2, 0)[0], diagrams(Y1, 0)[0]).value
        report.check(d == 0.5 and df_exact(X2, Y1).value == 1.0, trial,
                     "non-tightness witness does not give 1/2 < 1")


def suite_pseudometric(report, rng, trial):
    dec = 1 if trial % 2 else None
    spaces = [random_filtered_space(rng, int(rng.integers(2, 4)), decimals=dec) for _ in range(3)]
    X, Y, W = spaces
    xy, yx = df_exact(X, Y).value, df_exact(Y, X).value
    yw, xw = df_exact(Y, W).value, df_exact(X, W).value
    report.check(xy == yx, trial, f"asymmetric: {xy} vs {yx}")
    report.check(xw <= xy + yw + ATOL, trial, f"triangle inequality: {xw} > {xy} + {yw}")
    report.check(df_exact(X, X).value == 0.0, trial, "d_F(X, X) != 0")


def suite_heuristic(report, rng, trial):
    X, Y = _small_pair(rng)
    exact = df_exact(X, Y).value
    upper, witness = df_upper(X, Y, budget=300, seed=trial)
    report.check(upper >= exact - ATOL, trial, f"heuristic {upper} below exact {exact}")
    report.check(abs(correspondence_cost(X, Y, witness) - upper) <= ATOL, trial,
                 "heuristic witness does not reproduce its value")
    if X.n_vertices == 1 or Y.n_vertices == 1:
        report.check(abs(upper - exact) <= ATOL, trial, "heuristic missed the unique correspondence")


def suite_reduction(report, rng, trial):
    X, Y = _small_pair(rng)
    nz = int(rng.integers(max(X.n_vertices, Y.n_vertices), 9))
    px = random_surjection(rng, X.n_vertices, nz)
    py = random_surjection(rng, Y.n_vertices, nz)
    T = Tripod([X.vertices[i] for i in px], [Y.vertices[j] for j in py])
    R = Correspondence.from_tripod(T)
    a, b = tripod_cost(X, Y, T), correspondence_cost(X, Y, R)
    report.check(a == b, trial, f"tripod cost {a} != correspondence cost {b}")
    # the interpolated curve only depends on the induced correspondence
    t = float(rng.choice([0.25, 0.5, 0.75]))
    Rt = R.as_tripod(X, Y)
    for k in range(2):
        da = diagrams(tripod_interpolation(X, Y, T, t, k + 1), k)[k]
        db = diagrams(tripod_interpolation(X, Y, Rt, t, k + 1), k)[k]
        report.check(da == db, trial, f"t={t} k={k}: tripod curve diagrams differ from correspondence curve")


def suite_gh_stability(report, rng, trial):
    sizes = (2, 3)
    M = random_metric_space(rng, int(rng.choice(sizes)), decimals=1 if trial % 2 else None)
    N = random_metric_space(rng, int(rng.choice(sizes)), decimals=1 if trial % 2 else None)
    gh = gromov_hausdorff_exact(M, N).value
    for name, build in (("rips", rips_filtration), ("cech", cech_filtration)):
        FM, FN = build(M), build(N)
        df, minimizers = df_exact(FM, FN)
        report.check(df <= 2 * gh + ATOL, trial, f"{name}: d_F {df} > 2 d_GH {2 * gh}")
        for R in minimizers:
            dis = distortion(M, N, R)
            report.check(dis >= 2 * gh - ATOL, trial, f"{name}: minimizer distortion {dis} < 2 d_GH")
        for k in range(2):
            d = bottleneck(diagrams(FM, k)[k], diagrams(FN, k)[k]).value
            report.check(d <= 2 * gh + ATOL, trial, f"{name} k={k}: d_D {d} > 2 d_GH {2 * gh}")
    # diagram-level stability on larger spaces
    P = random_metric_space(rng, int(rng.choice((3, 4))))
    Q = random_metric_space(rng, 3)
    gh2 = gromov_hausdorff_exact(P, Q).value
    for build in (rips_filtration, cech_filtration):
        FP, FQ = build(P, 2), build(Q, 2)
        for k in range(2):
            d = bottleneck(diagrams(FP, k)[k], diagrams(FQ, k)[k]).value
            report.check(d <= 2 * gh2 + ATOL, trial, f"k={k}: d_D {d} > 2 d_GH {2 * gh2}")
    for S in (M, N, P):
        R, C = rips_filtration(S), cech_filtration(S)
        for s, diam in R.values.items():
            rad = C.values[s]
            report.check(rad <= diam + ATOL and diam <= 2 * rad + ATOL, trial,
                         f"rad {rad} / diam {diam} out of order on {s}")
    if len(M) == 2 and len(N) == 2:
        closed = abs(M.dist[0, 1] - N.dist[0, 1]) / 2
        report.check(gh == closed, trial, f"two-point d_GH {gh} != |d1 - d2|/2 = {closed}")


def suite_geodesic(report, rng, trial):
    X, Y = _small_pair(rng, sizes=(1, 2))
    if rng.random() < 0.3:
        X = random_filtered_space(rng, 3, decimals=1, names=["x0", "x1", "x2"])
        Y = random_filtered_space(rng, 1, decimals=1, names=["y0"])
    value, minimizers = df_exact(X, Y)
    for T in minimizers:
        if len(T) > 3:
            continue
        curve = make_geodesic(X, Y, T, distance=value)
        st = geodesic_self_test(curve)
        report.check(st.max_deviation <= ATOL, trial,
                     f"geodesic deviation {st.max_deviation} along {sorted(T)}")
        for k in range(3):
            report.check(diagrams(evaluate_geodesic(curve, 0.0), k)[k] == diagrams(X, k)[k], trial,
                         f"D_{k} at t=0 differs from X")
            report.check(diagrams(evaluate_geodesic(curve, 1.0), k)[k] == diagrams(Y, k)[k], trial,
                         f"D_{k} at t=1 differs from Y")
        for s, t in combinations((0.0, 0.25, 0.5, 0.75, 1.0), 2):
            d = bottleneck(diagrams(curve(s, 1), 0)[0], diagrams(curve(t, 1), 0)[0]).value
            report.check(d <= (t - s) * value + ATOL, trial, f"segment [{s},{t}]: {d} > {(t - s) * value}")


def suite_sandwich(report, rng, trial):
    X, Y = _small_pair(rng)
    value, minimizers = df_exact(X, Y)
    for k in range(2):
        lower = bottleneck(diagrams(X, k)[k], diagrams(Y, k)[k]).value
        best = 0.0
        for T in minimizers[:4]:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NoConvergenceWarning)
                rep = diagram_path_length(make_geodesic(X, Y, T, distance=value), k, 1e-6, 8)
            best = max(best, rep.value)
            mono = all(b >= a - ATOL for a, b in zip(rep.sums, rep.sums[1:]))
            report.check(mono, trial, f"k={k}: refinement sums decreased {rep.sums}")
        report.check(lower - 1e-6 <= best <= value + 1e-6, trial,
                     f"k={k}: sandwich violated {lower} <= {best} <= {value}")


def suite_roundtrip(report, rng, trial):
    from .io import (
        diagram_to_dict,
        dumps,
        filtered_space_to_dict,
        metric_space_to_dict,
        parse_diagram,
        parse_filtered_space,
        parse_metric_space,
    )

    X = random_filtered_space(rng, int(rng.integers(1, 6)), int(rng.integers(0, 4)))
    report.check(parse_filtered_space(dumps(filtered_space_to_dict(X))) == X, trial,
                 "filtered space round trip")
    D = random_diagram(rng, int(rng.integers(0, 6)), essential_prob=0.3)
    report.check(parse_diagram(dumps(diagram_to_dict(D))) == D, trial, "diagram round trip")
    M = random_metric_space(rng, int(rng.integers(1, 6)))
    report.check(parse_metric_space(dumps(metric_space_to_dict(M))) == M, trial, "metric round trip")


SUITES = {
    "core": suite_core,
    "pullback": suite_pullback,
    "persistence": suite_persistence,
    "bottleneck": suite_bottleneck,
    "stability": suite_stability,
    "pseudometric": suite_pseudometric,
    "heuristic": suite_heuristic,
    "reduction": suite_reduction,
    "gh-stability": suite_gh_stability,
    "geodesic": suite_geodesic,
    "sandwich": suite_sandwich,
    "roundtrip": suite_roundtrip,
}

DEFAULT_TRIALS = {
    "core": 100, "pullback": 200, "persistence": 100, "bottleneck": 300, "stability": 200,
    "pseudometric": 50, "heuristic": 50, "reduction": 200, "gh-stability": 100,
    "geodesic": 30, "sandwich": 20, "roundtrip": 50,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    trials = DEFAULT_TRIALS[name] if trials is None else trials
    report = SuiteReport(name, trials, seed)
    start = time.perf_counter()
    for trial in range(trials):
        SUITES[name](report, _rng(seed, trial), trial)
    report.elapsed = time.perf_counter() - start
    return report


def run_verify(suite: str, trials: int | None = None, seed: int = 0) -> tuple[int, list[SuiteReport]]:
    """Run one suite (or ``"all"``); exit code 0 when clean, 1 on any violation."""
    names = list(SUITES) if suite == "all" else [suite]
    reports = [run_suite(n, trials, seed) for n in names]
    return (0 if all(r.ok for r in reports) else 1), reports
