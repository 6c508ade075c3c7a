"""Command-line interface.

All results go to stdout as JSON, diagnostics to stderr.  Exit codes: 0 on
success, 1 when ``verify`` finds a violation, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import io
from .bottleneck import bottleneck
from .errors import TripodError
from .filtered import pullback
from .generate import RandomInstanceSpec, generate_instance
from .geodesic import NoConvergenceWarning, diagram_path_length, make_geodesic
from .metric import cech_filtration, gromov_hausdorff_exact, rips_filtration
from .persistence import diagrams
from .tripod import df_exact, df_upper
from .verify import SUITES, run_verify


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _space(path):
    return io.parse_filtered_space(_read(path))


def _metric(path):
    fmt = "csv" if path.lower().endswith(".csv") else "json"
    return io.parse_metric_space(_read(path), fmt)


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


def cmd_persist(args):
    dgms = diagrams(_space(args.space), args.kmax, args.field, args.keep_diagonal)
    _emit([io.diagram_to_dict(d) for d in dgms])
    return 0


def _pick_diagram(path, degree):
    dgms = io.parse_diagrams(_read(path))
    if len(dgms) == 1:
        return dgms[0]
    for d in dgms:
        if d.degree == degree:
            return d
    raise TripodError(f"{path}: no diagram of degree {degree}")


def cmd_bottleneck(args):
    res = bottleneck(_pick_diagram(args.d1, args.degree), _pick_diagram(args.d2, args.degree))
    _emit({"value": io.encode_scalar(res.value), "certificate": [list(p) for p in res.certificate]})
    return 0


def cmd_df(args):
    X, Y = _space(args.x), _space(args.y)
    if args.heuristic is not None:
        value, witness = df_upper(X, Y, args.heuristic, args.seed, capped=args.capped)
        _emit({"value": value, "mode": "heuristic", "budget": args.heuristic, "seed": args.seed,
               "witness": io.correspondence_to_list(witness, X, Y)})
    else:
        value, minimizers = df_exact(X, Y, capped=args.capped)
        _emit({"value": value, "mode": "exact", "capped": args.capped,
               "minimizers": [io.correspondence_to_list(R, X, Y) for R in minimizers]})
    return 0


def cmd_filtration(args):
    build = rips_filtration if args.command == "rips" else cech_filtration
    _emit(io.filtered_space_to_dict(build(_metric(args.metric), args.cap)))
    return 0


def cmd_gh(args):
    M, N = _metric(args.m), _metric(args.n)
    value, minimizers = gromov_hausdorff_exact(M, N)
    _emit({"value": value, "minimizers": [io.correspondence_to_list(R) for R in minimizers]})
    return 0


def cmd_pullback(args):
    mapping, cap = io.parse_vertex_map(_read(args.map))
    if args.cap is not None:
        cap = args.cap
    _emit(io.filtered_space_to_dict(pullback(_space(args.space), mapping, cap)))
    return 0


def cmd_geodesic_length(args):
    X, Y = _space(args.x), _space(args.y)
    value, minimizers = df_exact(X, Y)
    lower = bottleneck(diagrams(X, args.degree)[args.degree], diagrams(Y, args.degree)[args.degree]).value
    best, best_T = None, None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoConvergenceWarning)
        for T in minimizers:
            rep = diagram_path_length(make_geodesic(X, Y, T, distance=value), args.degree,
                                      args.tol, args.max_depth)
            if best is None or rep.value > best.value:
                best, best_T = rep, T
    if not best.converged:
        print(f"warning: refinement stopped at depth {args.max_depth} before reaching tol {args.tol}",
              file=sys.stderr)
    out = best.to_dict()
    out.update({"bottleneck_bound": lower, "length_bound": best.value, "d_F": value,
                "correspondence": io.correspondence_to_list(best_T, X, Y),
                "n_minimizers": len(minimizers)})
    _emit(out)
    return 0


def cmd_verify(args):
    code, reports = run_verify(args.suite, args.trials, args.seed)
    for r in reports:
        status = "ok" if r.ok else f"{len(r.violations)} violation(s)"
        print(f"{r.name}: {r.checks} checks, {status} ({r.elapsed:.2f}s)", file=sys.stderr)
        for v in r.violations:
            print(v, file=sys.stderr)
    _emit({"ok": code == 0, "suites": [r.to_dict() for r in reports]})
    return code


def cmd_generate(args):
    spec = RandomInstanceSpec(args.kind, args.n, args.seed, args.cap, args.low, args.high,
                              args.decimals, args.essential_prob)
    sys.stdout.write(generate_instance(spec) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripodph",
                                     description="Persistence and distances of finite filtered spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("persist", help="persistence diagrams of a filtered space")
    p.add_argument("space")
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--keep-diagonal", action="store_true")
    p.set_defaults(func=cmd_persist)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagrams")
    p.add_argument("d1")
    p.add_argument("d2")
    p.add_argument("--degree", type=int, default=0, help="degree to pick from diagram lists")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("df", help="distance between two filtered spaces")
    p.add_argument("x")
    p.add_argument("y")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="enumerate correspondences (default)")
    mode.add_argument("--heuristic", type=int, metavar="BUDGET", help="local search upper bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--capped", action="store_true", help="compare capped filtrations")
    p.set_defaults(func=cmd_df)

    for name in ("rips", "cech"):
        p = sub.add_parser(name, help=f"{name} filtration of a metric space (.csv or .json)")
        p.add_argument("metric")
        p.add_argument("--cap", type=int, default=None)
        p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("gh", help="exact Gromov-Hausdorff distance")
    p.add_argument("m")
    p.add_argument("n")
    p.set_defaults(func=cmd_gh)

    p = sub.add_parser("pullback", help="pull a filtration back along a surjection")
    p.add_argument("space")
    p.add_argument("map")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("geodesic-length", help="path-length lower bound along geodesics")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-depth", type=int, default=14)
    p.set_defaults(func=cmd_geodesic_length)

    p = sub.add_parser("verify", help="run randomized property suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="print a seeded random instance")
    p.add_argument("kind", choices=["filtered-space", "metric-space", "diagram"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--low", type=float, default=0.0)
    p.add_argument("--high", type=float, default=1.0)
    p.add_argument("--decimals", type=int, default=None)
    p.add_argument("--essential-prob", type=float, default=0.0)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
