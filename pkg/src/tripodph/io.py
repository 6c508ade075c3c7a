"""JSON / CSV readers and writers for spaces, diagrams, maps and results.

JSON has no infinity: diagram deaths use ``null`` and scalar results use the
string ``"Infinity"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Hashable

from .errors import ParseError, SchemaError
from .filtered import FilteredSpace, build_filtered_space
from .metric import FiniteMetricSpace
from .persistence import PersistenceDiagram
from .tripod import Correspondence

__all__ = [
    "parse_filtered_space",
    "filtered_space_to_dict",
    "dump_filtered_space",
    "parse_diagram",
    "diagram_to_dict",
    "parse_diagrams",
    "parse_metric_space",
    "metric_space_to_dict",
    "parse_vertex_map",
    "correspondence_to_list",
    "encode_scalar",
    "decode_scalar",
    "dumps",
]


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _require(cond, path, msg):
    if not cond:
        raise SchemaError(f"{path}: {msg}")


def _name(v: Hashable) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "|".join(_name(x) for x in v)
    return str(v)


def encode_scalar(value: float):
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return value


def decode_scalar(value) -> float:
    if value in ("Infinity", "inf", None):
        return math.inf
    return float(value)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


# -- filtered spaces -----------------------------------------------------
def filtered_space_to_dict(space: FilteredSpace) -> dict:
    return {
        "vertices": [_name(v) for v in space.vertices],
        "dimension_cap": space.dimension_cap,
        "simplices": [{"vertices": [_name(v) for v in space.names(s)], "value": space.values[s]}
                      for s in space.simplices()],
    }


def dump_filtered_space(space: FilteredSpace) -> str:
    return dumps(filtered_space_to_dict(space))


def filtered_space_from_dict(obj) -> FilteredSpace:
    _require(isinstance(obj, dict), "$", "expected an object")
    verts = obj.get("vertices")
    _require(isinstance(verts, list) and verts, "$.vertices", "expected a non-empty list")
    _require(all(isinstance(v, str) for v in verts), "$.vertices", "vertex names must be strings")
    simplices = obj.get("simplices")
    _require(isinstance(simplices, list), "$.simplices", "expected a list")
    assignments = []
    for i, entry in enumerate(simplices):
        path = f"$.simplices[{i}]"
        _require(isinstance(entry, dict), path, "expected an object")
        sv = entry.get("vertices")
        _require(isinstance(sv, list) and sv, f"{path}.vertices", "expected a non-empty list")
        val = entry.get("value")
        _require(isinstance(val, (int, float)) and not isinstance(val, bool),
                 f"{path}.value", "expected a number")
        assignments.append((sv, float(val)))
    cap = obj.get("dimension_cap")
    if cap is not None:
        _require(isinstance(cap, int) and not isinstance(cap, bool) and cap >= 0,
                 "$.dimension_cap", "expected a non-negative integer")
    extra = set(obj) - {"vertices", "dimension_cap", "simplices"}
    _require(not extra, "$", f"unknown fields {sorted(extra)}")
    return build_filtered_space(verts, assignments, cap)


def parse_filtered_space(text: str) -> FilteredSpace:
    return filtered_space_from_dict(_loads(text, "filtered space"))


# -- diagrams ------------------------------------------------------------
def diagram_to_dict(diagram: PersistenceDiagram) -> dict:
    return {"degree": diagram.degree,
            "points": [{"birth": b, "death": None if math.isinf(d) else d} for b, d in diagram]}


def diagram_from_dict(obj, path="$") -> PersistenceDiagram:
    _require(isinstance(obj, dict), path, "expected an object")
    deg = obj.get("degree", 0)
    _require(isinstance(deg, int) and deg >= 0, f"{path}.degree", "expected a non-negative integer")
    pts = obj.get("points")
    _require(isinstance(pts, list), f"{path}.points", "expected a list")
    out = []
    for i, p in enumerate(pts):
        pp = f"{path}.points[{i}]"
        if isinstance(p, list) and len(p) == 2:
            b, d = p
        else:
            _require(isinstance(p, dict), pp, "expected {birth, death} or [birth, death]")
            b, d = p.get("birth"), p.get("death")
        _require(isinstance(b, (int, float)), f"{pp}.birth", "expected a number")
        _require(d is None or isinstance(d, (int, float)) or d == "Infinity",
                 f"{pp}.death", "expected a number or null")
        death = math.inf if d is None or d == "Infinity" else float(d)
        _require(float(b) <= death, pp, "birth exceeds death")
        out.append((float(b), death))
    return PersistenceDiagram(deg, tuple(out))


def parse_diagram(text: str) -> PersistenceDiagram:
    return diagram_from_dict(_loads(text, "diagram"))


def parse_diagrams(text: str) -> list[PersistenceDiagram]:
    """A single diagram object or a list of them."""
    obj = _loads(text, "diagrams")
    if isinstance(obj, list):
        return [diagram_from_dict(o, f"$[{i}]") for i, o in enumerate(obj)]
    return [diagram_from_dict(obj)]


# -- metric spaces -------------------------------------------------------
def metric_space_to_dict(space: FiniteMetricSpace) -> dict:
    return {"points": [_name(p) for p in space.points], "dist": space.dist.tolist()}


def parse_metric_space(text: str, fmt: str = "json") -> FiniteMetricSpace:
    """JSON ``{"points": [...], "dist": [[...]]}`` or CSV with a header row of names."""
    if fmt == "csv":
        rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
        if not rows:
            raise ParseError("metric CSV: empty input")
        header = [c.strip() for c in rows[0]]
        body = rows[1:]
        # tolerate a leading row-label column
        if body and len(body[0]) == len(header) + 1:
            body = [r[1:] for r in body]
        elif header and header[0] == "" and body and len(body[0]) == len(header):
            header, body = header[1:], [r[1:] for r in body]
        try:
            dist = [[float(c) for c in r] for r in body]
        except ValueError as exc:
            raise ParseError(f"metric CSV: {exc}") from None
        if len(dist) != len(header) or any(len(r) != len(header) for r in dist):
            raise SchemaError("metric CSV: matrix must be square and match the header")
        return FiniteMetricSpace(dist, header)
    obj = _loads(text, "metric space")
    _require(isinstance(obj, dict), "$", "expected an object")
    dist = obj.get("dist")
    _require(isinstance(dist, list) and all(isinstance(r, list) for r in dist), "$.dist",
             "expected a list of rows")
    points = obj.get("points")
    _require(points is None or isinstance(points, list), "$.points", "expected a list")
    return FiniteMetricSpace(dist, points)


# -- maps and correspondences --------------------------------------------
def parse_vertex_map(text: str) -> tuple[dict, int | None]:
    """``{"map": {"z1": "a", ...}, "dimension_cap": C}``; a bare object is also accepted."""
    obj = _loads(text, "vertex map")
    _require(isinstance(obj, dict), "$", "expected an object")
    if "map" in obj:
        mapping, cap = obj["map"], obj.get("dimension_cap")
        _require(isinstance(mapping, dict) and mapping, "$.map", "expected a non-empty object")
        _require(cap is None or (isinstance(cap, int) and cap >= 0), "$.dimension_cap",
                 "expected a non-negative integer")
    else:
        mapping, cap = obj, None
    _require(all(isinstance(v, str) for v in mapping.values()), "$.map", "targets must be strings")
    return dict(mapping), cap


def correspondence_to_list(corr: Correspondence, X=None, Y=None) -> list:
    pairs = corr.sorted_pairs(X, Y) if X is not None else sorted(corr, key=repr)
    return [[_name(x), _name(y)] for x, y in pairs]
