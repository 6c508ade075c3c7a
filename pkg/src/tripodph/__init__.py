"""Persistence diagrams, bottleneck distance and the tripod distance between
finite filtered spaces, with explicit geodesics and the path-length
stability bound."""

from .bottleneck import BottleneckResult, bottleneck, bottleneck_bruteforce, matching_cost
from .errors import TripodError
from .estimators import (
    BottleneckDistance,
    CechFiltration,
    PersistenceDiagrams,
    RipsFiltration,
    TripodDistance,
)
from .filtered import FilteredSpace, build_filtered_space, filtration_value, pullback, sublevel_complex
from .geodesic import (
    GeodesicCurve,
    PathLengthReport,
    diagram_path_length,
    evaluate_geodesic,
    geodesic_self_test,
    make_geodesic,
    strengthened_lower_bound,
)
from .metric import (
    FiniteMetricSpace,
    cech_filtration,
    distortion,
    gromov_hausdorff_exact,
    rips_filtration,
)
from .persistence import PersistenceDiagram, diagrams, persistence_of, reduce, sort_filtration
from .tripod import (
    Correspondence,
    Tripod,
    compose_tripods,
    correspondence_cost,
    df_exact,
    df_upper,
    tripod_cost,
)

__version__ = "0.1.0"

__all__ = [
    "BottleneckDistance", "BottleneckResult", "CechFiltration", "Correspondence",
    "FilteredSpace", "FiniteMetricSpace", "GeodesicCurve", "PathLengthReport",
    "PersistenceDiagram", "PersistenceDiagrams", "RipsFiltration", "Tripod", "TripodDistance",
    "TripodError", "bottleneck", "bottleneck_bruteforce", "build_filtered_space",
    "cech_filtration", "compose_tripods", "correspondence_cost", "df_exact", "df_upper",
    "diagram_path_length", "diagrams", "distortion", "evaluate_geodesic", "filtration_value",
    "geodesic_self_test", "gromov_hausdorff_exact", "make_geodesic", "matching_cost",
    "persistence_of", "pullback", "reduce", "rips_filtration", "sort_filtration",
    "strengthened_lower_bound", "sublevel_complex", "tripod_cost",
]
