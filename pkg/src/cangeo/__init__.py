"""Minimal paths on a soup can and a conical cup with lid."""
from .errors import CangeoError
from .geometry import (AngleGap, Face, Kind, Surface, SurfacePoint, angle_gap,
                       canonicalize, classify, embed3d, parse_point, parse_surface)
from .flatmodel import (FlatModel, GeodesicPath, Segment, path_to_polyline,
                        straightness_defect, unroll)
from .solver import MinimalPathSolver, SolveReport, SolverConfig, solve

__version__ = "0.1.0"

__all__ = [
    "AngleGap", "CangeoError", "Face", "FlatModel", "GeodesicPath", "Kind",
    "MinimalPathSolver", "Segment", "SolveReport", "SolverConfig", "Surface",
    "SurfacePoint", "angle_gap", "canonicalize", "classify", "embed3d",
    "parse_point", "parse_surface", "path_to_polyline", "solve",
    "straightness_defect", "unroll",
]
