"""Find and classify every minimal path between two points.

The solver enumerates the candidate families that apply to the endpoint
faces, minimizes each over its parameter box, and keeps every distinct path
whose length is within the tie tolerance of the overall minimum.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .errors import SamePoint
from .families import (Family, FamilyId, applicable_families, half_plane_family,
                       section_coordinate)
from .flatmodel import DEFAULT_STRAIGHTNESS_TOL, GeodesicPath, straightness_defect
from .geometry import (Surface, SurfacePoint, angle_gap, canonicalize, embed3d,
                       format_point)
from .optimize import Minimization, minimize_1d, minimize_2d
from .validation import check_point, check_surface

logger = logging.getLogger(__name__)

# a configuration this close to diaxial also searches the paths that go
# around the other way
NEAR_DIAXIAL = 1e-6
MAX_PATHS = {"can": 4, "cup": 3}


@dataclass(frozen=True)
class SolverConfig:
    grid_n: int = 512
    tol: float = 1e-12
    tie_tol: float = 1e-9
    straightness_tol: float = DEFAULT_STRAIGHTNESS_TOL
    dedup_tol: float = 1e-6
    # the detour family needs an inner search per point; scan it coarsely
    detour_grid_n: int = 96
    detour_tol: float = 1e-10


@dataclass(frozen=True)
class Multiplicity:
    count: int | None
    infinite: bool = False
    reason: str = ""

    @classmethod
    def finite(cls, n: int) -> "Multiplicity":
        return cls(n)

    @classmethod
    def infinite_family(cls, reason: str) -> "Multiplicity":
        return cls(None, True, reason)

    def __str__(self):
        return f"InfiniteFamily({self.reason})" if self.infinite else f"Finite({self.count})"


@dataclass(frozen=True)
class FamilyResult:
    label: str
    family: str
    value: float
    argmin: tuple[float, ...]
    # angles of the frame: original angle = offset + sign * normalized angle
    sign: float = 1.0


@dataclass
class SolveReport:
    surface: Surface
    A: SurfacePoint
    B: SurfacePoint
    min_length: float
    paths: list[GeodesicPath]
    multiplicity: Multiplicity
    per_family: list[FamilyResult]
    theta: float
    near_tie: list[FamilyResult] = field(default_factory=list)
    defects: list[float] = field(default_factory=list)
    path_families: list[str] = field(default_factory=list)
    config: SolverConfig = field(default_factory=SolverConfig)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def n_paths(self) -> int:
        return len(self.paths)

    def to_dict(self) -> dict:
        """Plain-data view used by the JSON writer."""
        surf = self.surface
        paths = []
        for path, defect, fam in zip(self.paths, self.defects, self.path_families):
            paths.append({
                "family": fam,
                "length": path.total_length,
                "straightness_defect": defect,
                "crossings": [{"rim": c.face.value, "angle": c.angle} for c in path.crossings],
                "segments": [{"face": seg.face.value,
                              "start": list(seg.start), "end": list(seg.end)}
                             for seg in path.segments],
            })
        mult = ({"kind": "infinite", "reason": self.multiplicity.reason}
                if self.multiplicity.infinite
                else {"kind": "finite", "count": self.multiplicity.count})
        return {
            "surface": {"kind": surf.kind.value, "h": surf.h, "s": surf.s},
            "A": format_point(self.A, surf),
            "B": format_point(self.B, surf),
            "min_length": self.min_length,
            "multiplicity": mult,
            "near_tie": [{"family": r.label, "value": r.value} for r in self.near_tie],
            "paths": paths,
            "per_family": [{"family": r.label, "value": r.value, "argmin": list(r.argmin)}
                           for r in self.per_family],
            "config": asdict(self.config),
        }


def _minimize(fam: Family, cfg: SolverConfig) -> Minimization:
    if fam.dim == 0:
        v = float(fam.length())
        return Minimization((), v, [])
    detour = fam.id in (FamilyId.CanSideToLidViaBase, FamilyId.CanSideToBaseViaLid)
    grid_n = cfg.detour_grid_n if detour else cfg.grid_n
    tol = cfg.detour_tol if detour else cfg.tol
    if fam.dim == 1:
        return minimize_1d(fam.length, fam.box[0], grid_n, tol, grad=fam.grad)
    return minimize_2d(fam.length, fam.box, grid_n, tol, grad=fam.grad,
                       max_starts=2 if detour else 8)


def sample_path(path: GeodesicPath, k: int = 65) -> np.ndarray:
    """``k`` points spread evenly by arc length along ``path`` (3-D)."""
    poly = path.polyline(samples_per_unit=64)
    d = np.r_[0.0, np.cumsum(np.linalg.norm(np.diff(poly, axis=0), axis=1))]
    targets = np.linspace(0.0, d[-1], k)
    return np.column_stack([np.interp(targets, d, poly[:, i]) for i in range(3)])


def same_path(p: GeodesicPath, q: GeodesicPath, tol: float) -> bool:
    if abs(p.total_length - q.total_length) > max(tol, 1e-9):
        return False
    return float(np.max(np.linalg.norm(sample_path(p) - sample_path(q), axis=1))) <= tol


def rebuild(fam: Family, params, offset: float = 0.0, sign: float = 1.0,
            surface: Surface | None = None) -> GeodesicPath:
    """Geometric path of a family member, mapped out of the normalized frame."""
    fam.check(tuple(params))
    segs = fam.segments(*params)
    surface = surface or fam.meta.get("surface")
    path = GeodesicPath.build(surface, segs)
    return path.transformed(sign, offset)


def solve(surface: Surface, A: SurfacePoint, B: SurfacePoint,
          config: SolverConfig | None = None) -> SolveReport:
    """All minimal paths from ``A`` to ``B`` on ``surface``."""
    cfg = config or SolverConfig()
    check_surface(surface)
    A = canonicalize(check_point(A), surface)
    B = canonicalize(check_point(B), surface)
    if np.linalg.norm(embed3d(A, surface) - embed3d(B, surface)) < 1e-12:
        raise SamePoint("A and B are the same point")

    gap = angle_gap(A, B)
    if gap.axial or gap.theta == 0.0:
        return _solve_half_plane(surface, A, B, cfg)

    theta = gap.theta
    sign = -1.0 if gap.mirror_flag else 1.0
    runs = [(theta, sign)]
    if theta < math.pi and math.pi - theta <= NEAR_DIAXIAL:
        runs.append((2.0 * math.pi - theta, -sign))

    per_family: list[FamilyResult] = []
    found: list[tuple[float, Family, tuple, float]] = []
    for th, sg in runs:
        for fam in applicable_families(surface, A, B, th):
            fam.meta["surface"] = surface
            res = _minimize(fam, cfg)
            per_family.append(FamilyResult(fam.label, fam.id.value, res.value, res.x, sg))
            for m in (res.minima or [res]):
                found.append((m.value, fam, tuple(m.x), sg))

    min_length = min(r.value for r in per_family)
    ties = sorted((f for f in found if f[0] <= min_length + cfg.tie_tol),
                  key=lambda f: f[0])
    paths: list[GeodesicPath] = []
    labels: list[str] = []
    defects: list[float] = []
    for value, fam, x, sg in ties:
        path = rebuild(fam, x, A.angle, sg, surface)
        candidates = [path]
        if theta == math.pi:
            candidates.append(path.mirrored(A.angle))
        for cand in candidates:
            d = _defect(cand)
            dup = next((k for k, q in enumerate(paths) if same_path(cand, q, cfg.dedup_tol)), None)
            if dup is None:
                paths.append(cand)
                labels.append(fam.label)
                defects.append(d)
            elif d < defects[dup]:
                # several families can reach the same path (one of them
                # degenerate); keep the most accurately located copy
                paths[dup], labels[dup], defects[dup] = cand, fam.label, d

    near = [FamilyResult(fam.label, fam.id.value, v, x, sg) for v, fam, x, sg in found
            if min_length + cfg.tie_tol < v <= min_length + 10 * cfg.tie_tol]
    report = SolveReport(surface, A, B, min_length, paths, Multiplicity.finite(len(paths)),
                         per_family, theta, near_tie=near, defects=defects,
                         path_families=labels, config=cfg)
    _finish(report)
    return report


def _solve_half_plane(surface, A, B, cfg) -> SolveReport:
    fam = half_plane_family(surface, A, B)
    fam.meta["surface"] = surface
    value = float(fam.length())
    offset = A.angle if not A.is_axial else B.angle
    path = rebuild(fam, (), offset, 1.0, surface)
    if A.is_axial and B.is_axial:
        mult = Multiplicity.infinite_family(
            "both endpoints axial: one minimal path in every axial half-plane")
    else:
        mult = Multiplicity.finite(1)
    report = SolveReport(surface, A, B, value, [path], mult,
                         [FamilyResult(fam.label, fam.id.value, value, ())], 0.0,
                         path_families=[fam.label], config=cfg)
    _finish(report)
    return report


def _defect(path: GeodesicPath) -> float:
    return straightness_defect(path) if len(path.segments) > 1 else 0.0


def _finish(report: SolveReport) -> None:
    cfg = report.config
    if not report.defects:
        report.defects = [_defect(p) for p in report.paths]
    for d in report.defects:
        if d >= cfg.straightness_tol:
            msg = f"path with defect {d:.3g} exceeds straightness tolerance"
            report.diagnostics.append(msg)
            logger.warning(msg)
    bound = MAX_PATHS[report.surface.kind.value]
    if not report.multiplicity.infinite and report.multiplicity.count > bound:
        msg = f"{report.multiplicity.count} minimal paths exceeds the bound {bound}"
        report.diagnostics.append(msg)
        logger.error(msg)
    if report.near_tie:
        report.diagnostics.append("near tie: competing minima within 10x tie tolerance")


class MinimalPathSolver(BaseEstimator):
    """Estimator-style front end to :func:`solve`.

    ``fit`` binds a surface; ``predict`` maps a sequence of ``(A, B)`` pairs
    to their minimal lengths and ``solve`` returns the full report for one
    pair.
    """

    def __init__(self, grid_n: int = 512, tol: float = 1e-12, tie_tol: float = 1e-9,
                 straightness_tol: float = DEFAULT_STRAIGHTNESS_TOL):
        self.grid_n = grid_n
        self.tol = tol
        self.tie_tol = tie_tol
        self.straightness_tol = straightness_tol

    def _config(self) -> SolverConfig:
        return SolverConfig(grid_n=self.grid_n, tol=self.tol, tie_tol=self.tie_tol,
                            straightness_tol=self.straightness_tol)

    def fit(self, surface: Surface, y=None):
        self.surface_ = check_surface(surface)
        return self

    def _check_fitted(self):
        if not hasattr(self, "surface_"):
            from sklearn.exceptions import NotFittedError
            raise NotFittedError("call fit(surface) first")

    def solve(self, A: SurfacePoint, B: SurfacePoint) -> SolveReport:
        self._check_fitted()
        return solve(self.surface_, A, B, self._config())

    def predict(self, pairs) -> np.ndarray:
        self._check_fitted()
        return np.array([self.solve(a, b).min_length for a, b in pairs])

    def count_paths(self, pairs) -> np.ndarray:
        """Number of minimal paths per pair (-1 for an infinite family)."""
        self._check_fitted()
        out = []
        for a, b in pairs:
            m = self.solve(a, b).multiplicity
            out.append(-1 if m.infinite else m.count)
        return np.array(out)


__all__ = ["SolverConfig", "SolveReport", "Multiplicity", "FamilyResult", "solve",
           "rebuild", "minimize_1d", "minimize_2d", "MinimalPathSolver",
           "section_coordinate", "same_path"]
