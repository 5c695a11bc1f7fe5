"""Flat models: the side, lid and base laid out isometrically in one plane.

Each face has a chart in which classical geodesics are straight:

* can side: ``(angle, z)``, angle measured as arc length on the unit rim;
* cup side: polar about the sector vertex, ``slant * (cos(angle/s), sin(angle/s))``;
* lid/base: the disk itself, ``r * (cos(angle), sin(angle))``.

Side angles are kept unwrapped so that a straight chart segment stays straight
when it runs past the seam.  A :class:`FlatModel` fixes, for each rim, the
point where the disk touches the unrolled side; gluing matches arc length on
the rim with arc length along the side edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import SingleSegment
from .geometry import Face, Surface, SurfacePoint, canonicalize, embed3d

DEFAULT_STRAIGHTNESS_TOL = 1e-8
_ZERO = 1e-15


@dataclass(frozen=True)
class Segment:
    """A straight chart segment on one face.

    Endpoints are ``(angle, coord)`` pairs; ``coord`` is ``z`` (can side),
    slant from the apex (cup side) or distance from the axis (lid/base).
    """

    face: Face
    start: tuple[float, float]
    end: tuple[float, float]

    def chart(self, surface: Surface) -> tuple[np.ndarray, np.ndarray]:
        return (chart_point(self.face, *self.start, surface),
                chart_point(self.face, *self.end, surface))

    def length(self, surface: Surface) -> float:
        p, q = self.chart(surface)
        return float(math.hypot(*(q - p)))

    def transformed(self, sign: float, offset: float) -> "Segment":
        (a0, c0), (a1, c1) = self.start, self.end
        return Segment(self.face, (offset + sign * a0, c0), (offset + sign * a1, c1))

    def reversed(self) -> "Segment":
        return Segment(self.face, self.end, self.start)


def chart_point(face: Face, angle: float, coord: float, surface: Surface) -> np.ndarray:
    if face is Face.SIDE:
        if surface.is_can:
            return np.array([angle, coord])
        phi = angle / surface.s
        return np.array([coord * math.cos(phi), coord * math.sin(phi)])
    return np.array([coord * math.cos(angle), coord * math.sin(angle)])


def _rim_of(face: Face) -> Face:
    return Face.RIM2 if face is Face.BASE else Face.RIM1


@dataclass(frozen=True)
class GeodesicPath:
    """Piecewise straight path through the face charts of a surface."""

    surface: Surface
    segments: tuple[Segment, ...]

    @classmethod
    def build(cls, surface: Surface, segments: Iterable[Segment]) -> "GeodesicPath":
        """Drop zero-length pieces and keep the rest in order."""
        kept = tuple(seg for seg in segments if seg.length(surface) > _ZERO)
        if not kept:
            raise ValueError("path has no segment of positive length")
        return cls(surface, kept)

    @property
    def total_length(self) -> float:
        return float(sum(seg.length(self.surface) for seg in self.segments))

    def _point(self, face: Face, angle: float, coord: float) -> SurfacePoint:
        surf = self.surface
        if face is Face.SIDE:
            if surf.is_can:
                return canonicalize(SurfacePoint.side(angle, coord), surf)
            if coord <= _ZERO:
                return SurfacePoint.apex()
            return canonicalize(SurfacePoint.side(angle, slant=coord), surf)
        return canonicalize(SurfacePoint(face, angle, coord), surf)

    @property
    def start(self) -> SurfacePoint:
        seg = self.segments[0]
        return self._point(seg.face, *seg.start)

    @property
    def end(self) -> SurfacePoint:
        seg = self.segments[-1]
        return self._point(seg.face, *seg.end)

    @property
    def crossings(self) -> list[SurfacePoint]:
        """Rim points where the path changes face."""
        out = []
        for prev, nxt in zip(self.segments, self.segments[1:]):
            if prev.face is not nxt.face:
                out.append(self._point(prev.face, *prev.end))
        return out

    def junctions(self) -> list[SurfacePoint]:
        return [self._point(seg.face, *seg.end) for seg in self.segments[:-1]]

    def rim_hits(self, rim: Face) -> int:
        """Number of distinct points of the rim met at endpoints or junctions."""
        pts = [self.start, *self.junctions(), self.end]
        hits: list[np.ndarray] = []
        for p in pts:
            if p.face is rim:
                x = embed3d(p, self.surface)
                if all(np.linalg.norm(x - y) > 1e-9 for y in hits):
                    hits.append(x)
        return len(hits)

    def transformed(self, sign: float, offset: float) -> "GeodesicPath":
        return GeodesicPath(self.surface,
                            tuple(seg.transformed(sign, offset) for seg in self.segments))

    def mirrored(self, about: float = 0.0) -> "GeodesicPath":
        """Reflect across the axial plane at angle ``about``."""
        return self.transformed(-1.0, 2.0 * about)

    def reversed(self) -> "GeodesicPath":
        return GeodesicPath(self.surface,
                            tuple(seg.reversed() for seg in reversed(self.segments)))

    def apex_distance(self) -> float:
        """Intrinsic distance from the path to the cone point (cups only)."""
        if self.surface.is_can:
            raise AttributeError("a can has no apex")
        best = math.inf
        for seg in self.segments:
            if seg.face is not Face.SIDE:
                # lid points are at least the slant height away from the apex
                best = min(best, self.surface.s)
                continue
            p, q = seg.chart(self.surface)
            best = min(best, _point_segment_distance(np.zeros(2), p, q))
        return best

    def polyline(self, samples_per_unit: float = 100.0) -> np.ndarray:
        return path_to_polyline(self, self.surface, samples_per_unit)


def _point_segment_distance(x: np.ndarray, p: np.ndarray, q: np.ndarray) -> float:
    d = q - p
    dd = float(d @ d)
    if dd == 0:
        return float(np.linalg.norm(x - p))
    lam = min(1.0, max(0.0, float((x - p) @ d) / dd))
    return float(np.linalg.norm(x - (p + lam * d)))


@dataclass(frozen=True)
class FlatModel:
    """Side, lid and base placed in one plane.

    ``tangency`` maps each rim to the (unwrapped) angle at which its disk
    touches the unrolled side.  ``seam`` is the angle at which the side is
    cut open; it only affects the drawn outline of the side.
    """

    surface: Surface
    tangency: dict = field(default_factory=dict)
    seam: float = 0.0

    def side_point(self, angle, coord):
        surf = self.surface
        angle = np.asarray(angle, dtype=float)
        coord = np.asarray(coord, dtype=float)
        if surf.is_can:
            return np.stack([angle, coord], axis=-1)
        phi = angle / surf.s
        return np.stack([coord * np.cos(phi), coord * np.sin(phi)], axis=-1)

    def disk_center(self, rim: Face) -> np.ndarray:
        psi = self.tangency[rim]
        surf = self.surface
        if surf.is_can:
            return np.array([psi, surf.h + 1.0 if rim is Face.RIM1 else -1.0])
        phi = psi / surf.s
        return (surf.s + 1.0) * np.array([math.cos(phi), math.sin(phi)])

    def disk_point(self, face: Face, angle, radius):
        """Place lid (``face=LID``) or base points, glued at the tangency."""
        rim = _rim_of(face)
        psi = self.tangency[rim]
        angle = np.asarray(angle, dtype=float)
        radius = np.asarray(radius, dtype=float)
        surf = self.surface
        if surf.is_can:
            if rim is Face.RIM1:
                beta = -0.5 * math.pi + (angle - psi)
            else:
                beta = 0.5 * math.pi - (angle - psi)
        else:
            beta = psi / surf.s + math.pi - (angle - psi)
        c = self.disk_center(rim)
        return c + np.stack([radius * np.cos(beta), radius * np.sin(beta)], axis=-1)

    def place(self, face: Face, angle, coord):
        if face is Face.SIDE:
            return self.side_point(angle, coord)
        return self.disk_point(face, angle, coord)

    def side_outline(self, n: int = 256) -> np.ndarray:
        """Closed outline of the unrolled side (rectangle or sector)."""
        surf = self.surface
        if surf.is_can:
            x0 = self.seam
            return np.array([[x0, 0.0], [x0 + 2 * math.pi, 0.0],
                             [x0 + 2 * math.pi, surf.h], [x0, surf.h]])
        phi = np.linspace(self.seam / surf.s, (self.seam + 2 * math.pi) / surf.s, n)
        arc = surf.s * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return np.vstack([[0.0, 0.0], arc])


def unroll(surface: Surface, tangency_angles: Sequence[float] | dict = (),
           seam: float = 0.0) -> FlatModel:
    """Flat model with disks tangent to the side at the given rim angles.

    A plain sequence is read in rim order (lid rim first, then base rim for
    a can); a missing entry defaults to angle 0.
    """
    if isinstance(tangency_angles, dict):
        tang = {Face(k): float(v) for k, v in tangency_angles.items()}
    else:
        tang = {rim: float(a) for rim, a in zip(surface.rims, tangency_angles)}
    for rim in surface.rims:
        tang.setdefault(rim, 0.0)
    return FlatModel(surface, tang, seam)


def path_to_polyline(path: GeodesicPath, surface: Surface,
                     samples_per_unit: float = 100.0) -> np.ndarray:
    """Sample ``path`` as a 3-D polyline lying on the surface."""
    pts = []
    for seg in path.segments:
        p, q = seg.chart(surface)
        n = max(2, int(math.ceil(seg.length(surface) * samples_per_unit)) + 1)
        lam = np.linspace(0.0, 1.0, n)[:, None]
        xy = p + lam * (q - p)
        pts.append(_chart_to_3d(seg, xy, surface))
    out = [pts[0]]
    for block in pts[1:]:
        out.append(block[1:])
    return np.vstack(out)


def _chart_to_3d(seg: Segment, xy: np.ndarray, surface: Surface) -> np.ndarray:
    if seg.face is not Face.SIDE:
        z = surface.h if (surface.is_can and seg.face is Face.LID) else 0.0
        return np.column_stack([xy[:, 0], xy[:, 1], np.full(len(xy), z)])
    if surface.is_can:
        return np.column_stack([np.cos(xy[:, 0]), np.sin(xy[:, 0]), xy[:, 1]])
    s = surface.s
    H = surface.height
    sigma = np.hypot(xy[:, 0], xy[:, 1])
    # angles relative to a reference ray of the segment; sector spans < pi
    (a0, c0), (a1, c1) = seg.start, seg.end
    ref_angle = a0 if c0 > _ZERO else a1
    ref = np.array([math.cos(ref_angle / s), math.sin(ref_angle / s)])
    rel = np.arctan2(ref[0] * xy[:, 1] - ref[1] * xy[:, 0], xy @ ref)
    ang = ref_angle + s * rel
    rho = sigma / s
    return np.column_stack([rho * np.cos(ang), rho * np.sin(ang), H * (1.0 - rho)])


def _deviation(p: np.ndarray, x: np.ndarray, q: np.ndarray) -> float:
    """How far ``p -> x -> q`` is from continuing straight through ``x``."""
    worst = 0.0
    for a, b in ((p, q), (q, p)):
        d_in = x - a
        n_in = math.hypot(*d_in)
        if n_in <= _ZERO:
            continue
        u = d_in / n_in
        w = b - x
        along = float(u @ w)
        if along < 0:
            dev = math.hypot(*w)
        else:
            dev = abs(u[0] * w[1] - u[1] * w[0])
        worst = max(worst, dev)
    return worst


def straightness_defect(path: GeodesicPath, surface: Surface | None = None) -> float:
    """Largest deviation from straightness over the junctions of ``path``.

    At each junction the two adjacent faces are unrolled with the disk
    touching the side at the junction, and the far endpoints of the two
    segments are compared against the line through the junction.  Returns
    0 for a geodesic (up to rounding).
    """
    surface = surface or path.surface
    segs = path.segments
    if len(segs) < 2:
        raise SingleSegment("straightness needs at least two segments")
    worst = 0.0
    for s1, s2 in zip(segs, segs[1:]):
        if s1.face is s2.face:
            p, x = s1.chart(surface)
            _, q = s2.chart(surface)
        else:
            side, disk = (s1, s2) if s1.face is Face.SIDE else (s2, s1)
            psi_side = s1.end[0] if side is s1 else s2.start[0]
            psi_disk = s1.end[0] if disk is s1 else s2.start[0]
            model = unroll(surface, {_rim_of(disk.face): psi_side})
            # disk angles are periodic, so shift them to the side's branch
            shift = psi_side - psi_disk

            def place(seg, end):
                a, c = seg.end if end else seg.start
                if seg.face is Face.SIDE:
                    return model.side_point(a, c)
                return model.disk_point(seg.face, a + shift, c)

            p, x, q = place(s1, False), place(s1, True), place(s2, True)
        worst = max(worst, _deviation(p, x, q))
    return worst


def is_geodesic(path: GeodesicPath, tol: float = DEFAULT_STRAIGHTNESS_TOL) -> bool:
    if len(path.segments) < 2:
        return True
    return straightness_defect(path) < tol


# -- SVG ----------------------------------------------------------------------

_FACE_COLORS = {Face.SIDE: "#d9e6f2", Face.LID: "#f2e6d9", Face.BASE: "#e6f2d9"}
_PATH_COLORS = ["#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e", "#17202a"]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _panel(model: FlatModel, paths: Sequence[GeodesicPath], stroke: float,
           first_color: int = 0) -> tuple[list[str], np.ndarray, np.ndarray]:
    """SVG elements of one flat model plus its bounding box."""
    surf = model.surface
    shapes: list[str] = []
    extent: list[np.ndarray] = []

    outline = model.side_outline()
    extent.append(outline)
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in outline)
    shapes.append(f'<g class="face-side" data-face="side"><polygon points="{pts}" '
                  f'fill="{_FACE_COLORS[Face.SIDE]}" stroke="black" '
                  f'stroke-width="{_fmt(stroke)}"/></g>')
    for rim in surf.rims:
        disk_face = Face.LID if rim is Face.RIM1 else Face.BASE
        c = model.disk_center(rim)
        extent.append(np.array([c - 1.0, c + 1.0]))
        shapes.append(f'<g class="face-{disk_face.value}" data-face="{disk_face.value}">'
                      f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="1" '
                      f'fill="{_FACE_COLORS[disk_face]}" stroke="black" '
                      f'stroke-width="{_fmt(stroke)}"/></g>')

    for k, path in enumerate(paths, start=first_color):
        color = _PATH_COLORS[k % len(_PATH_COLORS)]
        pieces = []
        for seg in path.segments:
            a = model.place(seg.face, *seg.start)
            b = model.place(seg.face, *seg.end)
            extent.append(np.array([a, b]))
            pieces.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                          f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
                          f'data-face="{seg.face.value}"/>')
        shapes.append(f'<g id="path-{k}" class="path" stroke="{color}" '
                      f'stroke-width="{_fmt(2 * stroke)}" fill="none" '
                      f'data-length="{path.total_length!r}">' + "".join(pieces) + "</g>")

    allpts = np.vstack(extent)
    return shapes, allpts.min(axis=0) - 0.2, allpts.max(axis=0) + 0.2


def _document(groups: list[str], lo: np.ndarray, hi: np.ndarray) -> str:
    w, h = hi - lo
    # flip y so the drawing has the usual mathematical orientation
    view = f"{_fmt(lo[0])} {_fmt(-hi[1])} {_fmt(w)} {_fmt(h)}"
    return ('<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{view}" width="{_fmt(100 * w)}" height="{_fmt(100 * h)}">'
            '<g transform="scale(1,-1)">' + "".join(groups) + "</g></svg>\n")


def flat_model_svg(model: FlatModel, paths: Sequence[GeodesicPath] = (),
                   stroke: float = 0.02) -> str:
    """Render the flat model and path overlays as an SVG document.

    One user unit equals one rim radius.  Each face is its own ``<g>``;
    path pieces carry their face tag in ``data-face``.
    """
    shapes, lo, hi = _panel(model, paths, stroke)
    return _document(shapes, lo, hi)


def paths_svg(paths: Sequence[GeodesicPath], stroke: float = 0.02) -> str:
    """One panel per path, each in the flat model that straightens it,
    laid out left to right."""
    groups = []
    x = 0.0
    top, bottom = -math.inf, math.inf
    for k, path in enumerate(paths):
        shapes, lo, hi = _panel(path_flat_model(path), [path], stroke, first_color=k)
        dx = x - lo[0]
        groups.append(f'<g class="panel" transform="translate({_fmt(dx)},0)">'
                      + "".join(shapes) + "</g>")
        x += hi[0] - lo[0]
        top, bottom = max(top, hi[1]), min(bottom, lo[1])
    if not groups:
        raise ValueError("no paths to draw")
    return _document(groups, np.array([0.0, bottom]), np.array([x, top]))


def path_flat_model(path: GeodesicPath) -> FlatModel:
    """Flat model tangent at the path's first crossing of each rim."""
    tang: dict[Face, float] = {}
    # side-chart (unwrapped) angle of each crossing
    for prev, nxt in zip(path.segments, path.segments[1:]):
        if prev.face is nxt.face:
            continue
        disk = nxt if prev.face is Face.SIDE else prev
        rim = _rim_of(disk.face)
        if rim not in tang:
            tang[rim] = prev.end[0] if prev.face is Face.SIDE else nxt.start[0]
    side_angles = [a for seg in path.segments if seg.face is Face.SIDE
                   for a in (seg.start[0], seg.end[0])]
    seam = (min(side_angles) - 0.25) if side_angles else 0.0
    # a disk the path never enters is drawn next to the path
    anchor = next(iter(tang.values()), seam + 0.25)
    for rim in path.surface.rims:
        tang.setdefault(rim, anchor)
    return unroll(path.surface, tang, seam=seam)
