"""Candidate path families and their closed-form length functionals.

Everything here works in the normalized frame: A sits at angle 0 and B at
angle ``theta`` in ``[0, pi]``.  Crossing parameters ``t`` and ``u`` range over
``[0, theta]``; ``t`` is measured from A's half-plane and ``u`` from B's, so a
lid chord between the two crossings subtends ``theta - t - u``.

The square roots are written in forms that avoid cancellation, e.g.
``a^2 - 2as cos(t/s) + s^2 = (s-a)^2 + 4as sin^2(t/2s)``; the naive forms
lose all precision on very tall cups.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import FaceMismatch, ParamOutOfBox
from .flatmodel import Segment
from .geometry import Face, Surface, SurfacePoint
from .numerics import golden_section

_EPS = 1e-12


class FamilyId(str, enum.Enum):
    HalfPlane = "HalfPlane"
    CanSideDirect = "CanSideDirect"
    CanSideOverLid = "CanSideOverLid"
    CanSideOverBase = "CanSideOverBase"
    CanSideToLid = "CanSideToLid"
    CanSideToBase = "CanSideToBase"
    CanSideToLidViaBase = "CanSideToLidViaBase"
    CanSideToBaseViaLid = "CanSideToBaseViaLid"
    CanLidToBase = "CanLidToBase"
    CupSideDirect = "CupSideDirect"
    CupSideOverLid = "CupSideOverLid"
    CupSideToLid = "CupSideToLid"
    LidChord = "LidChord"
    BaseChord = "BaseChord"
    CupLidChord = "CupLidChord"


# -- stable pieces ----------------------------------------------------------

def rim_chord(x):
    """Chord between two rim points whose angles differ by ``x``."""
    return 2.0 * np.abs(np.sin(0.5 * np.asarray(x, dtype=float)))


def _d_rim_chord(x):
    x = np.asarray(x, dtype=float)
    return np.sign(np.sin(0.5 * x)) * np.cos(0.5 * x)


def disk_chord(r, x):
    """Distance from a disk point at radius ``r`` to a rim point ``x`` radians away."""
    r = np.asarray(r, dtype=float)
    return np.sqrt((1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * np.asarray(x, dtype=float)) ** 2)


def _d_disk_chord(r, x):
    length = disk_chord(r, x)
    num = r * np.sin(x)
    return np.divide(num, length, out=np.zeros(np.broadcast(num, length).shape),
                     where=length > 0)


def cone_chord(a, b, s, x):
    """Chord in the unrolled sector between slants ``a`` and ``b``, ``x`` rim radians apart."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.sqrt((a - b) ** 2 + 4.0 * a * b * np.sin(0.5 * np.asarray(x, dtype=float) / s) ** 2)


def _d_cone_chord(a, b, s, x):
    """Derivative of :func:`cone_chord` in ``x``."""
    length = cone_chord(a, b, s, x)
    num = a * b * np.sin(np.asarray(x, dtype=float) / s) / s
    return np.divide(num, length, out=np.zeros(np.broadcast(num, length).shape),
                     where=length > 0)


def _safe_ratio(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    return np.divide(num, den, out=np.zeros(np.broadcast(num, den).shape), where=den > 0)


# -- public scalar functionals ------------------------------------------------

def _check(theta, *params, lengths=()):
    if not (-_EPS <= theta <= math.pi + _EPS):
        raise ParamOutOfBox(f"theta={theta} outside [0, pi]")
    for p in params:
        if not (-_EPS <= p <= theta + _EPS):
            raise ParamOutOfBox(f"parameter {p} outside [0, {theta}]")
    for name, v, lo, hi in lengths:
        if not (lo - _EPS <= v <= hi + _EPS):
            raise ParamOutOfBox(f"{name}={v} outside [{lo}, {hi}]")


def can_side_to_lid_length(a, b, theta, t):
    """Side point ``a`` below the lid rim to a lid point ``b`` from the axis,
    crossing the rim at angle ``t``."""
    _check(theta, t, lengths=[("a", a, 0, math.inf), ("b", b, 0, 1)])
    return float(_can_side_to_rim(a, b, theta, t))


def cup_side_to_lid_length(a, b, s, theta, t):
    """Side point at slant ``a`` to a lid point ``b`` from the axis on a cup."""
    _check(theta, t, lengths=[("a", a, 0, s), ("b", b, 0, 1)])
    return float(_cup_side_to_lid(a, b, s, theta, t))


def can_side_over_lid_length(a, b, theta, t, u):
    """Side-lid-side path; ``a``, ``b`` are distances below the lid rim."""
    _check(theta, t, u, lengths=[("a", a, 0, math.inf), ("b", b, 0, math.inf)])
    return float(_can_over(a, b, theta, t, u))


def can_side_over_base_length(a, b, h, theta, t, u):
    """Side-base-side path; ``a``, ``b`` are distances below the lid rim."""
    _check(theta, t, u, lengths=[("a", a, 0, h), ("b", b, 0, h)])
    return float(_can_over(h - a, h - b, theta, t, u))


def cup_side_over_lid_length(a, b, s, theta, t, u):
    _check(theta, t, u, lengths=[("a", a, 0, s), ("b", b, 0, s)])
    return float(_cup_over(a, b, s, theta, t, u))


def can_lid_to_base_length(a, b, h, theta, t, u, convention: str = "subtended"):
    """Lid chord, side geodesic, base chord.

    ``convention="subtended"``: the lid crossing is ``t`` from A and the base
    crossing ``u`` from B.  ``convention="from_b"`` measures the lid crossing
    from B and the base crossing from A, which turns the chord angles into
    ``theta - t`` and ``theta - u``.  The two agree under
    ``(t, u) -> (theta - t, theta - u)``.
    """
    _check(theta, t, u, lengths=[("a", a, 0, 1), ("b", b, 0, 1)])
    if convention == "from_b":
        t, u = theta - t, theta - u
    elif convention != "subtended":
        raise ValueError(f"unknown convention {convention!r}")
    return float(_lid_to_base(a, b, h, theta, t, u))


def direct_side_length(A: SurfacePoint, B: SurfacePoint, surface: Surface) -> float:
    """Length of the classical side geodesic between two side or rim points."""
    from .geometry import angle_gap, canonicalize

    A = canonicalize(A, surface)
    B = canonicalize(B, surface)
    ok = {Face.SIDE, Face.RIM1, Face.RIM2} if surface.is_can else {Face.SIDE, Face.RIM1, Face.APEX}
    if A.face not in ok or B.face not in ok:
        raise FaceMismatch(f"{A.face.value} / {B.face.value} are not both on the side")
    theta = angle_gap(A, B).theta
    if surface.is_can:
        return math.hypot(A.height_or_slant - B.height_or_slant, theta)
    return float(cone_chord(A.height_or_slant, B.height_or_slant, surface.s, theta))


# -- vectorized kernels and gradients ----------------------------------------

def _can_side_to_rim(a, b, theta, t):
    return np.hypot(a, t) + disk_chord(b, theta - t)


def _can_side_to_rim_grad(a, b, theta, t):
    return _safe_ratio(t, np.hypot(a, t)) - _d_disk_chord(b, theta - t)


def _cup_side_to_lid(a, b, s, theta, t):
    return cone_chord(a, s, s, t) + disk_chord(b, theta - t)


def _cup_side_to_lid_grad(a, b, s, theta, t):
    return _d_cone_chord(a, s, s, t) - _d_disk_chord(b, theta - t)


def _can_over(a, b, theta, t, u):
    return np.hypot(a, t) + np.hypot(b, u) + rim_chord(theta - t - u)


def _can_over_grad(a, b, theta, t, u):
    dc = _d_rim_chord(theta - t - u)
    return np.array([_safe_ratio(t, np.hypot(a, t)) - dc,
                     _safe_ratio(u, np.hypot(b, u)) - dc])


def _cup_over(a, b, s, theta, t, u):
    return cone_chord(a, s, s, t) + cone_chord(b, s, s, u) + rim_chord(theta - t - u)


def _cup_over_grad(a, b, s, theta, t, u):
    dc = _d_rim_chord(theta - t - u)
    return np.array([_d_cone_chord(a, s, s, t) - dc, _d_cone_chord(b, s, s, u) - dc])


def _lid_to_base(a, b, h, theta, t, u):
    return disk_chord(a, t) + disk_chord(b, u) + np.hypot(h, theta - t - u)


def _lid_to_base_grad(a, b, h, theta, t, u):
    w = theta - t - u
    dw = _safe_ratio(w, np.hypot(h, w))
    return np.array([_d_disk_chord(a, t) - dw, _d_disk_chord(b, u) - dw])


def _via_inner(h, theta, t, u, iters=60):
    """Best re-entry angle ``w`` for a base detour leaving at ``t`` and
    climbing to the lid rim at ``theta - u`` (vectorized golden search)."""
    t = np.asarray(t, dtype=float)
    target = theta - np.asarray(u, dtype=float)
    lo = np.minimum(t, target)
    hi = np.maximum(t, target)

    def g(w):
        return rim_chord(w - t) + np.hypot(h, target - w)

    r = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - r * (hi - lo)
    x2 = lo + r * (hi - lo)
    f1, f2 = g(x1), g(x2)
    for _ in range(iters):
        left = f1 <= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        nx1 = np.where(left, hi - r * (hi - lo), x2)
        nx2 = np.where(left, x1, lo + r * (hi - lo))
        nf1 = np.where(left, g(nx1), f2)
        nf2 = np.where(left, f1, g(nx2))
        x1, x2, f1, f2 = nx1, nx2, nf1, nf2
    best = np.where(f1 <= f2, x1, x2)
    fbest = np.minimum(f1, f2)
    for edge in (t, target):
        fe = g(edge)
        better = fe < fbest
        best = np.where(better, edge, best)
        fbest = np.where(better, fe, fbest)
    return best, fbest


def _via_inner_scalar(h, theta, t, u, tol=1e-13):
    """Scalar version of :func:`_via_inner` (the optimizers probe one point
    at a time, where numpy overhead dominates)."""
    target = theta - u
    lo, hi = min(t, target), max(t, target)
    return golden_section(lambda w: 2.0 * abs(math.sin(0.5 * (w - t))) + math.hypot(h, target - w),
                          lo, hi, tol)


def _via(a_far, b, h, theta, t, u):
    if np.ndim(t) == 0 and np.ndim(u) == 0:
        t, u = float(t), float(u)
        _, inner = _via_inner_scalar(h, theta, t, u)
        return (math.hypot(a_far, t) + inner
                + math.sqrt((1.0 - b) ** 2 + 4.0 * b * math.sin(0.5 * u) ** 2))
    _, inner = _via_inner(h, theta, t, u)
    return np.hypot(a_far, t) + inner + disk_chord(b, u)


# -- family descriptors -------------------------------------------------------

@dataclass
class Family:
    """A parametrized family of paths from A to B in the normalized frame."""

    id: FamilyId
    box: tuple[tuple[float, float], ...]
    length: Callable
    segments: Callable[..., list[Segment]]
    grad: Callable | None = None
    swapped: bool = False
    roles: tuple[str, str] = ("", "")
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.box)

    @property
    def label(self) -> str:
        return f"{self.id.value}[{self.roles[0]}->{self.roles[1]}]"

    def check(self, params: Sequence[float]):
        if len(params) != self.dim:
            raise ParamOutOfBox(f"{self.id.value} takes {self.dim} parameters")
        for p, (lo, hi) in zip(params, self.box):
            if not (lo - _EPS <= p <= hi + _EPS):
                raise ParamOutOfBox(f"parameter {p} outside [{lo}, {hi}]")

    def value(self, *params) -> float:
        self.check(params)
        return float(self.length(*params))


@dataclass(frozen=True)
class Role:
    """How an endpoint enters a family: its face and its face coordinate."""

    face: Face  # SIDE, LID or BASE
    coord: float  # z (can side), slant (cup side) or radius (disk)


def roles(p: SurfacePoint, surface: Surface) -> list[Role]:
    """Faces an (already canonical, non-axial) point can be treated as lying on."""
    f = p.face
    if f is Face.SIDE:
        return [Role(Face.SIDE, p.height_or_slant)]
    if f is Face.LID:
        return [Role(Face.LID, p.radial)]
    if f is Face.BASE:
        return [Role(Face.BASE, p.radial)]
    if f is Face.RIM1:
        top = surface.h if surface.is_can else surface.s
        return [Role(Face.SIDE, top), Role(Face.LID, 1.0)]
    if f is Face.RIM2:
        return [Role(Face.SIDE, 0.0), Role(Face.BASE, 1.0)]
    raise FaceMismatch(f"axial point {f.value} has no roles")


def _side_pair_can(sf: Surface, za, zb, theta):
    h = sf.h
    fams = [Family(
        FamilyId.CanSideDirect, (),
        lambda: math.hypot(za - zb, theta),
        lambda: [Segment(Face.SIDE, (0.0, za), (theta, zb))])]
    for fid, top in ((FamilyId.CanSideOverLid, True), (FamilyId.CanSideOverBase, False)):
        a, b = (h - za, h - zb) if top else (za, zb)
        disk = Face.LID if top else Face.BASE
        zr = h if top else 0.0

        def segs(t, u, a=a, b=b, disk=disk, zr=zr):
            return [Segment(Face.SIDE, (0.0, za), (t, zr)),
                    Segment(disk, (t, 1.0), (theta - u, 1.0)),
                    Segment(Face.SIDE, (theta - u, zr), (theta, zb))]

        fams.append(Family(
            fid, ((0.0, theta), (0.0, theta)),
            lambda t, u, a=a, b=b: _can_over(a, b, theta, t, u),
            segs,
            grad=lambda t, u, a=a, b=b: _can_over_grad(a, b, theta, t, u)))
    return fams


def _side_disk_can(sf: Surface, za, disk: Face, rb, theta):
    h = sf.h
    top = disk is Face.LID
    a = h - za if top else za
    zr = h if top else 0.0
    fid = FamilyId.CanSideToLid if top else FamilyId.CanSideToBase

    def segs(t):
        return [Segment(Face.SIDE, (0.0, za), (t, zr)),
                Segment(disk, (t, 1.0), (theta, rb))]

    fams = [Family(fid, ((0.0, theta),),
                   lambda t: _can_side_to_rim(a, rb, theta, t), segs,
                   grad=lambda t: _can_side_to_rim_grad(a, rb, theta, t))]

    # detour across the opposite disk before climbing to the target rim
    far = Face.BASE if top else Face.LID
    z_far = 0.0 if top else h
    a_far = za if top else h - za
    vid = FamilyId.CanSideToLidViaBase if top else FamilyId.CanSideToBaseViaLid

    def via_segs(t, u):
        w, _ = _via_inner_scalar(h, theta, float(t), float(u))
        return [Segment(Face.SIDE, (0.0, za), (t, z_far)),
                Segment(far, (t, 1.0), (w, 1.0)),
                Segment(Face.SIDE, (w, z_far), (theta - u, zr)),
                Segment(disk, (theta - u, 1.0), (theta, rb))]

    fams.append(Family(vid, ((0.0, theta), (0.0, theta)),
                       lambda t, u: _via(a_far, rb, h, theta, t, u), via_segs))
    return fams


def _lid_base_can(sf: Surface, ra, rb, theta):
    h = sf.h

    def segs(t, u):
        return [Segment(Face.LID, (0.0, ra), (t, 1.0)),
                Segment(Face.SIDE, (t, h), (theta - u, 0.0)),
                Segment(Face.BASE, (theta - u, 1.0), (theta, rb))]

    return [Family(FamilyId.CanLidToBase, ((0.0, theta), (0.0, theta)),
                   lambda t, u: _lid_to_base(ra, rb, h, theta, t, u), segs,
                   grad=lambda t, u: _lid_to_base_grad(ra, rb, h, theta, t, u))]


def _chord(fid, disk, ra, rb, theta):
    return [Family(fid, (), lambda: _disk_disk(ra, rb, theta),
                   lambda: [Segment(disk, (0.0, ra), (theta, rb))])]


def _disk_disk(ra, rb, theta):
    return math.sqrt((ra - rb) ** 2 + 4.0 * ra * rb * math.sin(0.5 * theta) ** 2)


def _side_pair_cup(sf: Surface, sa, sb, theta):
    s = sf.s

    def segs(t, u):
        return [Segment(Face.SIDE, (0.0, sa), (t, s)),
                Segment(Face.LID, (t, 1.0), (theta - u, 1.0)),
                Segment(Face.SIDE, (theta - u, s), (theta, sb))]

    return [
        Family(FamilyId.CupSideDirect, (),
               lambda: float(cone_chord(sa, sb, s, theta)),
               lambda: [Segment(Face.SIDE, (0.0, sa), (theta, sb))]),
        Family(FamilyId.CupSideOverLid, ((0.0, theta), (0.0, theta)),
               lambda t, u: _cup_over(sa, sb, s, theta, t, u), segs,
               grad=lambda t, u: _cup_over_grad(sa, sb, s, theta, t, u)),
    ]


def _side_lid_cup(sf: Surface, sa, rb, theta):
    s = sf.s

    def segs(t):
        return [Segment(Face.SIDE, (0.0, sa), (t, s)),
                Segment(Face.LID, (t, 1.0), (theta, rb))]

    return [Family(FamilyId.CupSideToLid, ((0.0, theta),),
                   lambda t: _cup_side_to_lid(sa, rb, s, theta, t), segs,
                   grad=lambda t: _cup_side_to_lid_grad(sa, rb, s, theta, t))]


def _swap(fam: Family, theta: float) -> Family:
    """Family computed from B to A, re-expressed as a path from A to B."""
    inner = fam.segments

    def segs(*params):
        rev = [seg.transformed(-1.0, theta).reversed() for seg in inner(*params)]
        return rev[::-1]

    return Family(fam.id, fam.box, fam.length, segs, fam.grad, swapped=True,
                  roles=(fam.roles[1], fam.roles[0]), meta=fam.meta)


def _pair_families(sf: Surface, ra: Role, rb: Role, theta: float) -> list[Family]:
    fa, fb = ra.face, rb.face
    if sf.is_can:
        if fa is Face.SIDE and fb is Face.SIDE:
            return _side_pair_can(sf, ra.coord, rb.coord, theta)
        if fa is Face.SIDE:
            return _side_disk_can(sf, ra.coord, fb, rb.coord, theta)
        if fb is Face.SIDE:
            return [_swap(f, theta) for f in _side_disk_can(sf, rb.coord, fa, ra.coord, theta)]
        if fa is fb:
            fid = FamilyId.LidChord if fa is Face.LID else FamilyId.BaseChord
            return _chord(fid, fa, ra.coord, rb.coord, theta)
        if fa is Face.LID:
            return _lid_base_can(sf, ra.coord, rb.coord, theta)
        return [_swap(f, theta) for f in _lid_base_can(sf, rb.coord, ra.coord, theta)]
    if fa is Face.SIDE and fb is Face.SIDE:
        return _side_pair_cup(sf, ra.coord, rb.coord, theta)
    if fa is Face.SIDE:
        return _side_lid_cup(sf, ra.coord, rb.coord, theta)
    if fb is Face.SIDE:
        return [_swap(f, theta) for f in _side_lid_cup(sf, rb.coord, ra.coord, theta)]
    return _chord(FamilyId.CupLidChord, Face.LID, ra.coord, rb.coord, theta)


def applicable_families(surface: Surface, A: SurfacePoint, B: SurfacePoint,
                        theta: float) -> list[Family]:
    """All candidate families for canonical, non-axial ``A`` and ``B``.

    Rim points take part both as side points and as disk points, so the
    list is a superset; every member is a genuine path from A to B.
    """
    out = []
    for ra in roles(A, surface):
        for rb in roles(B, surface):
            for fam in _pair_families(surface, ra, rb, theta):
                fam.roles = (ra.face.value, rb.face.value)
                out.append(fam)
    return out


# -- half-plane paths ------------------------------------------------------

def section_coordinate(p: SurfacePoint, surface: Surface) -> float:
    """Arc-length position of ``p`` along the half-plane section of the surface.

    The section runs from the lid center over the lid rim down the side to
    the base center (can), or from the apex down the side to the lid center
    (cup).
    """
    f = p.face
    if surface.is_can:
        h = surface.h
        if f is Face.LIDCENTER:
            return 0.0
        if f is Face.LID:
            return p.radial
        if f in (Face.SIDE, Face.RIM1, Face.RIM2):
            return 1.0 + (h - p.height_or_slant)
        if f is Face.BASE:
            return 2.0 + h - p.radial
        return 2.0 + h
    s = surface.s
    if f is Face.APEX:
        return 0.0
    if f in (Face.SIDE, Face.RIM1):
        return p.height_or_slant
    if f is Face.LID:
        return s + 1.0 - p.radial
    return s + 1.0


def half_plane_segments(surface: Surface, xa: float, xb: float, angle: float = 0.0) -> list[Segment]:
    """Segments of the section curve from coordinate ``xa`` to ``xb``."""
    if surface.is_can:
        h = surface.h
        pieces = [(0.0, 1.0, Face.LID, lambda x: x),
                  (1.0, 1.0 + h, Face.SIDE, lambda x: h - (x - 1.0)),
                  (1.0 + h, 2.0 + h, Face.BASE, lambda x: 2.0 + h - x)]
    else:
        s = surface.s
        pieces = [(0.0, s, Face.SIDE, lambda x: x),
                  (s, s + 1.0, Face.LID, lambda x: s + 1.0 - x)]
    lo, hi = min(xa, xb), max(xa, xb)
    segs = []
    for p0, p1, face, coord in pieces:
        a, b = max(lo, p0), min(hi, p1)
        if b > a:
            segs.append(Segment(face, (angle, coord(a)), (angle, coord(b))))
    if xa > xb:
        segs = [seg.reversed() for seg in reversed(segs)]
    return segs


def half_plane_family(surface: Surface, A: SurfacePoint, B: SurfacePoint) -> Family:
    xa = section_coordinate(A, surface)
    xb = section_coordinate(B, surface)
    return Family(FamilyId.HalfPlane, (), lambda: abs(xa - xb),
                  lambda: half_plane_segments(surface, xa, xb), roles=("", ""))
