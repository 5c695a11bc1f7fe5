"""Surfaces, surface points and the angular normalization used by the solver.

All lengths are in units of the rim radius, which is fixed at 1.

Can orientation: base at z=0, lid at z=h.  Cup orientation: rim and lid at
z=0, apex at z=sqrt(s**2 - 1).  Side points on a cup are located by their
slant distance from the apex.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidPoint, OutOfRange, ParseError

TWO_PI = 2.0 * math.pi
# snapping tolerance for points given numerically on a rim or the axis
SNAP = 1e-14


class Kind(str, enum.Enum):
    CAN = "can"
    CUP = "cup"


class Face(str, enum.Enum):
    SIDE = "side"
    LID = "lid"
    BASE = "base"
    RIM1 = "rim1"
    RIM2 = "rim2"
    APEX = "apex"
    LIDCENTER = "lidcenter"
    BASECENTER = "basecenter"

    @property
    def is_axial(self) -> bool:
        return self in (Face.APEX, Face.LIDCENTER, Face.BASECENTER)

    @property
    def is_rim(self) -> bool:
        return self in (Face.RIM1, Face.RIM2)


@dataclass(frozen=True)
class Surface:
    """A soup can of height ``h`` or a conical cup of slant height ``s``."""

    kind: Kind
    h: float | None = None
    s: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.CAN:
            if self.h is None or not math.isfinite(self.h) or self.h <= 0:
                raise OutOfRange(f"can height must be > 0, got {self.h!r}")
            object.__setattr__(self, "h", float(self.h))
            object.__setattr__(self, "s", None)
        else:
            if self.s is None or not math.isfinite(self.s) or self.s <= 1:
                raise OutOfRange(f"cup slant height must be > 1, got {self.s!r}")
            object.__setattr__(self, "s", float(self.s))
            object.__setattr__(self, "h", None)

    @classmethod
    def can(cls, h: float) -> "Surface":
        return cls(Kind.CAN, h=h)

    @classmethod
    def cup(cls, s: float) -> "Surface":
        return cls(Kind.CUP, s=s)

    @property
    def is_can(self) -> bool:
        return self.kind is Kind.CAN

    @property
    def height(self) -> float:
        """Axial extent: ``h`` for a can, ``sqrt(s**2 - 1)`` for a cup."""
        if self.is_can:
            return self.h
        return math.sqrt(self.s * self.s - 1.0)

    @property
    def cone_angle(self) -> float:
        """Half-angle at the apex, with ``sin(phi) = 1/s``.  Cups only."""
        if self.is_can:
            raise AttributeError("a can has no cone angle")
        return math.asin(1.0 / self.s)

    @property
    def rims(self) -> tuple[Face, ...]:
        return (Face.RIM1, Face.RIM2) if self.is_can else (Face.RIM1,)

    def faces(self) -> tuple[Face, ...]:
        if self.is_can:
            return (Face.SIDE, Face.LID, Face.BASE, Face.RIM1, Face.RIM2,
                    Face.LIDCENTER, Face.BASECENTER)
        return (Face.SIDE, Face.LID, Face.RIM1, Face.APEX, Face.LIDCENTER)

    def spec(self) -> str:
        if self.is_can:
            return f"can:h={self.h!r}"
        return f"cup:s={self.s!r}"


@dataclass(frozen=True)
class SurfacePoint:
    """A point on a surface, tagged with its face.

    ``radial`` is the distance from the axis.  ``height_or_slant`` is ``z``
    for can points and the slant distance from the apex for cup side/rim
    points.  Use :func:`canonicalize` to fill the redundant fields.
    """

    face: Face
    angle: float = 0.0
    radial: float = 0.0
    height_or_slant: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "face", Face(self.face))

    @classmethod
    def side(cls, angle: float, z: float | None = None, *, slant: float | None = None):
        if (z is None) == (slant is None):
            raise ValueError("give exactly one of z (can) or slant (cup)")
        return cls(Face.SIDE, angle, 1.0, z if z is not None else slant)

    @classmethod
    def lid(cls, angle: float, r: float):
        return cls(Face.LID, angle, r)

    @classmethod
    def base(cls, angle: float, r: float):
        return cls(Face.BASE, angle, r)

    @classmethod
    def rim1(cls, angle: float):
        return cls(Face.RIM1, angle, 1.0)

    rim = rim1

    @classmethod
    def rim2(cls, angle: float):
        return cls(Face.RIM2, angle, 1.0)

    @classmethod
    def apex(cls):
        return cls(Face.APEX)

    @classmethod
    def lid_center(cls):
        return cls(Face.LIDCENTER)

    @classmethod
    def base_center(cls):
        return cls(Face.BASECENTER)

    @property
    def is_axial(self) -> bool:
        return self.face.is_axial


@dataclass(frozen=True)
class AngleGap:
    """Angle between the axial half-planes through two points.

    ``mirror_flag`` records that B had to be reflected across the half-plane
    of A to bring its relative angle into ``[0, pi]``.
    """

    theta: float
    mirror_flag: bool = False
    axial: bool = False


def _wrap(angle: float) -> float:
    a = math.fmod(angle, TWO_PI)
    if a < 0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def _check_finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise OutOfRange(f"non-finite coordinate {v!r}")


def canonicalize(point: SurfacePoint, surface: Surface) -> SurfacePoint:
    """Return the canonical form of ``point`` on ``surface``.

    Boundary points are moved to their rim or axial tag, the angle is wrapped
    into ``[0, 2pi)`` (0 for axial points) and the redundant coordinate
    fields are filled in.
    """
    face = point.face
    _check_finite(point.angle, point.radial, point.height_or_slant)
    angle = _wrap(point.angle)

    if surface.is_can:
        h = surface.h
        if face is Face.APEX:
            raise InvalidPoint("a can has no apex")
        if face is Face.SIDE:
            z = point.height_or_slant
            if z < -SNAP or z > h + SNAP:
                raise OutOfRange(f"side height {z} outside [0, {h}]")
            if z >= h - SNAP:
                face = Face.RIM1
            elif z <= SNAP:
                face = Face.RIM2
            else:
                return SurfacePoint(Face.SIDE, angle, 1.0, z)
        elif face in (Face.LID, Face.BASE):
            r = point.radial
            if r < -SNAP or r > 1 + SNAP:
                raise OutOfRange(f"{face.value} radius {r} outside [0, 1]")
            if r <= SNAP:
                face = Face.LIDCENTER if face is Face.LID else Face.BASECENTER
            elif r >= 1 - SNAP:
                face = Face.RIM1 if face is Face.LID else Face.RIM2
            else:
                z = h if face is Face.LID else 0.0
                return SurfacePoint(face, angle, r, z)
        if face is Face.RIM1:
            return SurfacePoint(Face.RIM1, angle, 1.0, h)
        if face is Face.RIM2:
            return SurfacePoint(Face.RIM2, angle, 1.0, 0.0)
        if face is Face.LIDCENTER:
            return SurfacePoint(Face.LIDCENTER, 0.0, 0.0, h)
        return SurfacePoint(Face.BASECENTER, 0.0, 0.0, 0.0)

    s = surface.s
    if face in (Face.BASE, Face.RIM2, Face.BASECENTER):
        raise InvalidPoint(f"a cup has no {face.value}")
    if face is Face.SIDE:
        sl = point.height_or_slant
        if sl <= 0 or sl > s + SNAP:
            raise OutOfRange(f"slant {sl} outside (0, {s}]; use 'apex' for the cone point")
        if sl >= s - SNAP:
            face = Face.RIM1
        else:
            return SurfacePoint(Face.SIDE, angle, sl / s, sl)
    elif face is Face.LID:
        r = point.radial
        if r < -SNAP or r > 1 + SNAP:
            raise OutOfRange(f"lid radius {r} outside [0, 1]")
        if r <= SNAP:
            face = Face.LIDCENTER
        elif r >= 1 - SNAP:
            face = Face.RIM1
        else:
            return SurfacePoint(Face.LID, angle, r, 0.0)
    if face is Face.RIM1:
        return SurfacePoint(Face.RIM1, angle, 1.0, s)
    if face is Face.APEX:
        return SurfacePoint(Face.APEX, 0.0, 0.0, 0.0)
    return SurfacePoint(Face.LIDCENTER, 0.0, 0.0, 0.0)


def classify(point: SurfacePoint, surface: Surface) -> Face:
    """Canonical face tag of ``point``."""
    return canonicalize(point, surface).face


def angle_gap(A: SurfacePoint, B: SurfacePoint) -> AngleGap:
    if A.is_axial or B.is_axial:
        return AngleGap(0.0, False, axial=True)
    d = _wrap(B.angle - A.angle)
    if d <= math.pi:
        return AngleGap(d, False)
    return AngleGap(TWO_PI - d, True)


def embed3d(point: SurfacePoint, surface: Surface) -> np.ndarray:
    """Cartesian coordinates of a point on the surface of revolution."""
    p = canonicalize(point, surface)
    c, s_ = math.cos(p.angle), math.sin(p.angle)
    if surface.is_can:
        if p.face in (Face.SIDE, Face.RIM1, Face.RIM2):
            return np.array([c, s_, p.height_or_slant])
        return np.array([p.radial * c, p.radial * s_, p.height_or_slant])
    H = surface.height
    if p.face is Face.APEX:
        return np.array([0.0, 0.0, H])
    if p.face in (Face.SIDE, Face.RIM1):
        rho = p.height_or_slant / surface.s
        return np.array([rho * c, rho * s_, H * (1.0 - rho)])
    return np.array([p.radial * c, p.radial * s_, 0.0])


def mirror(point: SurfacePoint, about: float = 0.0) -> SurfacePoint:
    """Reflect a point across the axial plane at angle ``about``."""
    if point.is_axial:
        return point
    return replace(point, angle=_wrap(2.0 * about - point.angle))


# -- point and surface spec grammar -------------------------------------------

_FIELDS = {
    "side": {"angle", "z", "slant"},
    "lid": {"angle", "r"},
    "base": {"angle", "r"},
    "rim1": {"angle"},
    "rim2": {"angle"},
    "rim": {"angle"},
    "apex": set(),
    "lidcenter": set(),
    "basecenter": set(),
}


def _parse_kv(body: str, allowed: set[str], text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    if not body:
        return out
    for item in body.split(","):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise ParseError(f"bad field {item!r} in {text!r}")
        if key in out:
            raise ParseError(f"duplicate field {key!r} in {text!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise ParseError(f"bad number {val!r} in {text!r}") from None
    return out


def parse_point(text: str, *, degrees: bool = False) -> SurfacePoint:
    """Parse a point spec such as ``side:angle=0.5,z=1`` or ``apex``."""
    name, _, body = text.strip().partition(":")
    name = name.lower()
    if name not in _FIELDS:
        raise ParseError(f"unknown face {name!r} in {text!r}")
    kv = _parse_kv(body, _FIELDS[name], text)
    angle = kv.get("angle", 0.0)
    if degrees:
        angle = math.radians(angle)
    if _FIELDS[name] and "angle" not in kv:
        raise ParseError(f"{text!r} needs angle=")
    if name == "side":
        if ("z" in kv) == ("slant" in kv):
            raise ParseError(f"side point needs exactly one of z= or slant=: {text!r}")
        return SurfacePoint.side(angle, kv.get("z"), slant=kv.get("slant"))
    if name in ("lid", "base"):
        if "r" not in kv:
            raise ParseError(f"{text!r} needs r=")
        return SurfacePoint(Face(name), angle, kv["r"])
    if name in ("rim1", "rim"):
        return SurfacePoint.rim1(angle)
    if name == "rim2":
        return SurfacePoint.rim2(angle)
    return SurfacePoint(Face(name))


def parse_surface(text: str) -> Surface:
    """Parse ``can:h=<f>`` or ``cup:s=<f>``."""
    kind, _, body = text.strip().partition(":")
    kind = kind.lower()
    if kind == "can":
        kv = _parse_kv(body, {"h"}, text)
        if "h" not in kv:
            raise ParseError(f"can needs h=: {text!r}")
        return Surface.can(kv["h"])
    if kind == "cup":
        kv = _parse_kv(body, {"s"}, text)
        if "s" not in kv:
            raise ParseError(f"cup needs s=: {text!r}")
        return Surface.cup(kv["s"])
    raise ParseError(f"unknown surface {text!r}")


def format_point(p: SurfacePoint, surface: Surface) -> str:
    """Inverse of :func:`parse_point` for canonical points."""
    f = p.face
    if f.is_axial:
        return f.value
    if f is Face.SIDE:
        key = "z" if surface.is_can else "slant"
        return f"side:angle={p.angle!r},{key}={p.height_or_slant!r}"
    if f in (Face.LID, Face.BASE):
        return f"{f.value}:angle={p.angle!r},r={p.radial!r}"
    if f is Face.RIM1 and not surface.is_can:
        return f"rim:angle={p.angle!r}"
    return f"{f.value}:angle={p.angle!r}"
