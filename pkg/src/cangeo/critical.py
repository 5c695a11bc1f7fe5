"""Critical configurations where competing path families tie.

Three constructions are covered:

* diaxial side points on a soup can at depths ``c`` and ``d = h - c`` below
  the lid, which are joined by four minimal paths at one critical height;
* a diaxial pair on a conical cup joined by three minimal paths, where the
  partner distance ``b`` follows from the distance ``a`` of the first point;
* the rim-chord angle equation ``theta - sin(theta) = BP (1 - cos(theta))``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, NoPositiveRoot, NoSolution, PartnerOffSurface
from .numerics import bisect
from .roulette import max_radius_of_curvature

ROOT_SCAN = 1000
ROOT_FLOOR = 1e-6
ROOT_MAXITER = 200


class Description(str, enum.Enum):
    OppositeRims = "OppositeRims"
    SideDiaxial = "SideDiaxial"
    MidCircle = "MidCircle"
    CupThreePath = "CupThreePath"
    RimChordThreePath = "RimChordThreePath"


def critical_height_side_diaxial(c: float) -> float:
    """Can height at which diaxial side points at depths ``c`` and ``h - c``
    below the lid are joined by four minimal paths."""
    c = float(c)
    if not math.isfinite(c) or c < 0:
        raise NoSolution(f"depth c={c!r} must be a finite non-negative number")
    h = (math.pi ** 2 + 4.0 * c * c - 4.0) / (4.0 * c + 4.0)
    if h - c < 0:
        raise NoSolution(f"depth c={c!r} exceeds the critical height {h!r}")
    return h


def r_max(s: float) -> float:
    """Largest radius of curvature of the epicycloid traced by the lid rim."""
    return max_radius_of_curvature(s)


def three_path_threshold(s: float) -> float:
    """Smallest admissible ``a`` for the cup three-path construction."""
    return s - r_max(s) + 2.0


def cup_three_path_partner(s: float, a: float, *, check_hypothesis: bool = True) -> float:
    """Distance ``b`` from the cone point of the diaxial partner of a side
    point at distance ``a``, such that three minimal paths join them."""
    s, a = float(s), float(a)
    if not (s > 1 and math.isfinite(s)):
        raise ValueError(f"slant height must exceed 1, got {s!r}")
    if not (0 < a <= s):
        raise PartnerOffSurface(f"a={a!r} is not in (0, s]")
    # a tiny slack keeps the documented boundary itself admissible
    if check_hypothesis and a < three_path_threshold(s) - 1e-12:
        raise HypothesisViolated(
            f"a={a!r} is below s - r_max + 2 = {three_path_threshold(s)!r}")
    # 2s + 2 - a (1 + cos(pi/s)), arranged to avoid cancellation for large s
    one_minus_cos = 2.0 * math.sin(0.5 * math.pi / s) ** 2
    denom = 2.0 * (s - a) + 2.0 + a * one_minus_cos
    b = 2.0 * (s - a + 1.0) * (s + 1.0) / denom
    if not (0 < b <= s * (1 + 1e-15)):
        raise PartnerOffSurface(f"partner distance b={b!r} is not in (0, {s!r}]")
    return min(b, s)


def three_path_residual(s: float, a: float, b: float) -> float:
    """Defining equation of the partner: equal lid and side lengths."""
    return (2 * s - a - b + 2) ** 2 - (a * a - 2 * a * b * math.cos(math.pi / s) + b * b)


def rim_chord_equation(theta, bp: float):
    theta = np.asarray(theta, dtype=float)
    return theta - np.sin(theta) - bp * (1.0 - np.cos(theta))


@dataclass(frozen=True)
class RimChordRoot:
    theta: float
    h: float | None
    residual: float
    beyond_pi: bool


def solve_rim_chord_theta(bp: float) -> RimChordRoot:
    """Smallest non-trivial root of ``theta - sin theta = BP (1 - cos theta)``.

    ``theta = 0`` always solves the equation and is skipped.  Roots at or
    past ``pi`` are returned with ``beyond_pi`` set; ``h`` is only reported
    while ``sin theta > 0``.
    """
    bp = float(bp)
    if not (bp > 0 and math.isfinite(bp)):
        raise NoPositiveRoot(f"BP must be positive, got {bp!r}")
    xs = np.linspace(ROOT_FLOOR, 2 * math.pi, ROOT_SCAN + 1)[1:]
    xs = np.r_[ROOT_FLOOR, xs]
    fs = rim_chord_equation(xs, bp)
    f = lambda x: float(rim_chord_equation(x, bp))
    for i in range(len(xs) - 1):
        if fs[i] == 0 or fs[i] * fs[i + 1] < 0:
            theta = float(xs[i]) if fs[i] == 0 else \
                bisect(f, float(xs[i]), float(xs[i + 1]), maxiter=ROOT_MAXITER)
            break
    else:
        raise NoPositiveRoot(f"no root of the rim-chord equation in (0, 2 pi) for BP={bp!r}")
    sin_t = math.sin(theta)
    h = 2.0 * bp * sin_t if sin_t > 0 else None
    return RimChordRoot(float(theta), h, abs(f(theta)), bool(theta >= math.pi))


@dataclass(frozen=True)
class CriticalConfig:
    """A critical configuration together with its derived values."""

    description: Description
    params: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    @classmethod
    def opposite_rims(cls) -> "CriticalConfig":
        h = critical_height_side_diaxial(0.0)
        return cls(Description.OppositeRims, {"c": 0.0}, {"h": h, "d": h, "length": h + 2})

    @classmethod
    def mid_circle(cls) -> "CriticalConfig":
        h = math.pi - 2.0
        return cls(Description.MidCircle, {"c": h / 2}, {"h": h, "d": h / 2, "length": math.pi})

    @classmethod
    def side_diaxial(cls, c: float) -> "CriticalConfig":
        h = critical_height_side_diaxial(c)
        return cls(Description.SideDiaxial, {"c": float(c)},
                   {"h": h, "d": h - c, "length": h + 2})

    @classmethod
    def cup_three_path(cls, s: float, a: float) -> "CriticalConfig":
        b = cup_three_path_partner(s, a)
        return cls(Description.CupThreePath, {"s": float(s), "a": float(a)},
                   {"b": b, "length": 2 * s - a - b + 2})

    @classmethod
    def rim_chord(cls, bp: float) -> "CriticalConfig":
        root = solve_rim_chord_theta(bp)
        return cls(Description.RimChordThreePath, {"BP": float(bp)},
                   {"theta": root.theta, "h": root.h, "beyond_pi": root.beyond_pi})

    def residual(self) -> float:
        """How far the derived values are from satisfying their equation."""
        p, d = self.params, self.derived
        if self.description is Description.CupThreePath:
            return abs(three_path_residual(p["s"], p["a"], d["b"]))
        if self.description is Description.RimChordThreePath:
            return abs(float(rim_chord_equation(d["theta"], p["BP"])))
        # lengths over the lid and around the side agree
        c, h = p["c"], d["h"]
        return abs((h + 2) - math.hypot(math.pi, d["d"] - c))
