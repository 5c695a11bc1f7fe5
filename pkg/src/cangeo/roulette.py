"""Cycloids and epicycloids traced by a point carried by a rolling circle.

The roll parameter ``t`` is the angle the rolling circle has turned through
relative to the contact normal, so the arc consumed on either curve is
``rolling_radius * t``.  With the generator on the rolling circle
(``offset == rolling_radius``) the cusps sit at ``t = 2*pi*k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CuspParameter
from .numerics import golden_section

CUSP_EXCLUSION = 1e-6
RMAX_GRID = 4096


@dataclass(frozen=True)
class RouletteTrace:
    """Roulette of a circle rolling outside a fixed circle, or along a line.

    ``fixed_radius=None`` means the fixed curve is the x-axis.
    """

    fixed_radius: float | None = None
    rolling_radius: float = 1.0
    offset: float = 1.0

    @classmethod
    def cycloid(cls, offset: float = 1.0) -> "RouletteTrace":
        return cls(None, 1.0, offset)

    @classmethod
    def epicycloid(cls, R: float, offset: float = 1.0) -> "RouletteTrace":
        return cls(float(R), 1.0, offset)

    @property
    def on_line(self) -> bool:
        return self.fixed_radius is None

    @property
    def has_cusps(self) -> bool:
        return self.offset == self.rolling_radius

    def derivatives(self, t):
        """Position and first/second derivatives in ``t`` (vectorized)."""
        t = np.asarray(t, dtype=float)
        rho, d = self.rolling_radius, self.offset
        if self.on_line:
            st, ct = np.sin(t), np.cos(t)
            pos = np.stack([rho * t - d * st, rho - d * ct], axis=-1)
            d1 = np.stack([rho - d * ct, d * st], axis=-1)
            d2 = np.stack([d * st, d * ct], axis=-1)
            return pos, d1, d2
        R = self.fixed_radius
        k = rho / R
        phi = k * t
        psi = phi + t
        big = R + rho
        cp, sp, cq, sq = np.cos(phi), np.sin(phi), np.cos(psi), np.sin(psi)
        pos = np.stack([big * cp - d * cq, big * sp - d * sq], axis=-1)
        d1 = np.stack([-big * k * sp + d * (k + 1) * sq,
                       big * k * cp - d * (k + 1) * cq], axis=-1)
        d2 = np.stack([-big * k * k * cp + d * (k + 1) ** 2 * cq,
                       -big * k * k * sp + d * (k + 1) ** 2 * sq], axis=-1)
        return pos, d1, d2

    def contact_point(self, t):
        t = np.asarray(t, dtype=float)
        if self.on_line:
            return np.stack([self.rolling_radius * t, np.zeros_like(t)], axis=-1)
        phi = self.rolling_radius * t / self.fixed_radius
        return self.fixed_radius * np.stack([np.cos(phi), np.sin(phi)], axis=-1)

    def center(self, t):
        t = np.asarray(t, dtype=float)
        rho = self.rolling_radius
        if self.on_line:
            return np.stack([rho * t, np.full_like(t, rho)], axis=-1)
        phi = rho * t / self.fixed_radius
        return (self.fixed_radius + rho) * np.stack([np.cos(phi), np.sin(phi)], axis=-1)

    def cusp_distance(self, t) -> np.ndarray:
        """Parameter distance to the nearest cusp (inf when there are none)."""
        t = np.asarray(t, dtype=float)
        if not self.has_cusps:
            return np.full_like(t, np.inf)
        r = np.mod(t, 2 * math.pi)
        return np.minimum(r, 2 * math.pi - r)


def trace_point(r: RouletteTrace, t: float) -> np.ndarray:
    return r.derivatives(t)[0]


def curvature(r: RouletteTrace, t):
    """Signed curvature from the analytic derivatives."""
    _, d1, d2 = r.derivatives(t)
    cross = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    speed = np.hypot(d1[..., 0], d1[..., 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        # nan at a cusp, where the trace has no tangent
        return cross / speed ** 3


def radius_of_curvature(r: RouletteTrace, t):
    return 1.0 / np.abs(curvature(r, t))


def normal_line_defect(r: RouletteTrace, t: float) -> float:
    """Cosine of the angle between the tangent and the ray to the contact point.

    Zero means the normal line at ``trace_point(t)`` passes through the
    current point of tangency.
    """
    if r.cusp_distance(t) < CUSP_EXCLUSION:
        raise CuspParameter(f"t={t} is a cusp of the roulette")
    pos, d1, _ = r.derivatives(t)
    speed = math.hypot(*d1)
    if speed < 1e-12:
        raise CuspParameter(f"zero speed at t={t}")
    to_contact = r.contact_point(t) - pos
    dist = math.hypot(*to_contact)
    if dist == 0:
        raise CuspParameter(f"generator touches the fixed curve at t={t}")
    return float(d1 @ to_contact) / (speed * dist)


def max_radius_of_curvature(R: float, grid: int = RMAX_GRID, tol: float = 1e-13) -> float:
    """Largest radius of curvature on one arch of the rim-point epicycloid.

    A unit circle rolls outside a circle of radius ``R`` with the generator
    on its rim.  The arch is sampled on ``grid`` points (cusps excluded) and
    the best sample is refined by golden-section search.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    trace = RouletteTrace.epicycloid(R)
    lo, hi = CUSP_EXCLUSION, 2 * math.pi - CUSP_EXCLUSION
    ts = np.linspace(lo, hi, grid + 1)
    rad = radius_of_curvature(trace, ts)
    i = int(np.argmax(rad))
    a, b = ts[max(i - 1, 0)], ts[min(i + 1, grid)]
    t_star, neg = golden_section(lambda x: -float(radius_of_curvature(trace, x)), a, b, tol)
    return max(-neg, float(rad[i]))
