"""Input checks shared by the estimators and the CLI."""
from __future__ import annotations

from .geometry import Surface, SurfacePoint, parse_point, parse_surface


def check_surface(surface) -> Surface:
    """Accept a :class:`Surface` or a ``can:h=..``/``cup:s=..`` string."""
    if isinstance(surface, Surface):
        return surface
    if isinstance(surface, str):
        return parse_surface(surface)
    raise TypeError(f"expected a Surface or surface spec, got {type(surface).__name__}")


def check_point(point) -> SurfacePoint:
    if isinstance(point, SurfacePoint):
        return point
    if isinstance(point, str):
        return parse_point(point)
    raise TypeError(f"expected a SurfacePoint or point spec, got {type(point).__name__}")


def check_pairs(pairs) -> list[tuple[SurfacePoint, SurfacePoint]]:
    out = []
    for item in pairs:
        a, b = item
        out.append((check_point(a), check_point(b)))
    return out
