"""Derivative-free scalar primitives: golden-section search and bisection."""
from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], a: float, b: float,
                   tol: float = 1e-12, maxiter: int = 500) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior estimate so that a
    minimum on the boundary is returned exactly.
    """
    if b < a:
        a, b = b, a
    fa, fb = f(a), f(b)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    lo, hi = a, b
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    if fa < fx:
        x, fx = a, fa
    if fb < fx:
        x, fx = b, fb
    return x, fx


def bisect(f: Callable[[float], float], a: float, b: float,
           xtol: float = 0.0, maxiter: int = 200) -> float:
    """Root of ``f`` in ``[a, b]`` given a sign change; stops when the bracket
    stops shrinking in floating point, at ``xtol``, or after ``maxiter``."""
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise ValueError("bisect needs a sign change on [a, b]")
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        if m <= min(a, b) or m >= max(a, b) or abs(b - a) <= xtol:
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)
