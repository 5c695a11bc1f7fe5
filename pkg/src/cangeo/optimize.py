"""Global minimization on small boxes: grid scan, then local refinement.

Every grid-local minimum is refined separately so that ties between
distinct minimizers of one functional are not lost.  Functionals must
accept numpy arrays (one per coordinate) and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyBox
from .numerics import bisect, golden_section

MAX_STARTS = 8
# parameter distance below which two refined minima are the same point
MERGE_FLOOR = 1e-9


@dataclass(frozen=True)
class LocalMin:
    x: tuple[float, ...]
    value: float


@dataclass
class Minimization:
    """Result of a box minimization; ``minima`` is sorted by value."""

    x: tuple[float, ...]
    value: float
    minima: list[LocalMin] = field(default_factory=list)

    @property
    def argmin(self):
        return self.x[0] if len(self.x) == 1 else self.x


def _check_box(box):
    for lo, hi in box:
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
            raise EmptyBox(f"empty or invalid box {box!r}")


def _merge(cands: list[LocalMin], sep: float) -> list[LocalMin]:
    cands = sorted(cands, key=lambda m: m.value)
    out: list[LocalMin] = []
    for m in cands:
        if all(max(abs(a - b) for a, b in zip(m.x, o.x)) > sep for o in out):
            out.append(m)
    return out


def _grid_minima_1d(vals: np.ndarray) -> np.ndarray:
    n = len(vals)
    if n == 1:
        return np.array([0])
    left = np.r_[np.inf, vals[:-1]]
    right = np.r_[vals[1:], np.inf]
    idx = np.flatnonzero((vals <= left) & (vals <= right))
    return idx[np.argsort(vals[idx], kind="stable")]


def _polish_1d(grad, x, lo, hi):
    """Drive the derivative to zero near an interior minimum."""
    if grad is None or x <= lo or x >= hi:
        return x
    delta = 1e-6 * max(1.0, hi - lo)
    a, b = max(lo, x - delta), min(hi, x + delta)
    ga, gb = grad(a), grad(b)
    if ga < 0 < gb:
        return bisect(grad, a, b)
    return x


def minimize_1d(f: Callable, box: Sequence[float], grid_n: int = 512,
                tol: float = 1e-12, grad: Callable | None = None,
                max_starts: int = MAX_STARTS) -> Minimization:
    """Minimize ``f`` on the interval ``box`` and collect its local minima."""
    lo, hi = float(box[0]), float(box[1])
    _check_box([(lo, hi)])
    if hi == lo:
        v = float(f(lo))
        return Minimization((lo,), v, [LocalMin((lo,), v)])
    xs = np.linspace(lo, hi, grid_n + 1)
    vals = np.asarray(f(xs), dtype=float)
    cands = []
    for i in _grid_minima_1d(vals)[:max_starts]:
        a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid_n)]
        x, _ = golden_section(lambda t: float(f(t)), a, b, tol)
        x = _polish_1d(grad, x, lo, hi)
        cands.append(LocalMin((float(x),), float(f(x))))
    minima = _merge(cands, max(10 * tol, MERGE_FLOOR))
    best = minima[0]
    return Minimization(best.x, best.value, minima)


def _grid_minima_2d(vals: np.ndarray) -> list[tuple[int, int]]:
    padded = np.pad(vals, 1, constant_values=np.inf)
    core = padded[1:-1, 1:-1]
    mask = np.ones_like(core, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == dj == 0:
                continue
            nb = padded[1 + di:padded.shape[0] - 1 + di, 1 + dj:padded.shape[1] - 1 + dj]
            mask &= core <= nb
    ii, jj = np.nonzero(mask)
    order = np.argsort(vals[ii, jj], kind="stable")
    return [(int(ii[k]), int(jj[k])) for k in order]


_DIRECTIONS = [np.array(d, dtype=float) / math.hypot(*d)
               for d in ((1, 0), (0, 1), (1, 1), (1, -1))]


def _line_limits(x, d, box):
    """Feasible step range ``[smin, smax]`` for ``x + s d`` inside ``box``."""
    smin, smax = -math.inf, math.inf
    for xi, di, (lo, hi) in zip(x, d, box):
        if di > 0:
            smin, smax = max(smin, (lo - xi) / di), min(smax, (hi - xi) / di)
        elif di < 0:
            smin, smax = max(smin, (hi - xi) / di), min(smax, (lo - xi) / di)
    return max(smin, -1e300), min(smax, 1e300)


def _clip(x, box):
    return np.array([min(max(v, lo), hi) for v, (lo, hi) in zip(x, box)])


def _pattern_search(f2, x0, box, step, tol, max_sweeps=400):
    """Golden-section line searches along the axes and both diagonals."""
    x = np.array(x0, dtype=float)
    fx = f2(x)
    reach = step
    for _ in range(max_sweeps):
        moved = 0.0
        for d in _DIRECTIONS:
            smin, smax = _line_limits(x, d, box)
            a, b = max(smin, -reach), min(smax, reach)
            if b - a <= 0:
                continue
            s, fs = golden_section(lambda s: f2(_clip(x + s * d, box)), a, b, tol)
            if fs < fx:
                x, fx = _clip(x + s * d, box), fs
                moved = max(moved, abs(s))
        if moved < tol:
            break
        reach = max(4.0 * moved, 10 * tol)
    return x, fx


def _newton_polish(f2, g2, x, box, iters=20, h=1e-7):
    """Newton steps on the gradient over coordinates not held by a bound."""
    if g2 is None:
        return x
    fx = f2(x)
    for _ in range(iters):
        g = np.asarray(g2(x), dtype=float)
        free = []
        for i, (lo, hi) in enumerate(box):
            # the gradient may be one-sided at a bound (a kink), so also
            # check directly whether stepping inward helps
            e = np.zeros_like(x)
            e[i] = h
            at_lo = x[i] <= lo + 1e-13 and (g[i] >= 0 or f2(_clip(x + e, box)) >= fx)
            at_hi = x[i] >= hi - 1e-13 and (g[i] <= 0 or f2(_clip(x - e, box)) >= fx)
            if not (at_lo or at_hi):
                free.append(i)
        if not free:
            break
        H = np.zeros((len(free), len(free)))
        for c, i in enumerate(free):
            e = np.zeros_like(x)
            e[i] = h
            gp = np.asarray(g2(_clip(x + e, box)), dtype=float)
            gm = np.asarray(g2(_clip(x - e, box)), dtype=float)
            span = _clip(x + e, box)[i] - _clip(x - e, box)[i]
            if span <= 0:
                break
            H[:, c] = (gp[free] - gm[free]) / span
        else:
            H = 0.5 * (H + H.T)
            try:
                step = -np.linalg.solve(H, g[free])
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(step)):
                break
            trial = x.copy()
            trial[free] += step
            trial = _clip(trial, box)
            ft = f2(trial)
            gt = np.asarray(g2(trial), dtype=float)
            if ft <= fx + 4e-16 * max(1.0, abs(fx)) and \
                    np.linalg.norm(gt[free]) < np.linalg.norm(g[free]):
                done = np.max(np.abs(trial - x)) < 1e-16
                x, fx = trial, ft
                if done:
                    break
                continue
        break
    return x


def minimize_2d(f: Callable, box: Sequence[Sequence[float]], grid_n: int = 512,
                tol: float = 1e-12, grad: Callable | None = None,
                max_starts: int = MAX_STARTS) -> Minimization:
    """Minimize ``f(t, u)`` on a rectangle and collect its local minima."""
    box = [(float(lo), float(hi)) for lo, hi in box]
    _check_box(box)
    (l1, h1), (l2, h2) = box
    n1 = grid_n if h1 > l1 else 0
    n2 = grid_n if h2 > l2 else 0
    ts = np.linspace(l1, h1, n1 + 1)
    us = np.linspace(l2, h2, n2 + 1)
    T, U = np.meshgrid(ts, us, indexing="ij")
    vals = np.asarray(f(T, U), dtype=float)

    def f2(x):
        return float(f(x[0], x[1]))

    g2 = None if grad is None else (lambda x: grad(x[0], x[1]))
    step = max((h1 - l1) / max(n1, 1), (h2 - l2) / max(n2, 1))
    cands = []
    for i, j in _grid_minima_2d(vals)[:max_starts]:
        x, _ = _pattern_search(f2, (ts[i], us[j]), box, 2.0 * step, tol)
        x = _newton_polish(f2, g2, x, box)
        cands.append(LocalMin((float(x[0]), float(x[1])), f2(x)))
    minima = _merge(cands, max(10 * tol, MERGE_FLOOR))
    best = minima[0]
    return Minimization(best.x, best.value, minima)
