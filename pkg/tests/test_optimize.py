import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cangeo.errors import EmptyBox
from cangeo.numerics import bisect, golden_section
from cangeo.optimize import minimize_1d, minimize_2d


def test_golden_section_quadratic():
    x, fx = golden_section(lambda x: (x - 0.3) ** 2 + 1, -1, 2)
    assert x == pytest.approx(0.3, abs=1e-7) and fx == pytest.approx(1.0)


def test_golden_section_returns_boundary_minimum_exactly():
    x, _ = golden_section(lambda x: x, 0.25, 1.0)
    assert x == 0.25


def test_bisect():
    assert bisect(lambda x: x * x - 2, 0, 2) == pytest.approx(math.sqrt(2), abs=1e-15)
    with pytest.raises(ValueError):
        bisect(lambda x: x * x + 1, -1, 1)


@given(st.floats(-3, 3), st.floats(0.1, 5))
def test_minimize_1d_finds_vertex(c, k):
    res = minimize_1d(lambda x: k * (x - c) ** 2, (-4, 4), grad=lambda x: 2 * k * (x - c))
    assert res.argmin == pytest.approx(c, abs=1e-9)


def test_minimize_1d_keeps_both_tied_minima():
    res = minimize_1d(lambda x: (x * x - 1) ** 2, (-2, 2))
    xs = sorted(m.x[0] for m in res.minima if m.value < 1e-12)
    assert xs == pytest.approx([-1, 1], abs=1e-6)


def test_minimize_1d_degenerate_box():
    res = minimize_1d(lambda x: x + 1, (0.5, 0.5))
    assert res.value == 1.5


def test_empty_box():
    with pytest.raises(EmptyBox):
        minimize_1d(lambda x: x, (1, 0))
    with pytest.raises(EmptyBox):
        minimize_2d(lambda x, y: x, [(0, 1), (0, math.nan)])


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-0.9, 0.9))
def test_minimize_2d_rotated_quadratic(cx, cy, rho):
    # a narrow valley along a diagonal is where plain coordinate descent stalls
    def f(x, y):
        dx, dy = x - cx, y - cy
        return dx * dx + dy * dy + 2 * rho * dx * dy

    def g(x, y):
        dx, dy = x - cx, y - cy
        return np.array([2 * dx + 2 * rho * dy, 2 * dy + 2 * rho * dx])

    res = minimize_2d(f, [(-2, 2), (-2, 2)], grid_n=64, grad=g)
    assert res.x == pytest.approx((cx, cy), abs=1e-7)


def test_minimize_2d_bound_minimum():
    res = minimize_2d(lambda x, y: x + (y - 0.5) ** 2, [(0, 1), (0, 1)], grid_n=32,
                      grad=lambda x, y: np.array([1.0, 2 * (y - 0.5)]))
    assert res.x == pytest.approx((0.0, 0.5), abs=1e-9)


def test_minimize_2d_two_wells():
    f = lambda x, y: ((x * x - 1) ** 2 + y * y)
    res = minimize_2d(f, [(-2, 2), (-1, 1)], grid_n=40)
    wells = sorted(round(m.x[0], 4) for m in res.minima if m.value < 1e-10)
    assert wells == [-1.0, 1.0]
