import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cangeo.errors import CuspParameter
from cangeo.roulette import (RouletteTrace, curvature, max_radius_of_curvature,
                             normal_line_defect, radius_of_curvature, trace_point)

# r_max of the rim-point epicycloid, frozen from a symbolic computation
# (sympy: radius of curvature at the arch midpoint simplifies to 4(R+1)/(R+2),
# and a 4000-point mpmath scan confirms it is the maximum)
R_MAX = {1.5: 20 / 7, 2.0: 3.0, 5.0: 24 / 7, 20.0: 42 / 11}


def test_cycloid_closed_form():
    c = RouletteTrace.cycloid()
    for t in (0.0, 0.7, math.pi, 5.0):
        np.testing.assert_allclose(trace_point(c, t), [t - math.sin(t), 1 - math.cos(t)],
                                   atol=1e-15)


def test_cycloid_radius_of_curvature_is_4_sin_half_t():
    c = RouletteTrace.cycloid()
    t = np.linspace(0.1, 6.1, 50)
    np.testing.assert_allclose(radius_of_curvature(c, t), 4 * np.abs(np.sin(t / 2)), rtol=1e-12)


def test_epicycloid_cusps_touch_fixed_circle():
    R = 3.0
    e = RouletteTrace.epicycloid(R)
    for k in range(4):
        assert np.linalg.norm(trace_point(e, 2 * math.pi * k)) == pytest.approx(R)
    # opposite the cusp the generator is a full diameter away from the circle
    assert np.linalg.norm(trace_point(e, math.pi)) == pytest.approx(R + 2)


@given(st.floats(1.05, 30), st.floats(0.1, 12))
def test_derivatives_match_finite_differences(R, t):
    e = RouletteTrace.epicycloid(R)
    _, d1, d2 = e.derivatives(t)
    h = 1e-5
    p_plus, p_minus = trace_point(e, t + h), trace_point(e, t - h)
    np.testing.assert_allclose(d1, (p_plus - p_minus) / (2 * h), atol=1e-8)
    p0 = trace_point(e, t)
    np.testing.assert_allclose(d2, (p_plus - 2 * p0 + p_minus) / h ** 2, atol=1e-4)


@given(st.one_of(st.none(), st.floats(1.05, 50)), st.floats(0, 40))
def test_normal_line_passes_through_contact(R, t):
    trace = RouletteTrace.cycloid() if R is None else RouletteTrace.epicycloid(R)
    assume(trace.cusp_distance(t) > 1e-3)
    assert abs(normal_line_defect(trace, t)) < 1e-10


@pytest.mark.parametrize("t", [0.0, 2 * math.pi, 4 * math.pi + 1e-8])
def test_cusp_parameters_rejected(t):
    with pytest.raises(CuspParameter):
        normal_line_defect(RouletteTrace.epicycloid(2.0), t)


@pytest.mark.parametrize("R,expected", sorted(R_MAX.items()))
def test_r_max_frozen(R, expected):
    assert max_radius_of_curvature(R) == pytest.approx(expected, abs=1e-10)


def test_r_max_tends_to_cycloid_value():
    # a rim point of a unit circle rolling on a line has r_max = 4
    assert max_radius_of_curvature(1e6) == pytest.approx(4.0, abs=1e-5)
    assert np.max(radius_of_curvature(RouletteTrace.cycloid(), np.linspace(0.1, 6.2, 999))) \
        == pytest.approx(4.0, abs=1e-5)


def test_curvature_is_positive_on_arch():
    t = np.linspace(0.1, 2 * math.pi - 0.1, 100)
    assert np.all(curvature(RouletteTrace.epicycloid(2.0), t) != 0)


def test_invalid_radius():
    with pytest.raises(ValueError):
        max_radius_of_curvature(0.0)
