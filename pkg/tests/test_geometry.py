import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cangeo import Face, Surface, SurfacePoint, angle_gap, canonicalize, classify, embed3d
from cangeo.errors import InvalidPoint, OutOfRange, ParseError
from cangeo.geometry import format_point, mirror, parse_point, parse_surface

angles = st.floats(-20, 20, allow_nan=False)


def test_surface_constructors_validate():
    assert Surface.can(2.0).height == 2.0
    cup = Surface.cup(2.0)
    assert cup.height == pytest.approx(math.sqrt(3.0))
    # half-angle of the cone: sin(phi) = 1/s
    assert cup.cone_angle == pytest.approx(math.pi / 6)
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            Surface.can(bad)
    with pytest.raises(ValueError):
        Surface.cup(1.0)


def test_faces_per_kind():
    assert Face.BASE in Surface.can(1).faces()
    assert Face.APEX not in Surface.can(1).faces()
    assert Face.APEX in Surface.cup(2).faces()
    assert Surface.cup(2).rims == (Face.RIM1,)


def test_side_point_at_lid_height_becomes_rim1():
    s = Surface.can(1.5)
    p = canonicalize(SurfacePoint.side(0.3, 1.5), s)
    assert p.face is Face.RIM1 and p.height_or_slant == 1.5


def test_side_point_at_zero_is_rim2():
    assert classify(SurfacePoint.side(1.0, 0.0), Surface.can(1)) is Face.RIM2


def test_disk_boundary_snaps_to_rims():
    s = Surface.can(1)
    assert classify(SurfacePoint.lid(0.2, 1.0), s) is Face.RIM1
    assert classify(SurfacePoint.base(0.2, 1.0), s) is Face.RIM2
    assert classify(SurfacePoint.lid(0.2, 0.0), s) is Face.LIDCENTER
    assert classify(SurfacePoint.base(0.2, 0.0), s) is Face.BASECENTER


def test_cup_points():
    s = Surface.cup(3.0)
    p = canonicalize(SurfacePoint.side(1.0, slant=1.5), s)
    assert p.radial == pytest.approx(0.5)
    assert classify(SurfacePoint.side(0, slant=3.0), s) is Face.RIM1
    assert classify(SurfacePoint.lid(0, 1.0), s) is Face.RIM1
    with pytest.raises(InvalidPoint):
        canonicalize(SurfacePoint.rim2(0), s)
    with pytest.raises(InvalidPoint):
        canonicalize(SurfacePoint.apex(), Surface.can(1))


@pytest.mark.parametrize("pt", [SurfacePoint.side(0, 2.5), SurfacePoint.lid(0, 1.2),
                                SurfacePoint.base(0, -0.3), SurfacePoint.side(0, -0.01)])
def test_out_of_range(pt):
    with pytest.raises(OutOfRange):
        canonicalize(pt, Surface.can(2.0))


def test_cup_slant_out_of_range():
    with pytest.raises(OutOfRange):
        canonicalize(SurfacePoint.side(0, slant=4.0), Surface.cup(3.0))
    with pytest.raises(OutOfRange):
        canonicalize(SurfacePoint.side(0, slant=0.0), Surface.cup(3.0))


def test_angle_gap_mirror_flag():
    g = angle_gap(SurfacePoint.side(0.1, 1), SurfacePoint.side(0.1 + 4.0, 1))
    assert g.mirror_flag and g.theta == pytest.approx(2 * math.pi - 4.0)
    assert angle_gap(SurfacePoint.lid_center(), SurfacePoint.side(1, 1)).axial


def test_embed3d_cup_apex_and_rim():
    s = Surface.cup(2.0)
    np.testing.assert_allclose(embed3d(SurfacePoint.apex(), s), [0, 0, math.sqrt(3)])
    np.testing.assert_allclose(embed3d(SurfacePoint.rim(0.0), s), [1, 0, 0], atol=1e-15)


@given(angles, st.floats(0, 2))
def test_canonicalize_is_idempotent(a, z):
    s = Surface.can(2.0)
    p = canonicalize(SurfacePoint.side(a, z), s)
    assert canonicalize(p, s) == p
    assert 0 <= p.angle < 2 * math.pi


@given(angles, angles)
def test_angle_gap_symmetric_and_bounded(a, b):
    g1 = angle_gap(SurfacePoint.side(a, 1), SurfacePoint.side(b, 1))
    g2 = angle_gap(SurfacePoint.side(b, 1), SurfacePoint.side(a, 1))
    assert 0 <= g1.theta <= math.pi
    assert g1.theta == pytest.approx(g2.theta, abs=1e-12)


@given(angles, angles, st.floats(0.01, 0.99))
def test_mirror_is_an_involution(a, about, r):
    p = canonicalize(SurfacePoint.lid(a, r), Surface.can(1))
    q = mirror(mirror(p, about), about)
    assert math.cos(q.angle - p.angle) == pytest.approx(1.0)


@given(angles, st.floats(0.0, 1.0), st.floats(1.05, 8.0))
def test_embedded_cup_side_points_lie_on_cone(a, frac, s):
    surf = Surface.cup(s)
    sl = max(frac * s, 1e-9)
    x = embed3d(SurfacePoint.side(a, slant=sl), surf)
    # distance to the apex equals the slant; radius equals slant / s
    assert np.linalg.norm(x - [0, 0, surf.height]) == pytest.approx(sl)
    assert math.hypot(x[0], x[1]) == pytest.approx(sl / s)


@pytest.mark.parametrize("text,face", [
    ("side:angle=1,z=0.5", Face.SIDE), ("lid:angle=0,r=0.3", Face.LID),
    ("base:r=0.3,angle=2", Face.BASE), ("rim1:angle=1", Face.RIM1),
    ("rim:angle=1", Face.RIM1), ("rim2:angle=1", Face.RIM2), ("apex", Face.APEX),
    ("lidcenter", Face.LIDCENTER), ("basecenter", Face.BASECENTER)])
def test_parse_point(text, face):
    assert parse_point(text).face is face


@pytest.mark.parametrize("text", ["side:angle=1", "side:angle=1,z=1,slant=2", "lid:angle=1",
                                  "top:angle=1", "rim1:angle=x", "rim1:angle=1,angle=2",
                                  "rim1:r=1", "lid:r=0.5"])
def test_parse_point_rejects(text):
    with pytest.raises(ParseError):
        parse_point(text)


def test_parse_degrees():
    assert parse_point("rim1:angle=180", degrees=True).angle == pytest.approx(math.pi)


def test_parse_surface():
    assert parse_surface("can:h=2").h == 2.0
    assert parse_surface("cup:s=3").s == 3.0
    for bad in ("can:s=2", "cone:s=2", "cup", "can:h=abc"):
        with pytest.raises(ParseError):
            parse_surface(bad)


@given(st.sampled_from(["side", "lid", "base", "rim1", "rim2"]), st.floats(0, 6.28),
       st.floats(0.05, 0.95))
def test_format_parse_roundtrip(face, a, frac):
    s = Surface.can(2.0)
    text = {"side": f"side:angle={a!r},z={2 * frac!r}",
            "lid": f"lid:angle={a!r},r={frac!r}",
            "base": f"base:angle={a!r},r={frac!r}",
            "rim1": f"rim1:angle={a!r}", "rim2": f"rim2:angle={a!r}"}[face]
    p = canonicalize(parse_point(text), s)
    assert canonicalize(parse_point(format_point(p, s)), s) == p
