import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cangeo import (Face, GeodesicPath, Segment, Surface, SurfacePoint, path_to_polyline, solve,
                    straightness_defect, unroll)
from cangeo.errors import SingleSegment
from cangeo.flatmodel import flat_model_svg, is_geodesic, path_flat_model, paths_svg

CAN = Surface.can(1.5)
CUP = Surface.cup(2.5)


def test_segment_length_on_can_side():
    seg = Segment(Face.SIDE, (0.0, 0.0), (3.0, 4.0))
    assert seg.length(CAN) == pytest.approx(5.0)


def test_segment_length_on_cup_side_is_sector_chord():
    # two rim points a quarter turn apart: sector angle (pi/2)/s
    seg = Segment(Face.SIDE, (0.0, 2.5), (math.pi / 2, 2.5))
    assert seg.length(CUP) == pytest.approx(2 * 2.5 * math.sin(math.pi / 4 / 2.5))


def test_unroll_accepts_sequence_and_dict():
    a = unroll(CAN, [0.3, 1.0])
    b = unroll(CAN, {"rim1": 0.3, "rim2": 1.0})
    assert a.tangency == b.tangency
    assert unroll(CAN).tangency == {Face.RIM1: 0.0, Face.RIM2: 0.0}


@pytest.mark.parametrize("surface", [CAN, CUP])
@given(psi=st.floats(-7, 7))
def test_disk_touches_side_at_tangency(surface, psi):
    model = unroll(surface, [psi, psi])
    top = surface.h if surface.is_can else surface.s
    np.testing.assert_allclose(model.disk_point(Face.LID, psi, 1.0),
                               model.side_point(psi, top), atol=1e-12)
    if surface.is_can:
        np.testing.assert_allclose(model.disk_point(Face.BASE, psi, 1.0),
                                   model.side_point(psi, 0.0), atol=1e-12)


@pytest.mark.parametrize("surface", [CAN, CUP])
@given(psi=st.floats(-4, 4), a1=st.floats(0, 6.3), a2=st.floats(0, 6.3),
       r1=st.floats(0, 1), r2=st.floats(0, 1))
def test_disk_placement_is_an_isometry(surface, psi, a1, a2, r1, r2):
    model = unroll(surface, [psi, psi])
    flat = np.linalg.norm(model.disk_point(Face.LID, a1, r1) - model.disk_point(Face.LID, a2, r2))
    chart = math.hypot(r1 * math.cos(a1) - r2 * math.cos(a2), r1 * math.sin(a1) - r2 * math.sin(a2))
    assert flat == pytest.approx(chart, abs=1e-12)


def test_disk_is_outside_side_and_tangent():
    model = unroll(CUP, [0.7])
    c = model.disk_center(Face.RIM1)
    assert np.linalg.norm(c) == pytest.approx(CUP.s + 1)


@given(st.floats(0, 6), st.floats(0, 1.5), st.floats(0, 6), st.floats(0, 1.5))
def test_polyline_length_matches_chart_length(a1, z1, a2, z2):
    seg = Segment(Face.SIDE, (a1, z1), (a2, z2))
    if seg.length(CAN) < 1e-6:
        return
    path = GeodesicPath.build(CAN, [seg])
    poly = path_to_polyline(path, CAN, samples_per_unit=400)
    # points lie on the cylinder and the 3-D length approaches the intrinsic one from below
    assert np.allclose(np.hypot(poly[:, 0], poly[:, 1]), 1.0)
    l3 = np.linalg.norm(np.diff(poly, axis=0), axis=1).sum()
    assert l3 <= path.total_length + 1e-12
    assert l3 == pytest.approx(path.total_length, rel=1e-5)


def test_straight_path_over_lid_has_zero_defect():
    # down the side at angle 0, across a lid diameter, down the side at pi
    h = CAN.h
    path = GeodesicPath.build(CAN, [
        Segment(Face.SIDE, (0.0, 0.5), (0.0, h)),
        Segment(Face.LID, (0.0, 1.0), (math.pi, 1.0)),
        Segment(Face.SIDE, (math.pi, h), (math.pi, 0.5))])
    assert straightness_defect(path) < 1e-14
    assert is_geodesic(path)


def test_bent_path_has_positive_defect():
    path = GeodesicPath.build(CAN, [
        Segment(Face.SIDE, (0.0, 0.0), (0.5, 0.7)),
        Segment(Face.SIDE, (0.5, 0.7), (0.6, 1.5))])
    assert straightness_defect(path) > 1e-3
    assert not is_geodesic(path)


def test_path_refracted_at_rim_is_not_straight():
    h = CAN.h
    path = GeodesicPath.build(CAN, [
        Segment(Face.SIDE, (0.0, 0.5), (0.0, h)),
        Segment(Face.LID, (0.0, 1.0), (2.0, 1.0))])
    assert straightness_defect(path) > 1e-3


def test_defect_of_single_segment_raises():
    path = GeodesicPath.build(CAN, [Segment(Face.SIDE, (0, 0), (1, 1))])
    with pytest.raises(SingleSegment):
        straightness_defect(path)


def test_zero_length_segments_are_dropped():
    path = GeodesicPath.build(CAN, [Segment(Face.SIDE, (0, 0), (0, 0)),
                                    Segment(Face.SIDE, (0, 0), (1, 1))])
    assert len(path.segments) == 1


def test_svg_structure():
    model = unroll(CAN, [0.0, 0.0])
    svg = flat_model_svg(model)
    root = ET.fromstring(svg)
    ns = {"s": "http://www.w3.org/2000/svg"}
    faces = {g.get("data-face") for g in root.iter("{http://www.w3.org/2000/svg}g")
             if g.get("data-face")}
    assert faces == {"side", "lid", "base"}
    circles = root.findall(".//s:circle", ns)
    assert all(c.get("r") == "1" for c in circles)


def test_paths_svg_draws_every_path():
    r = solve(Surface.cup(2), SurfacePoint.side(0, slant=1.5), SurfacePoint.rim(math.pi))
    root = ET.fromstring(paths_svg(r.paths))
    groups = [g for g in root.iter("{http://www.w3.org/2000/svg}g") if g.get("class") == "path"]
    assert len(groups) == 3
    assert all(float(g.get("data-length")) == pytest.approx(2.5) for g in groups)


def test_path_flat_model_straightens_path():
    r = solve(CAN, SurfacePoint.side(0, 0.4), SurfacePoint.lid(2.5, 0.6))
    path = r.paths[0]
    model = path_flat_model(path)
    pts = [model.place(seg.face, *seg.start) for seg in path.segments]
    pts.append(model.place(path.segments[-1].face, *path.segments[-1].end))
    pts = np.array(pts)
    chord = np.linalg.norm(pts[-1] - pts[0])
    assert chord == pytest.approx(path.total_length, abs=1e-9)
