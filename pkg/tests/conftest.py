import math
import os
from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cangeo import Face, Surface, SurfacePoint, canonicalize, embed3d, solve

settings.register_profile(
    "cangeo", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("cangeo")

SEED = int(os.environ.get("CANGEO_SEED", "20261018"))
SUITE_SIZE = 500

CAN_FACES = ["side", "lid", "base", "rim1", "rim2", "lidcenter", "basecenter"]
CUP_FACES = ["side", "lid", "rim1", "apex", "lidcenter"]
# axial points are rare in the suite, the rest is spread evenly
CAN_WEIGHTS = np.array([4, 3, 3, 2, 2, 0.3, 0.3])
CUP_WEIGHTS = np.array([5, 3, 2, 0.3, 0.3])


def random_surface(rng, kind):
    if kind == "can":
        return Surface.can(float(rng.uniform(0.2, 3.0)))
    return Surface.cup(float(rng.uniform(1.1, 6.0)))


def random_point(rng, surface, face=None, angle=None):
    names, w = (CAN_FACES, CAN_WEIGHTS) if surface.is_can else (CUP_FACES, CUP_WEIGHTS)
    if face is None:
        face = str(rng.choice(names, p=w / w.sum()))
    a = float(rng.uniform(0, 2 * math.pi)) if angle is None else angle % (2 * math.pi)
    if face == "side":
        if surface.is_can:
            return SurfacePoint.side(a, float(rng.uniform(0, surface.h)))
        return SurfacePoint.side(a, slant=float(rng.uniform(0.02, surface.s)))
    if face in ("lid", "base"):
        return SurfacePoint(Face(face), a, float(rng.uniform(0.02, 1.0)))
    if face in ("rim1", "rim2"):
        return SurfacePoint(Face(face), a, 1.0)
    return SurfacePoint(Face(face))


def random_pair(rng, surface):
    """Two distinct points; some pairs are diaxial or share a half-plane."""
    while True:
        A = random_point(rng, surface)
        u = rng.uniform()
        if u < 0.08 and not A.is_axial:
            B = random_point(rng, surface, angle=A.angle + math.pi)
        elif u < 0.12 and not A.is_axial:
            B = random_point(rng, surface, angle=A.angle)
        else:
            B = random_point(rng, surface)
        ea = embed3d(canonicalize(A, surface), surface)
        eb = embed3d(canonicalize(B, surface), surface)
        if np.linalg.norm(ea - eb) < 1e-9:
            continue
        return A, B


@dataclass
class Case:
    surface: Surface
    A: SurfacePoint
    B: SurfacePoint
    report: object


@pytest.fixture(scope="session")
def random_suite():
    """500 solved random cases, shared by every suite-wide property."""
    rng = np.random.default_rng(SEED)
    cases = []
    for k in range(SUITE_SIZE):
        surface = random_surface(rng, "can" if k % 2 == 0 else "cup")
        A, B = random_pair(rng, surface)
        cases.append(Case(surface, A, B, solve(surface, A, B)))
    return cases


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
