"""Independent shortest-path oracle on a discretized surface.

Within one face the shortest path between two of its points is a straight
segment of the face chart, so a path on the whole surface only has to be
discretized where it changes face.  The graph therefore has one vertex per
rim sample (plus the apex, and the two query endpoints injected exactly),
and every pair of vertices sharing a face is joined by an edge weighted with
their intrinsic chart distance.  Each edge is a genuine path on the surface,
so graph distances never undercut the true distance.  Rim samples of
resolution ``n`` are nested in those of ``2n``, so refinement can only
shorten the graph distance.

Nothing here uses the candidate families or their minimization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, dijkstra
from sklearn.base import BaseEstimator

from .errors import Disconnected
from .geometry import Face, Surface, SurfacePoint, canonicalize, embed3d
from .validation import check_point, check_surface

# csgraph drops explicit zeros; coincident vertices get this weight instead
_TINY = 1e-300


@dataclass
class SurfaceMesh:
    """Rim-sampled visibility graph of a surface.

    ``faces`` lists, for every vertex, the faces it belongs to.  Rim vertices
    belong to the side and to their disk, so they are shared between faces.
    """

    surface: Surface
    resolution: int
    angles: np.ndarray          # per vertex (0 for the apex)
    coords: np.ndarray          # z / slant for side use, radius for disk use
    faces: list[frozenset]
    vertices: np.ndarray        # 3-D positions
    edges: tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges[0])

    def rim_vertices(self, rim: Face) -> np.ndarray:
        disk = Face.LID if rim is Face.RIM1 else Face.BASE
        return np.array([i for i, f in enumerate(self.faces) if {Face.SIDE, disk} <= f],
                        dtype=int)

    def to_obj(self) -> str:
        lines = [f"# cangeo oracle mesh {self.surface.spec()} resolution={self.resolution}"]
        lines += [f"v {x!r} {y!r} {z!r}" for x, y, z in self.vertices]
        i, j, _ = self.edges
        lines += [f"l {a + 1} {b + 1}" for a, b in zip(i, j)]
        return "\n".join(lines) + "\n"


def _side_distance(surface: Surface, a1, c1, a2, c2):
    d = np.abs(np.mod(np.asarray(a1) - np.asarray(a2) + math.pi, 2 * math.pi) - math.pi)
    if surface.is_can:
        return np.hypot(d, np.asarray(c1) - np.asarray(c2))
    s = surface.s
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    return np.sqrt((c1 - c2) ** 2 + 4.0 * c1 * c2 * np.sin(0.5 * d / s) ** 2)


def _disk_distance(a1, r1, a2, r2):
    x1, y1 = r1 * np.cos(a1), r1 * np.sin(a1)
    x2, y2 = r2 * np.cos(a2), r2 * np.sin(a2)
    return np.hypot(x1 - x2, y1 - y2)


def _face_coord(surface: Surface, face: Face, p: SurfacePoint) -> float:
    """Coordinate of a canonical point in the chart of ``face``."""
    if face is Face.SIDE:
        return 0.0 if p.face is Face.APEX else p.height_or_slant
    return p.radial


def _memberships(surface: Surface, p: SurfacePoint) -> frozenset:
    f = p.face
    if f in (Face.SIDE, Face.APEX):
        return frozenset({Face.SIDE})
    if f in (Face.LID, Face.LIDCENTER):
        return frozenset({Face.LID})
    if f in (Face.BASE, Face.BASECENTER):
        return frozenset({Face.BASE})
    if f is Face.RIM1:
        return frozenset({Face.SIDE, Face.LID})
    return frozenset({Face.SIDE, Face.BASE})


def _min_edges(rows, cols, wts):
    """Keep the lightest of parallel edges (sparse assembly would add them)."""
    i = np.concatenate(rows)
    j = np.concatenate(cols)
    w = np.concatenate(wts)
    lo, hi = np.minimum(i, j), np.maximum(i, j)
    order = np.lexsort((w, hi, lo))
    lo, hi, w = lo[order], hi[order], w[order]
    first = np.r_[True, (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])]
    return lo[first], hi[first], w[first]


def _pair_weights(surface, face, ang_i, crd_i, ang_j, crd_j):
    if face is Face.SIDE:
        return _side_distance(surface, ang_i, crd_i, ang_j, crd_j)
    return _disk_distance(ang_i, crd_i, ang_j, crd_j)


def build_mesh(surface: Surface, resolution: int = 512) -> SurfaceMesh:
    """Graph with ``resolution`` samples per rim at angles ``2 pi k / resolution``."""
    surface = check_surface(surface)
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    n = int(resolution)
    ring = 2 * math.pi * np.arange(n) / n
    angles, side_c, disk_c, faces = [], [], [], []
    for rim in surface.rims:
        top = rim is Face.RIM1
        side_level = (surface.h if top else 0.0) if surface.is_can else surface.s
        disk = Face.LID if top else Face.BASE
        angles.append(ring)
        side_c.append(np.full(n, side_level))
        disk_c.append(np.ones(n))
        faces += [frozenset({Face.SIDE, disk})] * n
    if not surface.is_can:
        angles.append(np.zeros(1))
        side_c.append(np.zeros(1))
        disk_c.append(np.zeros(1))
        faces.append(frozenset({Face.SIDE}))
    angles = np.concatenate(angles)
    side_c = np.concatenate(side_c)
    disk_c = np.concatenate(disk_c)

    rows, cols, wts = [], [], []
    for face in (Face.SIDE, Face.LID, Face.BASE):
        idx = np.array([i for i, f in enumerate(faces) if face in f])
        if len(idx) < 2:
            continue
        crd = side_c if face is Face.SIDE else disk_c
        I, J = np.triu_indices(len(idx), k=1)
        w = _pair_weights(surface, face, angles[idx[I]], crd[idx[I]],
                          angles[idx[J]], crd[idx[J]])
        rows.append(idx[I])
        cols.append(idx[J])
        wts.append(np.maximum(w, _TINY))
    edges = _min_edges(rows, cols, wts)

    verts = []
    for a, f, sc in zip(angles, faces, side_c):
        if not surface.is_can and Face.LID not in f:
            verts.append(embed3d(SurfacePoint.apex(), surface))
        elif surface.is_can:
            verts.append(np.array([math.cos(a), math.sin(a), sc]))
        else:
            verts.append(np.array([math.cos(a), math.sin(a), 0.0]))
    return SurfaceMesh(surface, n, angles, side_c, faces, np.array(verts), edges)


def _endpoint_edges(mesh: SurfaceMesh, p: SurfacePoint, index: int):
    surface = mesh.surface
    mem = _memberships(surface, p)
    rows, cols, wts = [], [], []
    for face in mem:
        idx = np.array([i for i, f in enumerate(mesh.faces) if face in f])
        if face is Face.SIDE:
            crd = mesh.coords[idx]
        else:
            crd = np.ones(len(idx))
        w = _pair_weights(surface, face, p.angle, _face_coord(surface, face, p),
                          mesh.angles[idx], crd)
        rows.append(np.full(len(idx), index))
        cols.append(idx)
        wts.append(np.maximum(w, _TINY))
    return rows, cols, wts, mem


def mesh_distance(mesh: SurfaceMesh, A: SurfacePoint, B: SurfacePoint) -> float:
    """Graph distance between two points injected as extra vertices."""
    surface = mesh.surface
    A = canonicalize(check_point(A), surface)
    B = canonicalize(check_point(B), surface)
    nv = mesh.n_vertices
    ia, ib = nv, nv + 1
    r0, c0, w0 = mesh.edges
    rows, cols, wts = [r0], [c0], [w0]
    ra, ca, wa, ma = _endpoint_edges(mesh, A, ia)
    rb, cb, wb, mb = _endpoint_edges(mesh, B, ib)
    rows += ra + rb
    cols += ca + cb
    wts += wa + wb
    for face in ma & mb:
        w = _pair_weights(surface, face, A.angle, _face_coord(surface, face, A),
                          B.angle, _face_coord(surface, face, B))
        rows.append(np.array([ia]))
        cols.append(np.array([ib]))
        wts.append(np.array([max(float(w), _TINY)]))
    i, j, w = _min_edges(rows, cols, wts)
    graph = coo_matrix((w, (i, j)), shape=(nv + 2, nv + 2)).tocsr()
    dist = dijkstra(graph, directed=False, indices=ia)
    d = float(dist[ib])
    if not math.isfinite(d):
        raise Disconnected("oracle graph does not connect the endpoints")
    return d


def is_connected(mesh: SurfaceMesh) -> bool:
    i, j, w = mesh.edges
    g = coo_matrix((w, (i, j)), shape=(mesh.n_vertices,) * 2)
    n, _ = connected_components(g, directed=False)
    return n == 1


class MeshOracle(BaseEstimator):
    """Estimator wrapper: ``fit`` builds the graph, ``predict`` returns distances."""

    def __init__(self, resolution: int = 512):
        self.resolution = resolution

    def fit(self, surface, y=None):
        self.mesh_ = build_mesh(check_surface(surface), self.resolution)
        return self

    def predict(self, pairs) -> np.ndarray:
        if not hasattr(self, "mesh_"):
            from sklearn.exceptions import NotFittedError
            raise NotFittedError("call fit(surface) first")
        return np.array([mesh_distance(self.mesh_, a, b) for a, b in pairs])
