"""Centres of mass for the h-skeleton mass models, and closed-form spiral centroid heights."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from monostatic.errors import DegenerateError
from monostatic.geometry import Polygon2D, Polyhedron
from monostatic.spiral import SpiralParams, apex_lift, profile


class MassModel(str, enum.Enum):
    VERTEX = "vertex"  # unit point masses at the vertices (0-skeleton)
    EDGE = "edge"  # mass proportional to edge length (1-skeleton)
    FACE = "face"  # mass proportional to face area (2-skeleton)
    SOLID = "solid"  # homogeneous volume

    @classmethod
    def parse(cls, value) -> "MassModel":
        if isinstance(value, cls):
            return value
        aliases = {"0": "vertex", "1": "edge", "2": "face", "3": "solid", "volume": "solid"}
        key = str(value).lower().split("-")[0]
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class Centroid:
    point: np.ndarray
    mass: float
    model: MassModel = MassModel.VERTEX

    @property
    def z(self) -> float:
        """Height coordinate; the second coordinate for planar bodies in the (x, z) plane."""
        return float(self.point[-1])


def _weighted_mean(points, weights, what):
    weights = np.asarray(weights, dtype=float)
    total = float(weights.sum())
    if not total > 0:
        raise DegenerateError(f"{what} has zero total measure")
    return (np.asarray(points) * weights[:, None]).sum(axis=0) / total, total


def _fan_triangles(vertices, face):
    a = vertices[face[0]]
    for b, c in zip(face[1:-1], face[2:]):
        yield a, vertices[b], vertices[c]


def centroid(body, model=MassModel.VERTEX) -> Centroid:
    model = MassModel.parse(model)
    if isinstance(body, Polygon2D):
        return _centroid_2d(body, model)
    if not isinstance(body, Polyhedron):
        raise TypeError(f"expected Polyhedron or Polygon2D, got {type(body).__name__}")
    verts = body.vertices
    if model is MassModel.VERTEX:
        if len(verts) == 0:
            raise DegenerateError("no vertices")
        return Centroid(verts.mean(axis=0), float(len(verts)), model)
    if model is MassModel.EDGE:
        edges = np.array(body.edges)
        a, b = verts[edges[:, 0]], verts[edges[:, 1]]
        point, total = _weighted_mean(0.5 * (a + b), np.linalg.norm(b - a, axis=1), "edge skeleton")
        return Centroid(point, total, model)
    if model is MassModel.FACE:
        centers, areas = [], []
        for face in body.faces:
            for a, b, c in _fan_triangles(verts, face):
                centers.append((a + b + c) / 3.0)
                areas.append(0.5 * np.linalg.norm(np.cross(b - a, c - a)))
        point, total = _weighted_mean(np.array(centers), areas, "face skeleton")
        return Centroid(point, total, model)
    # signed tetrahedra against the coordinate origin
    vol = 0.0
    moment = np.zeros(3)
    for face in body.faces:
        for a, b, c in _fan_triangles(verts, face):
            v = np.dot(a, np.cross(b, c)) / 6.0
            vol += v
            moment += v * (a + b + c) / 4.0
    if not vol > 0:
        raise DegenerateError(f"solid has non-positive volume {vol}")
    return Centroid(moment / vol, vol, model)


def _centroid_2d(poly: Polygon2D, model: MassModel) -> Centroid:
    verts = poly.vertices
    if model is MassModel.VERTEX:
        return Centroid(verts.mean(axis=0), float(len(verts)), model)
    nxt = np.roll(verts, -1, axis=0)
    if model is MassModel.EDGE:
        point, total = _weighted_mean(0.5 * (verts + nxt), np.linalg.norm(nxt - verts, axis=1), "polygon boundary")
        return Centroid(point, total, model)
    # face and solid both mean the homogeneous disc in the plane
    cross = verts[:, 0] * nxt[:, 1] - nxt[:, 0] * verts[:, 1]
    area = 0.5 * cross.sum()
    if not area > 0:
        raise DegenerateError(f"polygon has non-positive area {area}")
    point = ((verts + nxt) * cross[:, None]).sum(axis=0) / (6.0 * area)
    return Centroid(point, float(area), model)


def spiral_sum(params: SpiralParams) -> float:
    """``S_n``: sum of the step heights ``z_1..z_n``."""
    return float(profile(params).z.sum())


def zc_uncorrected(params: SpiralParams) -> float:
    """Centroid height of the 0-skeleton with the top point left at height 1."""
    n, k = params.n, params.k
    return (1.0 + k * spiral_sum(params)) / (1.0 + k * n)


def zc_closed_form(params: SpiralParams, apex_correction: bool = True) -> float:
    """Closed-form 0-skeleton centroid height.

    For k >= 3 the apex is lifted by ``sin^2(a_1) tan^2(pi/k)``, which enters
    the spiral sum as ``h / k``.  ``apex_correction=False`` gives the
    uncorrected value; for k = 2 both coincide.
    """
    if params.k == 2 or not apex_correction:
        return zc_uncorrected(params)
    n, k = params.n, params.k
    lifted = spiral_sum(params) + apex_lift(params.alphas[0], k) / k
    return (1.0 + k * lifted) / (1.0 + k * n)


def balance_residual(points, masses=None) -> np.ndarray:
    """``sum m_i (p_i - C)`` about the mass-weighted mean ``C``; zero up to roundoff."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise DegenerateError("balance check needs a non-empty list of vectors")
    m = np.ones(len(pts)) if masses is None else np.asarray(masses, dtype=float)
    if m.shape != (len(pts),):
        raise ValueError("points and masses differ in length")
    if np.any(m < 0) or not m.sum() > 0:
        raise DegenerateError("masses must be non-negative with positive total")
    center = (pts * m[:, None]).sum(axis=0) / m.sum()
    return ((pts - center) * m[:, None]).sum(axis=0)


def apex_height(params: SpiralParams) -> float:
    return 1.0 + (0.0 if params.k == 2 else apex_lift(params.alphas[0], params.k))

