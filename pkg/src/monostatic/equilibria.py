"""Static equilibria of convex bodies resting on a horizontal plane.

Stable points live on faces, saddles on edges, unstable points at vertices.
Every test is a support-plane test with a band of ``tol * diameter``; items
inside the band are reported as marginal and left out of the counts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from monostatic.errors import DegenerateError, InvalidParameterError, OutsideBodyError
from monostatic.geometry import Polygon2D, Polyhedron, default_tolerance
from monostatic.mass import Centroid


class MarginalEquilibriumWarning(UserWarning):
    pass


@dataclass
class EquilibriumReport:
    stable: list  # (face id, foot point); edge ids for polygons
    saddles: list  # (edge id, foot point)
    unstable: list  # vertex ids
    marginal: list  # dicts: kind, id, margin
    centroid: np.ndarray
    model: str = "vertex"
    dim: int = 3
    tolerance: float = field(default=1e-9)

    @property
    def S(self) -> int:
        return len(self.stable)

    @property
    def H(self) -> int:
        return len(self.saddles)

    @property
    def U(self) -> int:
        return len(self.unstable)

    @property
    def counts(self) -> tuple:
        return self.S, self.H, self.U

    @property
    def equilibrium_class(self) -> tuple:
        return self.S, self.U

    @property
    def mono_monostatic(self) -> bool:
        return not self.marginal and self.S == 1 and self.U == 1

    def to_dict(self, complexity: int | None = None) -> dict:
        def pt(p):
            return [float(v) for v in p]

        return {
            "model": self.model,
            "S": self.S,
            "H": self.H,
            "U": self.U,
            "stable": [{"face": int(i), "foot": pt(p)} for i, p in self.stable],
            "saddles": [{"edge": int(i), "foot": pt(p)} for i, p in self.saddles],
            "unstable": [int(i) for i in self.unstable],
            "marginal": [dict(m) for m in self.marginal],
            "complexity": complexity,
        }


def _center_of(C):
    if isinstance(C, Centroid):
        return np.asarray(C.point, dtype=float), C.model.value
    return np.asarray(C, dtype=float), "custom"


def _verdict(margin, eps):
    """+1 strict pass, -1 strict fail, 0 marginal."""
    if margin > eps:
        return 1
    if margin < -eps:
        return -1
    return 0


def _vertex_margins(verts, c):
    """Per vertex, minus the largest height of any other vertex above the plane normal to v - C."""
    x = verts - c
    norms = np.linalg.norm(x, axis=1)
    if np.any(norms == 0):
        raise DegenerateError("centroid coincides with a vertex")
    u = x / norms[:, None]
    heights = u @ verts.T - np.einsum("ij,ij->i", u, verts)[:, None]
    np.fill_diagonal(heights, -np.inf)
    return -heights.max(axis=1)


def classify(poly: Polyhedron, C, tol: float | None = None, validate: bool = True) -> EquilibriumReport:
    """Exact census of equilibria of a convex polyhedron about the point ``C``."""
    tol = default_tolerance() if tol is None else tol
    c, model = _center_of(C)
    if validate:
        poly.validate(tol=tol)
    verts = poly.vertices
    eps = tol * poly.diameter
    depth = poly.signed_distances(c)
    if np.any(depth >= -eps):
        raise OutsideBodyError(f"centre {c} is not strictly inside (face {int(np.argmax(depth))})")

    stable, saddles, unstable, marginal = [], [], [], []

    normals, offsets = poly.face_normals, poly.face_offsets
    for fid, face in enumerate(poly.faces):
        n = normals[fid]
        foot = c - (n @ c - offsets[fid]) * n
        pts = verts[list(face)]
        edge_dir = np.roll(pts, -1, axis=0) - pts
        inward = np.cross(n, edge_dir)
        inward /= np.linalg.norm(inward, axis=1)[:, None]
        margin = float(np.min(np.einsum("ij,ij->i", foot - pts, inward)))
        v = _verdict(margin, eps)
        if v > 0:
            stable.append((fid, foot))
        elif v == 0:
            marginal.append({"kind": "face", "id": fid, "margin": margin})

    onedge = np.zeros(len(verts), dtype=bool)
    for eid, (a, b) in enumerate(poly.edges):
        pa, pb = verts[a], verts[b]
        d = pb - pa
        length = float(np.linalg.norm(d))
        along = float((c - pa) @ d) / length
        foot = pa + along * d / length
        inside = min(along, length - along)
        if inside < -eps:
            continue
        arm = foot - c
        u = arm / np.linalg.norm(arm)
        onedge[:] = True
        onedge[[a, b]] = False
        support = -float(np.max((verts[onedge] - foot) @ u))
        margin = min(inside, support)
        v = _verdict(margin, eps)
        if v > 0:
            saddles.append((eid, foot))
        elif v == 0:
            marginal.append({"kind": "edge", "id": eid, "margin": margin})

    for vid, margin in enumerate(_vertex_margins(verts, c)):
        v = _verdict(margin, eps)
        if v > 0:
            unstable.append(vid)
        elif v == 0:
            marginal.append({"kind": "vertex", "id": vid, "margin": float(margin)})

    if marginal:
        warnings.warn(f"{len(marginal)} marginal equilibria excluded from the counts", MarginalEquilibriumWarning, stacklevel=2)
    return EquilibriumReport(stable, saddles, unstable, marginal, c, model=model, dim=3, tolerance=tol)


def classify_2d(poly: Polygon2D, C, tol: float | None = None) -> EquilibriumReport:
    """Planar analogue: edges carry stable points, vertices unstable ones; no saddles."""
    tol = default_tolerance() if tol is None else tol
    c, model = _center_of(C)
    poly.validate(tol=tol)
    verts = poly.vertices
    eps = tol * poly.diameter
    normals = poly.edge_normals()
    depth = np.einsum("ij,ij->i", c - verts, normals)
    if np.any(depth >= -eps):
        raise OutsideBodyError(f"centre {c} is not strictly inside the polygon")

    stable, unstable, marginal = [], [], []
    nxt = np.roll(verts, -1, axis=0)
    for eid, (pa, pb) in enumerate(zip(verts, nxt)):
        d = pb - pa
        length = float(np.linalg.norm(d))
        along = float((c - pa) @ d) / length
        margin = min(along, length - along)
        v = _verdict(margin, eps)
        if v > 0:
            stable.append((eid, pa + along * d / length))
        elif v == 0:
            marginal.append({"kind": "edge", "id": eid, "margin": margin})
    for vid, margin in enumerate(_vertex_margins(verts, c)):
        v = _verdict(margin, eps)
        if v > 0:
            unstable.append(vid)
        elif v == 0:
            marginal.append({"kind": "vertex", "id": vid, "margin": float(margin)})
    if marginal:
        warnings.warn(f"{len(marginal)} marginal equilibria excluded from the counts", MarginalEquilibriumWarning, stacklevel=2)
    return EquilibriumReport(stable, [], unstable, marginal, c, model=model, dim=2, tolerance=tol)


def tipping_test(xi, xj) -> bool:
    """Whether the body tips from the support through ``xi`` towards ``xj``.

    With ``x = v - C`` this is ``|xi| < |xj| cos(theta_ij)``, i.e.
    ``xi . (xj - xi) > 0``: vertex ``i`` is not an unstable equilibrium as
    soon as this holds for some other vertex ``j``.
    """
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    if not np.any(xi) or not np.any(xj):
        raise InvalidParameterError("tipping test needs non-zero vectors")
    return bool(xi @ (xj - xi) > 0)


def complexity(report: EquilibriumReport, poly: Polyhedron) -> int:
    """Mechanical complexity ``2 (V + F - S - U)``."""
    if not isinstance(poly, Polyhedron):
        raise TypeError("mechanical complexity is defined for polyhedra")
    return 2 * (poly.n_vertices + poly.n_faces - report.S - report.U)


def fibonacci_sphere(samples: int) -> np.ndarray:
    i = np.arange(samples) + 0.5
    z = 1.0 - 2.0 * i / samples
    rad = np.sqrt(1.0 - z * z)
    theta = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.column_stack([rad * np.cos(theta), rad * np.sin(theta), z])


@dataclass(frozen=True)
class OracleEstimate:
    S: int
    U: int
    samples: int

    def agrees_with(self, report: EquilibriumReport) -> bool:
        return (self.S, self.U) == (report.S, report.U)


def sampling_oracle(poly: Polyhedron, C, samples: int = 100_000, neighbours: int = 6) -> OracleEstimate:
    """Estimate (S, U) from sampled extrema on a Fibonacci sphere lattice with its k-NN graph.

    U counts strict local maxima of the support height ``max_v (v - C) . u``.
    S counts strict local minima of the radial distance from ``C`` to the
    boundary in direction ``u``.  The support height has V-shaped valleys
    along edge normals that fake minima on a lattice; the radial distance
    only has ridges there, so each count uses the function that is smooth at
    the extrema it counts.  Neither touches :func:`classify`.
    """
    if samples < 1000:
        raise InvalidParameterError(f"oracle needs at least 1000 samples, got {samples}")
    c, _ = _center_of(C)
    dirs = fibonacci_sphere(samples)
    dist, nbrs = cKDTree(dirs).query(dirs, neighbours + 1)
    if np.any(dist[:, 1] <= 0):
        raise DegenerateError("duplicate sample directions")
    nbrs = nbrs[:, 1:]
    rel = poly.vertices - c
    normals = poly.face_normals
    heights = poly.face_offsets - normals @ c
    if np.any(heights <= 0):
        raise OutsideBodyError("centre is not inside the body")
    support = np.empty(samples)
    radial = np.empty(samples)
    chunk = max(1, 2_000_000 // max(len(rel), len(normals), 1))
    for start in range(0, samples, chunk):
        block = dirs[start : start + chunk]
        support[start : start + chunk] = (block @ rel.T).max(axis=1)
        cosines = block @ normals.T
        with np.errstate(divide="ignore"):
            reach = np.where(cosines > 0, heights / cosines, np.inf)
        radial[start : start + chunk] = reach.min(axis=1)
    maxima = int(np.sum(support > support[nbrs].max(axis=1)))
    minima = int(np.sum(radial < radial[nbrs].min(axis=1)))
    return OracleEstimate(minima, maxima, samples)


def _min_quadratic_on_polygon(ys, curv, lin):
    """Minimum of ``curv*|y|^2 + lin.y`` over the convex polygon with in-plane vertices ``ys``."""
    vals = curv * np.einsum("ij,ij->i", ys, ys) + ys @ lin
    best = float(vals.min())
    if curv <= 0:
        return best
    star = -lin / (2.0 * curv)
    edge = np.roll(ys, -1, axis=0) - ys
    # area normal of the polygon in 3D: sign test for the stationary point
    nrm = np.cross(ys - ys.mean(axis=0), np.roll(ys, -1, axis=0) - ys.mean(axis=0)).sum(axis=0)
    side = np.einsum("ij,ij->i", np.cross(edge, star - ys), np.broadcast_to(nrm, ys.shape))
    if np.all(side >= 0):
        return min(best, float(curv * star @ star + lin @ star))
    for p, e in zip(ys, edge):
        a = curv * (e @ e)
        b = 2.0 * curv * (p @ e) + lin @ e
        t = min(1.0, max(0.0, -b / (2.0 * a)))
        y = p + t * e
        best = min(best, float(curv * y @ y + lin @ y))
    return best


def radial_monotonicity(poly: Polyhedron, C, axis=(0.0, 0.0, 1.0), tol: float | None = None) -> bool:
    """Whether the polar distance from ``C`` is strictly monotone along every meridian about ``axis``.

    The axis passes through ``C``.  On a face with outward normal ``n`` at
    distance ``d`` from ``C`` the meridian derivative of ``r`` has the sign
    of ``q(y) = d (a_t . y) - (n . a) |y|^2``, ``y`` measured in the face
    plane from the foot of ``C`` and ``a_t`` the in-plane part of the axis.
    Its zero set is the circle over the foot and the axis piercing point, so
    monotonicity holds iff ``q`` keeps one sign on every face.
    """
    tol = default_tolerance() if tol is None else tol
    c, _ = _center_of(C)
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    diam = poly.diameter
    depth = poly.signed_distances(c)
    if np.any(depth >= -tol * diam):
        raise OutsideBodyError("axis through the centre misses the body interior")

    lo, hi = np.inf, -np.inf
    for fid, face in enumerate(poly.faces):
        n = poly.face_normals[fid]
        d = -depth[fid]
        foot = c + d * n
        ys = poly.vertices[list(face)] - foot
        na = float(n @ a)
        lin = d * (a - na * n)
        lo = min(lo, _min_quadratic_on_polygon(ys, -na, lin))
        hi = max(hi, -_min_quadratic_on_polygon(ys, na, -lin))
    slack = tol * diam**2
    return bool(lo >= -slack or hi <= slack)
