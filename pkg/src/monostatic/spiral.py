"""Conway spirals and the D_k-symmetric polyhedra (k >= 3) or polygons (k = 2) built from them.

Angles are radians internally and indexed from the top: ``alphas[0]`` is the
central angle adjacent to the top point ``P0 = (0, 1)``.  Printed tables list
the angles bottom-up, see :func:`SpiralParams.from_table_order`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from monostatic.errors import ConstructionError, InvalidParameterError, UndefinedLiftError
from monostatic.geometry import Polygon2D, Polyhedron, default_tolerance, hull_polyhedron, same_face_lattice

CLOSURE_TOLERANCE = 1e-9
# tabulated angles are printed to ~5 significant digits
TABLE_SUM_TOLERANCE_DEG = 0.01


class OutwardnessWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SpiralParams:
    """Angle vector of a generalized Conway k-spiral.

    Construction never raises on bad angles so that callers can inspect
    :meth:`violations`; builders call :meth:`validate`.
    """

    n: int
    k: int
    alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))

    @classmethod
    def from_table_order(cls, n: int, k: int, alphas_deg) -> "SpiralParams":
        """Build from degrees listed bottom-up ``(a_{n+1}, a_n, ..., a_1)``.

        The bottom angle is re-derived as ``180 - sum(a_1..a_n)`` so the
        spiral closes exactly; the printed value must agree within 0.01 deg.
        """
        alphas_deg = [float(a) for a in alphas_deg]
        if n < 1:
            raise InvalidParameterError(f"n must be >= 1, got {n}")
        if len(alphas_deg) != n + 1:
            raise InvalidParameterError(f"expected {n + 1} angles for n={n}, got {len(alphas_deg)}")
        top_down = alphas_deg[::-1]
        if abs(sum(top_down) - 180.0) > TABLE_SUM_TOLERANCE_DEG:
            raise InvalidParameterError(f"angles sum to {sum(top_down):.6f} deg, not 180")
        free = np.radians(top_down[:n])
        return cls(n, k, tuple(free) + (math.pi - float(free.sum()),))

    @property
    def table_order_deg(self) -> list:
        return [math.degrees(a) for a in reversed(self.alphas)]

    def violations(self) -> list:
        out = []
        if self.n < 1:
            out.append(f"n must be >= 1, got {self.n}")
        if self.k < 2:
            out.append(f"k must be >= 2, got {self.k}")
        if len(self.alphas) != self.n + 1:
            out.append(f"expected {self.n + 1} angles, got {len(self.alphas)}")
        closure = abs(sum(self.alphas) - math.pi)
        if closure > CLOSURE_TOLERANCE:
            out.append(f"angles sum to pi + {closure:.3e}")
        for i, a in enumerate(self.alphas, start=1):
            if not 0.0 < a < math.pi / 2:
                out.append(f"alpha_{i} = {math.degrees(a):.6f} deg outside (0, 90)")
        return out

    def validate(self) -> "SpiralParams":
        problems = self.violations()
        if problems:
            raise InvalidParameterError("; ".join(problems))
        return self


@dataclass(frozen=True)
class SpiralProfile:
    """Per-step cumulative angle, radius and planar coordinates of ``P_1..P_n``."""

    phi: np.ndarray
    r: np.ndarray
    x: np.ndarray
    z: np.ndarray


def classical_spiral(n: int, k: int = 2) -> SpiralParams:
    """Equal central angles ``pi / (n + 1)``; n = 1 yields the boundary case 90 deg."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    return SpiralParams(n, k, (math.pi / (n + 1),) * (n + 1))


def _modified_angles(n, c, alpha1):
    head = alpha1 * c ** np.arange(n)
    return np.append(head, head[-1])


def modified_spiral(n: int, c: float, alpha1: float | None = None, k: int = 2):
    """Geometric progression ``alpha_i = c**(i-1) * alpha_1`` with ``alpha_{n+1} = alpha_n``.

    ``alpha_1`` is rescaled (by bisection, ``c`` fixed) so that the angles
    sum to pi.  Returns ``(params, rescale)`` where ``rescale`` is the factor
    applied to the supplied ``alpha1`` (1.0 when none was given).
    """
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if not c > 0:
        raise InvalidParameterError(f"ratio c must be positive, got {c}")
    weight = float(_modified_angles(n, c, 1.0).sum())
    closed = bisect(lambda a: _modified_angles(n, c, a).sum() - math.pi, 0.0, 2 * math.pi / weight, xtol=1e-15)
    alphas = _modified_angles(n, c, closed)
    if np.any(alphas <= 0) or np.any(alphas >= math.pi / 2):
        raise InvalidParameterError(
            f"modified spiral n={n}, c={c} leaves (0, 90) deg after closure: max {np.degrees(alphas.max()):.4f}"
        )
    rescale = 1.0 if alpha1 is None else closed / alpha1
    return SpiralParams(n, k, tuple(alphas)), rescale


def profile(params: SpiralParams) -> SpiralProfile:
    a = np.asarray(params.alphas[: params.n])
    phi = np.cumsum(a)
    r = np.cumprod(np.cos(a))
    return SpiralProfile(phi=phi, r=r, x=r * np.sin(phi), z=r * np.cos(phi))


def apex_lift(alpha1: float, k: int) -> float:
    """Upward shift of the top vertex that keeps the first edge chain at a right angle."""
    if k == 2:
        raise UndefinedLiftError("apex lift is undefined for k = 2 (tan(pi/2) diverges)")
    if k < 3:
        raise InvalidParameterError(f"k must be >= 3, got {k}")
    if not 0.0 <= alpha1 < math.pi / 2:
        raise InvalidParameterError(f"alpha_1 must lie in [0, pi/2), got {alpha1}")
    return math.sin(alpha1) ** 2 * math.tan(math.pi / k) ** 2


def outwardness(params: SpiralParams, i: int) -> bool:
    """Whether face/edge ``i`` (between levels i and i+1) has its upper edge farther from the axis."""
    if not 0 <= i <= params.n - 1:
        raise IndexError(f"face index {i} outside 0..{params.n - 1}")
    if i == 0:
        return False
    # alpha_j with 1-based j = i+2 .. n+1
    return sum(params.alphas[i + 1 :]) <= math.pi / 2


def edge_plane_profile(params: SpiralParams) -> tuple:
    """Axis distance and height of ``Q_1..Q_n`` in the edge plane, plus the apex height (lifted for k >= 3)."""
    prof = profile(params)
    if params.k == 2:
        return prof.x, prof.z, 1.0
    rho = prof.x / math.cos(math.pi / params.k)
    return rho, prof.z, 1.0 + apex_lift(params.alphas[0], params.k)


def _profile_turns(params: SpiralParams):
    rho, z, top = edge_plane_profile(params)
    chain = np.column_stack([np.concatenate([[0.0], rho, [0.0]]), np.concatenate([[top], z, [z[-1]]])])
    d = np.diff(chain, axis=0)
    return d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0], top - z[0]


def profile_is_convex(params: SpiralParams, tol: float = 0.0) -> bool:
    """Cheap convexity test of the D_k body.

    Stacked homothetic k-gons bound a convex body iff the edge-plane profile
    from the apex down to the base centre turns clockwise at every corner.
    """
    turn, drop = _profile_turns(params)
    return bool(drop > 0 and np.all(turn < -tol))


def convexity_defect(params: SpiralParams) -> float:
    """How far the edge-plane profile is from turning clockwise everywhere; 0 when convex."""
    turn, drop = _profile_turns(params)
    return float(np.sum(np.maximum(turn, 0.0)) + max(-drop, 0.0))


def _level_index(n_levels_k: int, i: int, j: int) -> int:
    return 1 + (i - 1) * n_levels_k + j


def build_k_spiral(params: SpiralParams, phase: float = 0.0, check_hull: bool = False, tol: float | None = None) -> Polyhedron:
    """D_k-symmetric polyhedron with ``k*n + 1`` vertices and as many faces.

    Vertex 0 is the lifted apex; vertex ``1 + (i-1)*k + j`` is level ``i``
    (1..n) on chain ``j`` (0..k-1).  Chain 0 sits at azimuth ``phase``.
    Faces: k apex triangles, ``k*(n-1)`` trapezoids, then the base k-gon.
    """
    params.validate()
    n, k = params.n, params.k
    if k == 2:
        raise UndefinedLiftError("k = 2 is planar; use build_double_spiral")
    if k < 3:
        raise InvalidParameterError(f"k must be >= 3, got {k}")
    if n < 2:
        raise InvalidParameterError("a k-spiral polyhedron needs n >= 2")
    for i in range(1, n):
        if not outwardness(params, i):
            warnings.warn(f"face {i} is not outwards; apex lift assumes it is", OutwardnessWarning, stacklevel=2)

    rho, z, top = edge_plane_profile(params)
    az = phase + 2 * math.pi * np.arange(k) / k
    verts = [(0.0, 0.0, top)]
    for i in range(n):
        verts.extend(zip(rho[i] * np.cos(az), rho[i] * np.sin(az), np.full(k, z[i])))

    faces = []
    for j in range(k):
        faces.append((0, _level_index(k, 1, j), _level_index(k, 1, (j + 1) % k)))
    for i in range(1, n):
        for j in range(k):
            jn = (j + 1) % k
            faces.append(
                (_level_index(k, i, j), _level_index(k, i + 1, j), _level_index(k, i + 1, jn), _level_index(k, i, jn))
            )
    faces.append(tuple(_level_index(k, n, j) for j in reversed(range(k))))

    poly = Polyhedron(np.array(verts), faces)
    poly.validate(tol=tol)
    if check_hull:
        hull = hull_polyhedron(poly.vertices, merge_tol=1e-9)
        if not same_face_lattice(poly, hull):
            raise ConstructionError("convex hull of the vertices has a different face lattice")
    return poly


def build_double_spiral(params: SpiralParams, tol: float | None = None) -> Polygon2D:
    """Mirror-symmetric ``2n+1``-gon in the (x, z) plane, counter-clockwise.

    Vertex 0 is ``P0 = (0, 1)``; then the mirror chain ``(-x_i, z_i)`` for
    i = 1..n going down, then ``(x_i, z_i)`` for i = n..1 coming back up.
    """
    params.validate()
    if params.k != 2:
        raise InvalidParameterError(f"double spiral requires k = 2, got {params.k}")
    prof = profile(params)
    left = np.column_stack([-prof.x, prof.z])
    right = np.column_stack([prof.x, prof.z])[::-1]
    poly = Polygon2D(np.vstack([[0.0, 1.0], left, right]))
    return poly.validate(tol=default_tolerance() if tol is None else tol)


def build(params: SpiralParams, **kwargs):
    """Dispatch to the planar (k = 2) or the 3D builder."""
    if params.k == 2:
        return build_double_spiral(params, **{k: v for k, v in kwargs.items() if k == "tol"})
    return build_k_spiral(params, **kwargs)
