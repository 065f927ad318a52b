"""Polyhedron and polygon containers, validation and convex-hull reconstruction."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull

from monostatic.errors import ConstructionError, DegenerateError, NonConvexError

DEFAULT_TOLERANCE = 1e-9
PLANARITY_TOLERANCE = 1e-8


def default_tolerance() -> float:
    """Relative strictness band, overridable through ``MONOSTATIC_TOLERANCE``."""
    value = os.environ.get("MONOSTATIC_TOLERANCE")
    if not value:
        return DEFAULT_TOLERANCE
    tol = float(value)
    if not tol > 0:
        raise ValueError(f"MONOSTATIC_TOLERANCE must be positive, got {value!r}")
    return tol


def _diameter(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    if len(points) > 400:
        # hull vertices carry the diameter
        try:
            points = points[ConvexHull(points).vertices]
        except Exception:
            pass
    diff = points[:, None, :] - points[None, :, :]
    return float(np.sqrt((diff**2).sum(-1)).max())


def newell_normal(points: np.ndarray) -> np.ndarray:
    """Area vector of a closed planar polygon: unit normal times area (Newell)."""
    nxt = np.roll(points, -1, axis=0)
    return 0.5 * np.cross(points, nxt).sum(axis=0)


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """Vertex coordinates plus face cycles oriented counter-clockwise seen from outside."""

    vertices: np.ndarray
    faces: tuple

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 3:
            raise ValueError(f"vertices must have shape (V, 3), got {verts.shape}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in self.faces))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def edges(self) -> tuple:
        """Undirected edges ``(a, b)`` with ``a < b``, in order of first appearance."""
        seen = {}
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                key = (min(a, b), max(a, b))
                seen.setdefault(key, None)
        return tuple(seen)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def diameter(self) -> float:
        return _diameter(self.vertices)

    @cached_property
    def face_area_vectors(self) -> np.ndarray:
        return np.array([newell_normal(self.vertices[list(f)]) for f in self.faces])

    @cached_property
    def face_normals(self) -> np.ndarray:
        vec = self.face_area_vectors
        norms = np.linalg.norm(vec, axis=1)
        if np.any(norms == 0):
            raise DegenerateError("face with zero area")
        return vec / norms[:, None]

    @cached_property
    def face_offsets(self) -> np.ndarray:
        """Plane offsets ``d`` with ``normal . x = d`` (mean over each face's vertices)."""
        return np.array(
            [self.face_normals[i] @ self.vertices[list(f)].mean(axis=0) for i, f in enumerate(self.faces)]
        )

    def face_edges(self, face_id: int):
        face = self.faces[face_id]
        return list(zip(face, face[1:] + face[:1]))

    def edge_faces(self) -> dict:
        """Map undirected edge -> list of incident face ids."""
        out = {}
        for fid, face in enumerate(self.faces):
            for a, b in zip(face, face[1:] + face[:1]):
                out.setdefault((min(a, b), max(a, b)), []).append(fid)
        return out

    def signed_distances(self, point) -> np.ndarray:
        """Signed distances of ``point`` to every face plane (negative = inside)."""
        return self.face_normals @ np.asarray(point, dtype=float) - self.face_offsets

    def contains(self, point, margin: float = 0.0) -> bool:
        return bool(np.all(self.signed_distances(point) < -margin))

    def transformed(self, rotation=None, translation=None, scale: float = 1.0) -> "Polyhedron":
        verts = self.vertices * scale
        if rotation is not None:
            verts = verts @ np.asarray(rotation, dtype=float).T
        if translation is not None:
            verts = verts + np.asarray(translation, dtype=float)
        return Polyhedron(verts, self.faces)

    def validate(self, tol: float | None = None, planarity: float = PLANARITY_TOLERANCE) -> "Polyhedron":
        """Raise :class:`ConstructionError` unless this is a closed convex polyhedron.

        ``tol`` (convexity slack) and ``planarity`` are relative to the diameter.
        Returns ``self`` so calls can be chained.
        """
        tol = default_tolerance() if tol is None else tol
        nv = self.n_vertices
        diam = self.diameter
        if nv < 4 or diam == 0:
            raise ConstructionError("fewer than 4 vertices or zero diameter")
        directed = {}
        for fid, face in enumerate(self.faces):
            if len(face) < 3 or len(set(face)) != len(face):
                raise ConstructionError(f"face {fid} is not a simple cycle", face=fid)
            if min(face) < 0 or max(face) >= nv:
                raise ConstructionError(f"face {fid} references a missing vertex", face=fid)
            for a, b in zip(face, face[1:] + face[:1]):
                if (a, b) in directed:
                    raise ConstructionError(f"directed edge {(a, b)} used twice", face=fid)
                directed[(a, b)] = fid
        for (a, b), fid in directed.items():
            if (b, a) not in directed:
                raise ConstructionError(f"edge {(a, b)} is not shared by two faces", face=fid)
        used = {i for f in self.faces for i in f}
        if len(used) != nv:
            missing = sorted(set(range(nv)) - used)
            raise ConstructionError(f"vertex {missing[0]} belongs to no face", vertex=missing[0])
        euler = nv - self.n_edges + self.n_faces
        if euler != 2:
            raise ConstructionError(f"Euler characteristic {euler} != 2")

        normals, offsets = self.face_normals, self.face_offsets
        for fid, face in enumerate(self.faces):
            dev = np.abs(self.vertices[list(face)] @ normals[fid] - offsets[fid])
            if dev.max() > planarity * diam:
                raise ConstructionError(
                    f"face {fid} is not planar (deviation {dev.max():.3e})", face=fid
                )
        heights = self.vertices @ normals.T - offsets  # (V, F)
        worst = np.unravel_index(np.argmax(heights), heights.shape)
        if heights[worst] > tol * diam:
            raise NonConvexError(
                f"vertex {worst[0]} lies {heights[worst]:.3e} in front of face {worst[1]}",
                face=int(worst[1]),
                vertex=int(worst[0]),
            )
        # strictly convex corners and non-flat dihedrals make every vertex extreme
        for fid, face in enumerate(self.faces):
            pts = self.vertices[list(face)]
            turn = np.cross(pts - np.roll(pts, 1, axis=0), np.roll(pts, -1, axis=0) - pts) @ normals[fid]
            bad = int(np.argmin(turn))
            if turn[bad] <= tol * diam**2:
                raise NonConvexError(
                    f"corner at vertex {face[bad]} of face {fid} is not strictly convex",
                    face=fid,
                    vertex=face[bad],
                )
        for edge, fids in self.edge_faces().items():
            f, g = fids
            others = [v for v in self.faces[g] if v not in edge]
            if np.max(heights[others, f]) >= -tol * diam:
                raise NonConvexError(f"faces {f} and {g} are coplanar across edge {edge}", face=g)
        return self

    def face_key_set(self) -> set:
        """Faces as vertex sets; used to compare face lattices irrespective of cycle rotation."""
        return {frozenset(f) for f in self.faces}


@dataclass(frozen=True, eq=False)
class Polygon2D:
    """Strictly convex polygon with vertices in counter-clockwise order."""

    vertices: np.ndarray

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise ValueError(f"vertices must have shape (V, 2), got {verts.shape}")
        object.__setattr__(self, "vertices", verts)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple:
        n = self.n_vertices
        return tuple((i, (i + 1) % n) for i in range(n))

    @cached_property
    def diameter(self) -> float:
        return _diameter(self.vertices)

    @cached_property
    def area(self) -> float:
        x, y = self.vertices.T
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def edge_normals(self) -> np.ndarray:
        """Outward unit normals of edges ``i -> i+1``."""
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        nrm = np.column_stack([d[:, 1], -d[:, 0]])
        return nrm / np.linalg.norm(nrm, axis=1)[:, None]

    def transformed(self, rotation=None, translation=None, scale: float = 1.0) -> "Polygon2D":
        verts = self.vertices * scale
        if rotation is not None:
            verts = verts @ np.asarray(rotation, dtype=float).T
        if translation is not None:
            verts = verts + np.asarray(translation, dtype=float)
        return Polygon2D(verts)

    def validate(self, tol: float | None = None) -> "Polygon2D":
        tol = default_tolerance() if tol is None else tol
        pts = self.vertices
        if len(pts) < 3:
            raise ConstructionError("polygon needs at least 3 vertices")
        d_in = pts - np.roll(pts, 1, axis=0)
        d_out = np.roll(pts, -1, axis=0) - pts
        turn = d_in[:, 0] * d_out[:, 1] - d_in[:, 1] * d_out[:, 0]
        bad = int(np.argmin(turn))
        if turn[bad] <= tol * self.diameter**2:
            raise NonConvexError(f"corner {bad} is not strictly convex (CCW)", vertex=bad)
        return self


def hull_polyhedron(points, merge_tol: float | None = None) -> Polyhedron:
    """Convex hull of ``points`` with coplanar hull triangles merged into polygonal faces.

    Only extreme points are kept, in their original relative order.
    ``merge_tol`` is relative to the diameter of the point set.
    """
    pts = np.asarray(points, dtype=float)
    merge_tol = default_tolerance() if merge_tol is None else merge_tol
    hull = ConvexHull(pts)
    keep = np.sort(hull.vertices)
    remap = {int(old): new for new, old in enumerate(keep)}
    verts = pts[keep]
    diam = _diameter(verts)
    slack = merge_tol * diam

    tris = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        a, b, c = (remap[int(i)] for i in simplex)
        if np.cross(verts[b] - verts[a], verts[c] - verts[a]) @ eq[:3] < 0:
            b, c = c, b
        tris.append((a, b, c))
    normals = hull.equations[:, :3]
    offsets = -hull.equations[:, 3]

    parent = list(range(len(tris)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_edge = {}
    for t, tri in enumerate(tris):
        for a, b in zip(tri, tri[1:] + tri[:1]):
            by_edge.setdefault((min(a, b), max(a, b)), []).append(t)
    for ts in by_edge.values():
        if len(ts) != 2:
            continue
        s, t = ts
        coplanar = (
            np.abs(verts[list(tris[t])] @ normals[s] - offsets[s]).max() <= slack
            and np.abs(verts[list(tris[s])] @ normals[t] - offsets[t]).max() <= slack
        )
        if coplanar:
            parent[find(s)] = find(t)

    groups = {}
    for t in range(len(tris)):
        groups.setdefault(find(t), []).append(t)

    faces = []
    for members in sorted(groups.values(), key=min):
        ids = sorted({v for t in members for v in tris[t]})
        area_vec = sum(np.cross(verts[tris[t][1]] - verts[tris[t][0]], verts[tris[t][2]] - verts[tris[t][0]]) for t in members)
        normal = area_vec / np.linalg.norm(area_vec)
        center = verts[ids].mean(axis=0)
        u = verts[ids[0]] - center
        u -= (u @ normal) * normal
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        rel = verts[ids] - center
        ang = np.arctan2(rel @ w, rel @ u)
        cycle = [ids[i] for i in np.argsort(ang, kind="stable")]
        start = cycle.index(min(cycle))
        faces.append(tuple(cycle[start:] + cycle[:start]))
    return Polyhedron(verts, faces)


def same_face_lattice(a: Polyhedron, b: Polyhedron, tol: float = 1e-9) -> bool:
    """True if both polyhedra have coincident vertices and identical faces up to cycle rotation."""
    if a.n_vertices != b.n_vertices or a.n_faces != b.n_faces:
        return False
    scale = max(a.diameter, b.diameter)
    dist = np.linalg.norm(a.vertices[:, None, :] - b.vertices[None, :, :], axis=-1)
    match = dist.argmin(axis=1)
    if np.any(dist[np.arange(len(match)), match] > tol * scale) or len(set(match.tolist())) != len(match):
        return False

    def canon(cycle):
        start = cycle.index(min(cycle))
        return tuple(cycle[start:] + cycle[:start])

    mapped = {canon([int(match[i]) for i in f]) for f in a.faces}
    return mapped == {canon(list(f)) for f in b.faces}
