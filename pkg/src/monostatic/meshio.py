"""JSON and OBJ exchange for polyhedra and planar polygons.

JSON: ``{"vertices": [[x, y, z], ...], "faces": [[i, j, k, ...], ...]}`` with
0-based indices, faces counter-clockwise seen from outside.  Planar polygons
use 2-element vertices and a single face.  A JSON object without ``faces`` is
read as a point cloud and replaced by its convex hull.

OBJ: ``v``/``f`` records with 1-based indices in the same orientation.
Polygons are written in the y = 0 plane, tagged by a ``# polygon2d`` comment.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from monostatic.geometry import Polygon2D, Polyhedron, hull_polyhedron

POLYGON_TAG = "# polygon2d"


def to_dict(body) -> dict:
    if isinstance(body, Polygon2D):
        return {"vertices": body.vertices.tolist(), "faces": [list(range(body.n_vertices))]}
    return {"vertices": body.vertices.tolist(), "faces": [list(f) for f in body.faces]}


def from_dict(data: dict, merge_tol: float | None = None):
    verts = np.asarray(data["vertices"], dtype=float)
    if verts.ndim != 2 or verts.shape[1] not in (2, 3):
        raise ValueError("vertices must be a list of 2- or 3-element coordinates")
    if verts.shape[1] == 2:
        faces = data.get("faces") or [list(range(len(verts)))]
        return Polygon2D(verts[list(faces[0])])
    if not data.get("faces"):
        return hull_polyhedron(verts, merge_tol=merge_tol)
    return Polyhedron(verts, data["faces"])


def _write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_json(body, path):
    _write_text(path, json.dumps(to_dict(body), indent=1) + "\n")


def read_json(path, merge_tol: float | None = None):
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh), merge_tol=merge_tol)


def obj_text(body) -> str:
    lines = []
    if isinstance(body, Polygon2D):
        lines.append(POLYGON_TAG)
        lines.extend(f"v {float(x)!r} 0.0 {float(z)!r}" for x, z in body.vertices)
        lines.append("f " + " ".join(str(i + 1) for i in range(body.n_vertices)))
    else:
        lines.extend("v " + " ".join(repr(float(t)) for t in p) for p in body.vertices)
        lines.extend("f " + " ".join(str(i + 1) for i in face) for face in body.faces)
    return "\n".join(lines) + "\n"


def write_obj(body, path):
    _write_text(path, obj_text(body))


def read_obj(path):
    verts, faces, planar = [], [], False
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line == POLYGON_TAG:
                planar = True
            if not line or line.startswith("#"):
                continue
            head, *rest = line.split()
            if head == "v":
                verts.append([float(t) for t in rest[:3]])
            elif head == "f":
                # "f 1/1/1 2/2/2 ..." keeps only the vertex index
                faces.append([int(t.split("/")[0]) - 1 for t in rest])
    verts = np.array(verts, dtype=float)
    if planar:
        return Polygon2D(verts[faces[0]][:, [0, 2]])
    return Polyhedron(verts, faces)


def read_mesh(path, merge_tol: float | None = None):
    if Path(path).suffix.lower() == ".obj":
        return read_obj(path)
    return read_json(path, merge_tol=merge_tol)
