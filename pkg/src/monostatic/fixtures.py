"""Reference data: optimal spiral angles and coordinates of small monostatic polyhedra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from monostatic.geometry import Polyhedron, hull_polyhedron
from monostatic.spiral import SpiralParams

# Coordinates are printed to ~6 significant digits; coplanar groups merge within this band.
TABLE2_MERGE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Table1Row:
    no: int
    n: int
    k: int
    v: int
    z_c: float
    alphas_deg: tuple  # bottom-up: (a_{n+1}, a_n, ..., a_1)

    @property
    def params(self) -> SpiralParams:
        return SpiralParams.from_table_order(self.n, self.k, self.alphas_deg)

    def to_dict(self) -> dict:
        return {"no": self.no, "n": self.n, "k": self.k, "v": self.v, "z_C": self.z_c, "alphas_deg": list(self.alphas_deg)}

    @classmethod
    def from_dict(cls, d) -> "Table1Row":
        return cls(int(d["no"]), int(d["n"]), int(d["k"]), int(d["v"]), float(d["z_C"]), tuple(float(a) for a in d["alphas_deg"]))


TABLE1 = (
    Table1Row(1, 2, 25, 51, -0.00051277, (49.799, 49.799, 80.402)),
    Table1Row(2, 3, 8, 25, -0.0061413, (30.273, 30.273, 46.543, 72.912)),
    Table1Row(3, 4, 5, 21, -0.015354, (19.716, 19.716, 29.875, 44.519, 66.173)),
    Table1Row(4, 5, 4, 21, -0.029972, (13.494, 13.494, 20.336, 29.781, 43.215, 59.680)),
    Table1Row(
        5, 7, 3, 22, -0.042695,
        (7.1815, 7.1815, 10.7864, 15.6392, 22.1409, 30.9129, 43.0793, 43.0788),
    ),
    Table1Row(6, 5, 2, 11, -0.017984, (13.201, 13.201, 19.890, 29.110, 42.172, 62.427)),
)


def table1_row(no: int) -> Table1Row:
    for row in TABLE1:
        if row.no == no:
            return row
    raise KeyError(f"no Table 1 row {no}")


TABLE2 = {
    (1, 2): (
        (0, 374, 0), (154, 80, 0), (124, -32, 0), (81, -78, 0), (47, -95, 0), (24, -100, 0),
        (-24, -100, 0), (-47, -95, 0), (-81, -78, 0), (-124, -32, 0), (-154, 80, 0), (0, -1200, 5000),
    ),
    (1, 3): (
        (0, 466, 0), (166, 70, 0), (121, -47, 0), (71, -87, 0), (35, -100, 0), (-35, -100, 0),
        (-71, -87, 0), (-121, -47, 0), (-166, 70, 0), (0, -100, -900), (0, -100, 900),
    ),
    (2, 1): (
        (0, 374.328, 0), (153.589, 80.2023, 20), (124.268, -32.3675, 14.9819), (81.1006, -77.5258, 8.45141),
        (46.9121, -94.4981, 3.41302), (23.4562, -100, 0), (-23.4562, -100, 0), (-46.9121, -94.4981, 3.41302),
        (-81.1006, -77.5258, 8.45141), (-124.268, -32.3675, 14.9819), (-153.589, 80.2023, 20),
    ),
    (3, 1): (
        (0, 334.907, 0), (145.019, 83.7267, 10), (145.019, 0, 9.6018), (94.9161, -68.9606, 5.40618),
        (53.5898, -92.8203, 2.10256), (26.7949, -100, 0), (-26.7949, -100, 0), (-53.5898, -92.8203, 2.10256),
        (-94.9161, -68.9606, 5.40618), (-145.019, 0, 9.6018), (-145.019, 83.7267, 10),
    ),
}


def table2_body(label, merge_tol: float = TABLE2_MERGE_TOLERANCE) -> Polyhedron:
    return hull_polyhedron(np.asarray(TABLE2[tuple(label)], dtype=float), merge_tol=merge_tol)


def fixture_dict() -> dict:
    return {
        "table1": [row.to_dict() for row in TABLE1],
        "table2": [{"class": list(label), "points": [list(p) for p in pts]} for label, pts in TABLE2.items()],
    }


def load_fixture_dict(data: dict):
    rows = tuple(Table1Row.from_dict(r) for r in data.get("table1", []))
    blocks = {tuple(b["class"]): tuple(tuple(p) for p in b["points"]) for b in data.get("table2", [])}
    return rows, blocks
