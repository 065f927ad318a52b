import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from monostatic.errors import ConstructionError, InvalidParameterError, UndefinedLiftError
from monostatic.fixtures import TABLE1, TABLE2, table1_row
from monostatic.geometry import hull_polyhedron, same_face_lattice
from monostatic.spiral import (
    OutwardnessWarning,
    SpiralParams,
    apex_lift,
    build_double_spiral,
    build_k_spiral,
    classical_spiral,
    edge_plane_profile,
    modified_spiral,
    outwardness,
    profile,
    convexity_defect,
    profile_is_convex,
)

# mpmath, 30 digits: perpendicular feet P_i = proj of P_{i-1} onto the ray at phi_i
ROW3_Z = [0.16319694477727745, -0.10177813634816397, -0.19291099244420132, -0.22133834072064484]
ROW3_X = [0.36954526379408477, 0.2694618021758268, 0.15864503904435991, 0.079324699138995926]
# root of cos^2 a (sin^2 a + h) = (sin a cos a / cos(pi/5))^2 at a = 66.173 deg
ROW3_LIFT = 0.44171824559857666829534500548


@st.composite
def spiral_params(draw, k_min=3, k_max=9, n_max=6):
    n = draw(st.integers(1, n_max))
    k = draw(st.integers(k_min, k_max))
    weights = draw(st.lists(st.floats(0.2, 1.0), min_size=n + 1, max_size=n + 1))
    alphas = np.array(weights) / sum(weights) * math.pi
    assume(np.all(alphas < 0.5 * math.pi - 1e-3) and np.all(alphas > 1e-3))
    return SpiralParams(n, k, tuple(alphas))


def test_profile_matches_independent_construction():
    prof = profile(table1_row(3).params)
    assert np.allclose(prof.z, ROW3_Z, atol=1e-14)
    assert np.allclose(prof.x, ROW3_X, atol=1e-14)


@given(spiral_params(k_min=2))
def test_radii_perpendicular_to_chain(params):
    prof = profile(params)
    pts = np.vstack([[0.0, 1.0], np.column_stack([prof.x, prof.z])])
    for i in range(1, params.n + 1):
        assert abs(pts[i] @ (pts[i] - pts[i - 1])) < 1e-12
        assert prof.r[i - 1] == pytest.approx(math.hypot(*pts[i]), abs=1e-14)


def test_apex_lift_against_implicit_relation():
    assert apex_lift(math.radians(66.173), 5) == pytest.approx(ROW3_LIFT, rel=1e-13)


def test_apex_lift_edges():
    assert apex_lift(0.0, 5) == 0.0
    with pytest.raises(UndefinedLiftError):
        apex_lift(0.3, 2)
    with pytest.raises(InvalidParameterError):
        apex_lift(0.3, 1)


def test_classical_spiral_equal_angles():
    p = classical_spiral(5)
    assert np.allclose(p.alphas, math.pi / 6)
    assert p.k == 2 and len(p.alphas) == 6


def test_modified_spiral_closed_form_first_angle():
    # alpha_1 (1 + c + ... + c^{n-1} + c^{n-1}) = pi for the closed-up chain
    params, _ = modified_spiral(5, 1.5)
    assert math.degrees(params.alphas[0]) == pytest.approx(9.86301369863013698, abs=1e-9)
    assert np.allclose(np.diff(params.alphas[:5]) / np.array(params.alphas[:4]), 0.5)
    assert sum(params.alphas) == pytest.approx(math.pi, abs=1e-12)


def test_modified_spiral_rejects_impossible_ratio():
    with pytest.raises(InvalidParameterError):
        modified_spiral(3, 0.1, alpha1=math.radians(80.0))


def test_table_order_round_trip():
    row = table1_row(3)
    assert row.params.table_order_deg == pytest.approx(list(row.alphas_deg), abs=2e-3)
    assert row.params.alphas[0] == pytest.approx(math.radians(66.173))


def test_fixture_invariants():
    for row in TABLE1:
        assert abs(sum(row.alphas_deg) - 180.0) <= 0.01
        assert len(row.alphas_deg) == row.n + 1
    assert {label: len(pts) for label, pts in TABLE2.items()} == {(1, 2): 12, (1, 3): 11, (2, 1): 11, (3, 1): 11}


def test_table_sum_mismatch_is_rejected():
    with pytest.raises(InvalidParameterError):
        SpiralParams.from_table_order(2, 3, [40.0, 40.0, 40.0])


@pytest.mark.parametrize(
    "alphas",
    [(0.5 * math.pi, 0.25 * math.pi, 0.25 * math.pi), (0.0, 0.5, math.pi - 0.5), (1.0, 1.0, 1.0)],
)
def test_invalid_angle_sets(alphas):
    params = SpiralParams(2, 4, alphas)
    assert params.violations()
    with pytest.raises(InvalidParameterError):
        params.validate()


def test_outwardness_row3_and_equal_angles():
    row3 = table1_row(3).params
    assert [outwardness(row3, i) for i in range(4)] == [False, True, True, True]
    eq = SpiralParams(8, 3, tuple([math.radians(20.0)] * 9))
    # tail sums 140, 120, 100, 80, ... degrees
    assert [outwardness(eq, i) for i in range(1, 8)] == [False, False, False, True, True, True, True]


def test_edge_plane_profile_planar_case_is_identity():
    p = classical_spiral(4)
    x, z, scale = edge_plane_profile(p)
    prof = profile(p)
    assert scale == 1.0 and np.array_equal(x, prof.x) and np.array_equal(z, prof.z)


@pytest.mark.parametrize("row", [r for r in TABLE1 if r.k > 2], ids=lambda r: f"row{r.no}")
def test_table1_builds_counts_and_hull(row):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutwardnessWarning)
        body = build_k_spiral(row.params, check_hull=True)
    assert body.n_vertices == row.v == row.k * row.n + 1
    assert body.n_faces == row.k * row.n + 1
    assert body.n_vertices - body.n_edges + body.n_faces == 2
    assert same_face_lattice(body, hull_polyhedron(body.vertices))


@settings(max_examples=40, deadline=None)
@given(spiral_params())
def test_random_builds_match_hull(params):
    assume(profile_is_convex(params, tol=1e-9))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            body = build_k_spiral(params)
        except ConstructionError:
            assume(False)
    assert body.n_vertices == body.n_faces == params.k * params.n + 1
    assert same_face_lattice(body, hull_polyhedron(body.vertices))


@settings(max_examples=20, deadline=None)
@given(spiral_params(), st.floats(0.0, 2 * math.pi))
def test_dihedral_symmetry_and_phase(params, phase):
    assume(profile_is_convex(params, tol=1e-9))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            body = build_k_spiral(params)
        except ConstructionError:
            assume(False)
        turned = build_k_spiral(params, phase=phase)
    k = params.k
    t = 2 * math.pi / k
    rot = np.array([[math.cos(t), -math.sin(t), 0], [math.sin(t), math.cos(t), 0], [0, 0, 1]])
    rotated = {tuple(np.round(v, 9)) for v in body.vertices @ rot.T}
    assert rotated == {tuple(np.round(v, 9)) for v in body.vertices}
    assert np.allclose(turned.vertices[:, 2], body.vertices[:, 2])
    assert np.allclose(np.hypot(*turned.vertices[:, :2].T), np.hypot(*body.vertices[:, :2].T))


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_nonconvex_profile_rejected():
    # a short step between two long ones dents the profile
    params = SpiralParams.from_table_order(3, 5, [65.88, 75.03, 9.89, 29.2])
    assert not params.violations() and not profile_is_convex(params)
    assert convexity_defect(params) > 0 and convexity_defect(table1_row(5).params) == 0
    with pytest.raises(ConstructionError):
        build_k_spiral(params)


def test_non_outward_faces_warn():
    row5 = table1_row(5).params
    with pytest.warns(OutwardnessWarning):
        build_k_spiral(row5)


def test_double_spiral_shape():
    poly = build_double_spiral(classical_spiral(3))
    assert poly.n_vertices == 7
    assert poly.vertices[0] == pytest.approx([0.0, 1.0])
    # mirror symmetric about the vertical axis
    mirrored = {tuple(np.round(v * [-1, 1], 12)) for v in poly.vertices}
    assert mirrored == {tuple(np.round(v, 12)) for v in poly.vertices}
    assert poly.area > 0


def test_double_spiral_rejects_3d_params():
    with pytest.raises(InvalidParameterError):
        build_double_spiral(SpiralParams(2, 3, (1.0, 1.0, math.pi - 2.0)))
