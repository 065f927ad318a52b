import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import cube, random_rotation, tetrahedron
from monostatic.errors import ConstructionError, DegenerateError
from monostatic.fixtures import TABLE1
from monostatic.geometry import Polygon2D, Polyhedron, hull_polyhedron
from monostatic.mass import MassModel, apex_height, balance_residual, centroid, zc_closed_form, zc_uncorrected
from monostatic.spiral import SpiralParams, build_double_spiral, build_k_spiral, profile_is_convex

MODELS = list(MassModel)
CORNER = Polyhedron(
    np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float),
    [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)],
)
R2, R3 = math.sqrt(2), math.sqrt(3)
CORNER_EXPECTED = {
    "vertex": 0.25,
    "edge": (0.5 + R2) / (3 + 3 * R2),
    "face": (1 / 3 + R3 / 6) / (1.5 + R3 / 2),
    "solid": 0.25,
}


@pytest.mark.parametrize("model", MODELS)
def test_cube_all_models(model):
    assert centroid(cube(2.0), model).point == pytest.approx([1.0, 1.0, 1.0], abs=1e-14)


@pytest.mark.parametrize("model", MODELS)
def test_regular_tetrahedron_at_origin(model):
    assert centroid(tetrahedron(), model).point == pytest.approx([0, 0, 0], abs=1e-14)


@pytest.mark.parametrize("model", MODELS)
def test_corner_tetrahedron_closed_forms(model):
    c = centroid(CORNER, model)
    assert c.point == pytest.approx([CORNER_EXPECTED[model.value]] * 3, abs=1e-14)
    if model is MassModel.SOLID:
        assert c.mass == pytest.approx(1 / 6)


def test_solid_centroid_against_monte_carlo():
    rng = np.random.default_rng(11)
    for _ in range(3):
        body = hull_polyhedron(rng.normal(size=(20, 3)))
        c = centroid(body, "solid").point
        lo, hi = body.vertices.min(axis=0), body.vertices.max(axis=0)
        pts = rng.uniform(lo, hi, size=(400_000, 3))
        inside = pts[np.all(pts @ body.face_normals.T <= body.face_offsets, axis=1)]
        est = inside.mean(axis=0)
        se = inside.std(axis=0) / math.sqrt(len(inside))
        assert np.all(np.abs(est - c) < 4 * se)


def test_solid_centroid_independent_of_origin():
    body = hull_polyhedron(np.random.default_rng(2).normal(size=(15, 3)))
    shift = np.array([100.0, -40.0, 7.0])
    a = centroid(body, "solid").point
    b = centroid(body.transformed(translation=shift), "solid").point
    assert b - shift == pytest.approx(a, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(MODELS), st.floats(0.1, 10.0))
def test_centroid_equivariance(seed, model, scale):
    rng = np.random.default_rng(seed)
    body = hull_polyhedron(rng.normal(size=(12, 3)))
    rot, shift = random_rotation(rng), rng.normal(size=3)
    moved = body.transformed(rotation=rot, translation=shift, scale=scale)
    expected = scale * centroid(body, model).point @ rot.T + shift
    assert centroid(moved, model).point == pytest.approx(expected, abs=1e-10 * scale + 1e-12)


def test_polygon_centroids():
    tri = Polygon2D(np.array([[0, 0], [1, 0], [0, 1]], dtype=float))
    assert centroid(tri, "solid").point == pytest.approx([1 / 3, 1 / 3])
    assert centroid(tri, "face").point == pytest.approx([1 / 3, 1 / 3])
    assert centroid(tri, "vertex").point == pytest.approx([1 / 3, 1 / 3])
    edge_x = (0.5 + R2 / 2) / (2 + R2)
    assert centroid(tri, "edge").point == pytest.approx([edge_x, edge_x])


def test_parse_aliases():
    assert MassModel.parse("0-skeleton") is MassModel.VERTEX
    assert MassModel.parse("volume") is MassModel.SOLID
    assert MassModel.parse(MassModel.EDGE) is MassModel.EDGE
    with pytest.raises(ValueError):
        MassModel.parse("plasma")


@pytest.mark.parametrize("row", TABLE1, ids=lambda r: f"row{r.no}")
def test_closed_form_equals_vertex_mean(row):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        body = build_k_spiral(row.params) if row.k > 2 else build_double_spiral(row.params)
    assert centroid(body, "vertex").z == pytest.approx(zc_closed_form(row.params), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(3, 10), st.lists(st.floats(0.2, 1.0), min_size=7, max_size=7))
def test_closed_form_on_random_spirals(n, k, weights):
    alphas = np.array(weights[: n + 1]) / sum(weights[: n + 1]) * math.pi
    params = SpiralParams(n, k, tuple(alphas))
    assume(not params.violations() and profile_is_convex(params, 1e-9))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            body = build_k_spiral(params)
        except ConstructionError:
            assume(False)
    assert centroid(body, "vertex").z == pytest.approx(zc_closed_form(params), abs=1e-12)
    assert body.vertices[:, 2].max() == pytest.approx(apex_height(params))


def test_planar_forms_coincide():
    params = SpiralParams(3, 2, (0.9, 0.8, 0.7, math.pi - 2.4))
    assert zc_closed_form(params) == zc_closed_form(params, apex_correction=False) == zc_uncorrected(params)


def test_classical_double_spiral_n3():
    # 45 deg steps: z = 1/2, 0, -1/4, so z_C = (1 + 2 * 1/4) / 7
    params = SpiralParams(3, 2, (math.pi / 4,) * 4)
    assert zc_closed_form(params) == pytest.approx(1.5 / 7, abs=1e-15)


def test_balance_residual():
    pts = np.random.default_rng(0).normal(size=(50, 3))
    m = np.random.default_rng(1).random(50)
    assert np.abs(balance_residual(pts, m)).max() < 1e-12
    with pytest.raises(DegenerateError):
        balance_residual(pts, np.zeros(50))
    with pytest.raises(ValueError):
        balance_residual(pts, np.ones(3))
