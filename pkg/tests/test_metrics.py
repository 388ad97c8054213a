import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyqual.geometry import Polygon2, is_convex
from polyqual.mesh import PolygonalMesh
from polyqual.metrics import (
    CSV_HEADER,
    METRIC_NAMES,
    SCALE_INVARIANT,
    ElementMetrics,
    dataset_series,
    element_metrics,
    export_element_metrics_csv,
    export_summary_csv,
    mesh_metrics,
    summarize_mesh,
)

from _oracles import METRIC_FIXTURES, UNIT_SQUARE, EQUILATERAL, RIGHT_TRIANGLE, U_SHAPE


def _radial_polygon(rng, n):
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * np.pi))
        if gaps.min() > 1e-3 and gaps.max() < np.pi - 0.1:
            break
    radii = rng.uniform(0.2, 0.5, n)
    return Polygon2(np.c_[0.5 + radii * np.cos(angles), 0.5 + radii * np.sin(angles)])


# --- fixture oracle values ----------------------------------------------------


@pytest.mark.parametrize("name", sorted(METRIC_FIXTURES))
def test_metrics_match_closed_forms(name):
    verts, expected = METRIC_FIXTURES[name]
    # the 10:1 rectangle's optimal centres form a long flat ridge, which
    # makes tight inscribed-circle tolerances quadratically expensive
    ins_tol = 1e-4 if name == "rect_10_1" else 1e-8
    m = element_metrics(Polygon2(verts), inscribed_tol=ins_tol)
    for metric in METRIC_NAMES:
        tol = 2.0 * ins_tol if metric in ("IC", "CR", "SRG") else 1e-9
        assert float(m[metric]) == pytest.approx(expected[metric], abs=tol), metric


def test_defining_ratios_recompute():
    m = element_metrics(Polygon2(METRIC_FIXTURES["L_shape"][0]))
    assert m.CR == pytest.approx(m.IC / m.CC, abs=1e-12)
    assert m.KAR == pytest.approx(m.KE / m.AR, abs=1e-12)
    assert m.NPD == pytest.approx(m.MPD / (2.0 * m.CC), abs=1e-12)


def test_angle_ratio_property():
    m = element_metrics(Polygon2(UNIT_SQUARE))
    assert m.angle_ratio == pytest.approx(1.0, abs=1e-12)
    m = element_metrics(Polygon2(RIGHT_TRIANGLE))
    assert m.angle_ratio == pytest.approx(0.5, abs=1e-12)


# --- ranges, convexity, triangle closed forms ---------------------------------


def _assert_in_ranges(m: ElementMetrics):
    assert m.nE >= 3
    assert m.IC > 0 and m.CC > 0 and m.AR > 0 and m.SE > 0 and m.MPD > 0
    assert m.KE >= 0.0
    assert 0.0 < m.CR <= 1.0
    assert 0.0 <= m.KAR <= 1.0
    assert 0.0 < m.PAR <= 1.0
    assert 0.0 < m.MA < math.pi
    assert 0.0 < m.mA < 2.0 * math.pi
    assert 0.0 < m.ER <= 1.0
    assert 0.0 < m.NPD <= 1.0
    assert 0.0 <= m.SRG <= 1.0


def test_range_conformance_on_fixture_corpus():
    for verts, _ in METRIC_FIXTURES.values():
        _assert_in_ranges(element_metrics(Polygon2(verts)))
    rng = np.random.default_rng(3)
    for _ in range(20):
        _assert_in_ranges(element_metrics(_radial_polygon(rng, int(rng.integers(4, 16)))))


def test_kar_one_iff_convex():
    for verts, _ in METRIC_FIXTURES.values():
        p = Polygon2(verts)
        m = element_metrics(p)
        if is_convex(p):
            assert m.KAR == pytest.approx(1.0, abs=1e-9)
        else:
            assert m.KAR < 1.0 - 1e-9
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = _radial_polygon(rng, 12)
        m = element_metrics(p)
        assert (m.KAR > 1.0 - 1e-9) == is_convex(p)


def test_triangle_closed_forms():
    rng = np.random.default_rng(17)
    checked_acute = checked_obtuse = 0
    while checked_acute < 8 or checked_obtuse < 8:
        pts = rng.uniform(0.0, 1.0, size=(3, 2))
        a = np.linalg.norm(pts[1] - pts[2])
        b = np.linalg.norm(pts[0] - pts[2])
        c = np.linalg.norm(pts[0] - pts[1])
        u, v = pts[1] - pts[0], pts[2] - pts[0]
        area = abs(0.5 * (u[0] * v[1] - u[1] * v[0]))
        if area < 1e-3:
            continue
        m = element_metrics(Polygon2(pts), inscribed_tol=1e-10)
        s = (a + b + c) / 2.0
        assert m.IC == pytest.approx(area / s, rel=1e-6)
        lengths = sorted((a, b, c))
        if lengths[0] ** 2 + lengths[1] ** 2 > lengths[2] ** 2:  # acute
            assert m.CC == pytest.approx(a * b * c / (4.0 * area), rel=1e-9)
            checked_acute += 1
        else:  # obtuse/right: longest edge is diametral
            assert m.CC == pytest.approx(lengths[2] / 2.0, rel=1e-9)
            checked_obtuse += 1


# --- invariance properties -----------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.floats(min_value=0.01, max_value=100.0, allow_nan=False))
def test_scale_invariance(seed, s):
    rng = np.random.default_rng(seed)
    p = _radial_polygon(rng, int(rng.integers(4, 12)))
    base = element_metrics(p, inscribed_tol=3e-10)
    scaled = element_metrics(Polygon2(p.vertices * s), inscribed_tol=3e-10 * s)
    for name in METRIC_NAMES:
        if name in SCALE_INVARIANT:
            assert float(scaled[name]) == pytest.approx(float(base[name]), rel=1e-9, abs=1e-9), name
    for name in ("IC", "CC", "SE", "MPD"):
        assert float(scaled[name]) == pytest.approx(s * float(base[name]), rel=1e-7), name
    for name in ("AR", "KE"):
        assert float(scaled[name]) == pytest.approx(s * s * float(base[name]), rel=1e-9), name


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.floats(min_value=-np.pi, max_value=np.pi, allow_nan=False),
       st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
       st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_rigid_motion_invariance(seed, theta, dx, dy):
    rng = np.random.default_rng(seed)
    p = _radial_polygon(rng, int(rng.integers(4, 12)))
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    q = Polygon2(p.vertices @ rot.T + np.array([dx, dy]))
    a = element_metrics(p, inscribed_tol=3e-10)
    b = element_metrics(q, inscribed_tol=3e-10)
    for name in METRIC_NAMES:
        assert float(b[name]) == pytest.approx(float(a[name]), rel=1e-8, abs=1e-9), name


# --- mesh summaries and series --------------------------------------------------


def _two_squares_mesh():
    verts = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)]
    cells = ((0, 1, 4, 3), (1, 2, 5, 4))
    return PolygonalMesh(np.array(verts), cells, ("seed-polygon", "seed-polygon"))


def _square_and_triangle_mesh():
    verts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (2.0, 0.0), (3.0, 0.0), (2.0, 1.0)]
    cells = ((0, 1, 2, 3), (4, 5, 6))
    return PolygonalMesh(np.array(verts), cells, ("seed-polygon", "filler-triangle"))


def test_summary_identical_elements():
    s = summarize_mesh(_two_squares_mesh())
    for name in METRIC_NAMES:
        st_ = s[name]
        assert st_.min == pytest.approx(st_.max, rel=1e-12)
        assert st_.min == pytest.approx(st_.avg, rel=1e-12)
        assert st_.min_id == 0 and st_.max_id == 0  # ties break to lowest id
    assert s.n_elements == 2 and s.n_polygons == 2 and s.n_triangles == 0


def test_summary_attaining_elements():
    s = summarize_mesh(_square_and_triangle_mesh())
    assert s["MA"].min_id == 1
    assert s["MA"].min == pytest.approx(math.pi / 4.0, abs=1e-12)
    assert s["ER"].min_id == 1
    assert s["ER"].min == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
    assert s.n_triangles == 1 and s.n_polygons == 1


def test_summary_single_element():
    verts = np.array(UNIT_SQUARE)
    m = PolygonalMesh(verts, ((0, 1, 2, 3),), ("seed-polygon",))
    s = summarize_mesh(m)
    e = element_metrics(Polygon2(verts))
    for name in METRIC_NAMES:
        assert s[name].min == pytest.approx(float(e[name]), rel=1e-9)
        assert s[name].max == pytest.approx(float(e[name]), rel=1e-9)


def test_summary_empty_mesh_errors():
    with pytest.raises(ValueError):
        mesh_metrics(PolygonalMesh(np.zeros((0, 2)), (), ()))


def test_dataset_series_shapes():
    m = _two_squares_mesh()
    series = dataset_series([m] * 5)
    assert len(series) == len(METRIC_NAMES)
    for s in series:
        assert len(s) == 5
        assert len(set(s.mins)) == 1  # constant series for a repeated mesh
    series = dataset_series([m])
    assert all(len(s) == 1 for s in series)
    with pytest.raises(ValueError):
        dataset_series([])


# --- CSV export -----------------------------------------------------------------


def test_element_csv_header_and_rows(tmp_path):
    path = tmp_path / "metrics.csv"
    export_element_metrics_csv(_square_and_triangle_mesh(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[0] == "nE,IC,CC,CR,AR,KE,KAR,PAR,MA,mA,SE,ER,MPD,NPD,SRG"
    assert len(lines) == 3
    row = lines[1].split(",")
    assert row[0] == "4"  # nE written as an integer
    assert float(row[4]) == pytest.approx(1.0)  # AR of the unit square
    # 12 significant digits
    assert row[8] == format(math.pi / 2.0, ".12g")


def test_element_csv_angle_ratio_column(tmp_path):
    path = tmp_path / "metrics_ratio.csv"
    export_element_metrics_csv(_square_and_triangle_mesh(), path, angle_ratio=True)
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER + ",MA/mA"
    assert float(lines[2].split(",")[-1]) == pytest.approx(0.5)  # right triangle


def test_summary_csv(tmp_path):
    path = tmp_path / "summary.csv"
    export_summary_csv([summarize_mesh(_square_and_triangle_mesh())], path)
    lines = path.read_text().splitlines()
    assert lines[0] == "mesh,stat," + CSV_HEADER
    stats = [l.split(",")[1] for l in lines[1:]]
    assert stats == ["min", "max", "avg", "min_id", "max_id"]
    min_row = lines[1].split(",")
    assert min_row[0] == "0"
    assert float(min_row[2]) == 3.0  # min nE
