import math

import numpy as np
import pytest
import shapely
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import Polygon, box

from floatbody.errors import (
    CornerPoint,
    DegeneratePolygon,
    DepthConflict,
    GeometryError,
    NotSurfacePiercing,
    ZeroMass,
)
from floatbody.geometry import (
    BodySpec,
    DensityRegion,
    FluidConfig,
    center_of_mass,
    clip_immersed,
    edge_normals,
    generalized_normal,
    is_mirror_symmetric,
    is_simple,
    mirror_density_symmetric,
    point_in_polygon,
    polygon_moment,
    rectangle,
    region_integral,
    regular_polygon,
    sample_polyline,
    split_polygon,
)


def star(radii, phase=0.0, center=(0.0, 0.0)):
    n = len(radii)
    t = phase + 2 * np.pi * np.arange(n) / n
    r = np.asarray(radii)
    return np.column_stack([center[0] + r * np.cos(t), center[1] + r * np.sin(t)])


radii_st = st.lists(st.floats(0.3, 2.0), min_size=5, max_size=14)


# -- region_integral against independent quadrature -------------------------


def test_unit_square_moments():
    P = rectangle(0, 1, 0, 1)
    assert region_integral(P, "1") == pytest.approx(1.0, rel=1e-15)
    assert region_integral(P, "x") == pytest.approx(0.5, rel=1e-15)
    assert region_integral(P, "x2") == pytest.approx(1 / 3, rel=1e-15)
    assert region_integral(P, "r2") == pytest.approx(2 / 3, rel=1e-15)


def test_triangle_moment_closed_form():
    # int over the triangle (0,0),(1,0),(0,1) of x^2 y = 1/60
    P = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert polygon_moment(P, 2, 1) == pytest.approx(1 / 60, rel=1e-14)
    assert polygon_moment(P[::-1], 2, 1) == pytest.approx(-1 / 60, rel=1e-14)


def test_region_integral_orientation_independent():
    P = regular_polygon(7, 1.3, (0.2, -0.4))
    for f in ("1", "x", "y", "x2", "r2"):
        assert region_integral(P, f) == pytest.approx(region_integral(P[::-1], f), rel=1e-13)


def test_region_integral_monte_carlo():
    rng = np.random.default_rng(11)
    P = star([1.0, 1.6, 0.8, 1.4, 1.1, 0.7, 1.5])
    pts = rng.uniform(-2, 2, size=(400_000, 2))
    inside = point_in_polygon(pts, P)
    area = 16.0 * inside.mean()
    assert region_integral(P, "1") == pytest.approx(area, rel=1e-2)
    r2 = 16.0 * np.mean(np.where(inside, (pts**2).sum(1), 0.0))
    assert region_integral(P, "r2") == pytest.approx(r2, rel=2e-2)


def test_region_integral_degenerate():
    with pytest.raises(DegeneratePolygon):
        region_integral(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        region_integral(rectangle(0, 1, 0, 1), "xy")


@given(radii_st, st.floats(-1, 1), st.floats(-1, 1))
@settings(max_examples=60, deadline=None)
def test_moments_match_shapely(radii, cx, cy):
    P = star(radii, center=(cx, cy))
    poly = Polygon(P)
    assert region_integral(P, "1") == pytest.approx(poly.area, rel=1e-12)
    c = poly.centroid
    assert region_integral(P, "x") / poly.area == pytest.approx(c.x, abs=1e-12)
    assert region_integral(P, "y") / poly.area == pytest.approx(c.y, abs=1e-12)


@given(radii_st, st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=40, deadline=None)
def test_parallel_axis(radii, ox, oy):
    P = star(radii)
    A = region_integral(P, "1")
    mx, my = region_integral(P, "x"), region_integral(P, "y")
    shifted = region_integral(P, "r2", origin=(ox, oy))
    direct = region_integral(P, "r2") - 2 * (ox * mx + oy * my) + A * (ox * ox + oy * oy)
    assert shifted == pytest.approx(direct, rel=1e-10, abs=1e-12)


# -- validation -------------------------------------------------------------


def test_body_validation():
    with pytest.raises(GeometryError):
        BodySpec.uniform(rectangle(0, 1, 0, 1)[::-1], 1.0)  # clockwise
    with pytest.raises(GeometryError):
        BodySpec.uniform([[0, 0], [1, 1], [1, 0], [0, 1]], 1.0)  # bow tie
    with pytest.raises(GeometryError):
        BodySpec.uniform([[0, 0], [1, 0]], 1.0)
    with pytest.raises(GeometryError):
        BodySpec(rectangle(0, 1, 0, 1))
    with pytest.raises(GeometryError):
        BodySpec.uniform(rectangle(0, 1, 0, 1), -1.0)
    with pytest.raises(GeometryError):
        FluidConfig(depth=0.0)


def test_is_simple():
    assert is_simple(regular_polygon(6))
    assert not is_simple(np.array([[0, 0], [2, 0], [0, 1], [2, 1]], dtype=float))


def test_center_of_mass_regions():
    P = rectangle(-1, 1, -1, 1)
    lo, up = split_polygon(P, 0.0)
    body = BodySpec(P, regions=[DensityRegion(lo[0], 3.0), DensityRegion(up[0], 1.0)])
    x0, y0 = center_of_mass(body)
    assert x0 == pytest.approx(0.0, abs=1e-15)
    assert y0 == pytest.approx((1.0 * 0.5 - 3.0 * 0.5) / 4.0, rel=1e-14)
    with pytest.raises(ZeroMass):
        center_of_mass(BodySpec.uniform(P, 0.0))


def test_split_polygon_areas():
    P = regular_polygon(9, 1.0, (0.1, 0.2), 0.3)
    lo, up = split_polygon(P, 0.05)
    total = sum(region_integral(p) for p in lo + up)
    assert total == pytest.approx(region_integral(P), rel=1e-13)
    for p in lo:
        assert p[:, 1].max() <= 0.05 + 1e-15


# -- clipping ---------------------------------------------------------------


def test_clip_square():
    imm = clip_immersed(BodySpec.uniform(rectangle(-1, 1, -1, 1), 500.0))
    assert imm.a == 1.0 and imm.b0 == 1.0
    assert imm.D == ((-1.0, 1.0),)
    assert imm.area == pytest.approx(2.0, rel=1e-15)
    assert imm.s_length == pytest.approx(4.0, rel=1e-15)
    assert imm.waterline_intervals == 1


def test_clip_catamaran():
    P = np.array(
        [[-3, -1], [-1, -1], [-1, 0.2], [1, 0.2], [1, -1], [3, -1], [3, 1], [-3, 1]], dtype=float
    )
    imm = clip_immersed(BodySpec.uniform(P, 500.0))
    assert imm.waterline_intervals == 2
    assert imm.D == ((-3.0, -1.0), (1.0, 3.0))
    assert imm.area == pytest.approx(4.0, rel=1e-14)


def test_clip_errors():
    with pytest.raises(NotSurfacePiercing):
        clip_immersed(BodySpec.uniform(rectangle(-1, 1, 0.5, 1), 1.0))
    with pytest.raises(NotSurfacePiercing):
        clip_immersed(BodySpec.uniform(rectangle(-1, 1, -2, -1), 1.0))
    with pytest.raises(DepthConflict):
        clip_immersed(BodySpec.uniform(rectangle(-1, 1, -1, 1), 1.0), FluidConfig(depth=1.0))


def test_clip_snaps_near_waterline():
    P = np.array([[-1, -1], [1, -1], [1, 1e-14], [0.5, 1], [-1, 1e-14]], dtype=float)
    imm = clip_immersed(BodySpec.uniform(P, 1.0))
    assert imm.D == ((-1.0, 1.0),)


@given(radii_st, st.floats(0, 2 * np.pi), st.floats(-0.2, 0.2))
@settings(max_examples=60, deadline=None)
def test_clip_matches_shapely(radii, phase, cy):
    P = star(radii, phase, (0.0, cy))
    body = BodySpec.uniform(P, 1.0)
    try:
        imm = clip_immersed(body)
    except NotSurfacePiercing:
        return
    wet = Polygon(P).intersection(box(-10, -10, 10, 0))
    assert imm.area == pytest.approx(wet.area, rel=1e-12, abs=1e-14)
    line = Polygon(P).intersection(shapely.geometry.LineString([(-10, 0), (10, 0)]))
    assert sum(r - l for l, r in imm.D) == pytest.approx(line.length, rel=1e-12, abs=1e-14)


# -- normals ----------------------------------------------------------------


def test_normals_point_into_body():
    imm = clip_immersed(BodySpec.uniform(rectangle(-1, 1, -1, 1), 500.0))
    # left wall, then bottom, then right wall
    n = generalized_normal(imm, (0.0, 0.0), 0.5)
    assert (n.N1, n.N2) == (1.0, 0.0)
    assert n.point == (-1.0, -0.5)
    assert n.N3 == pytest.approx(0.5)
    n = generalized_normal(imm, (0.0, 0.0), 1.5)
    assert n.point == (-0.5, -1.0)
    assert (n.N1, n.N2, n.N3) == pytest.approx((0.0, 1.0, -0.5))
    n = generalized_normal(imm, (0.0, 0.0), 2.5)
    assert (n.N1, n.N2, n.N3) == pytest.approx((0.0, 1.0, 0.5))
    n = generalized_normal(imm, (0.0, 0.0), 3.5)
    assert n.point == pytest.approx((1.0, -0.5))
    assert (n.N1, n.N2, n.N3) == pytest.approx((-1.0, 0.0, -0.5))


def test_normal_at_corner_raises():
    imm = clip_immersed(BodySpec.uniform(rectangle(-1, 1, -1, 1), 500.0))
    for s in (0.0, 1.0, 3.0, 4.0):
        with pytest.raises(CornerPoint):
            generalized_normal(imm, (0.0, 0.0), s)


@given(radii_st, st.floats(0, 2 * np.pi))
@settings(max_examples=40, deadline=None)
def test_normal_properties(radii, phase):
    P = star(radii, phase)
    try:
        imm = clip_immersed(BodySpec.uniform(P, 1.0))
    except NotSurfacePiercing:
        return
    e = edge_normals(imm, (0.1, -0.2))
    assert np.allclose(np.linalg.norm(e["normal"], axis=1), 1.0, atol=1e-14)
    # a point a short way along the normal lies in the body
    mid = 0.5 * (e["start"] + e["end"])
    probe = mid + 1e-7 * e["normal"] * e["length"][:, None]
    assert point_in_polygon(probe, P).all()
    # divergence theorem: int_S n ds closes with the waterline term
    total = (e["normal"] * e["length"][:, None]).sum(0)
    assert total[0] == pytest.approx(0.0, abs=1e-12)
    assert total[1] == pytest.approx(sum(r - l for l, r in imm.D), rel=1e-12)


# -- symmetry helpers -------------------------------------------------------


def test_mirror_symmetry():
    assert is_mirror_symmetric(rectangle(-2, 2, -1, 1))
    assert not is_mirror_symmetric(rectangle(-2, 2.1, -1, 1))
    P = rectangle(-1, 1, -1, 1)
    lo, up = split_polygon(P, 0.0)
    sym = BodySpec(P, regions=[DensityRegion(lo[0], 2.0), DensityRegion(up[0], 1.0)])
    assert mirror_density_symmetric(sym)
    left = rectangle(-1, 0, -1, 1)
    right = rectangle(0, 1, -1, 1)
    asym = BodySpec(P, regions=[DensityRegion(left, 2.0), DensityRegion(right, 1.0)])
    assert not mirror_density_symmetric(asym)


def test_sample_polyline_spacing():
    pts = sample_polyline([[0, 0], [1, 0], [1, 0.35]], 0.1)
    d = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    assert d.max() <= 0.1 + 1e-15
    assert np.allclose(pts[-1], [1, 0.35])
    assert math.isclose(d.sum(), 1.35)
