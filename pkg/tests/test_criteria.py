import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floatbody.criteria import (
    FINITE_CONE_DEG,
    check_class_b,
    check_john_i,
    check_john_strip,
    check_simon_ursell,
    classify_mode,
    field_parity,
    frequency_bound,
    nontrapping_report,
    pencil_witness,
    stiffness_pencil,
)
from floatbody.errors import InfiniteDepth, NegativeRoot
from floatbody.geometry import (
    BodySpec,
    DensityRegion,
    FluidConfig,
    clip_immersed,
    rectangle,
    split_polygon,
)
from floatbody.hydrostatics import HydroMatrices, assemble_matrices

G = 9.81


def hm(IM=1.0, IM2=1.0, ID=0.0, IDx=0.0, IDxx=0.0, ISy=0.0, g=G):
    return HydroMatrices(IM, IM2, ID, IDx, IDxx, ISy, g, 1000.0, (0.0, 0.0))


def det_residual(m, lam):
    M = lam * m.E - m.g * m.K
    # at lam = 0 the surge row is exactly zero and LU meets a zero pivot
    with np.errstate(divide="ignore"):
        d = np.linalg.det(M)
    return abs(d) / (np.linalg.norm(m.E) * np.linalg.norm(m.g * m.K)) ** 1.5


# -- frequency bound --------------------------------------------------------


def test_rectangle_roots(rect, rect_imm):
    m = assemble_matrices(rect, rect_imm)
    b = frequency_bound(m)
    assert b.lambdas == pytest.approx((0.0, 29 * G / 17, 2 * G), rel=1e-12)
    assert b.omega_star == pytest.approx(math.sqrt(2 * G), rel=1e-12)
    assert not b.strict


def test_zero_stiffness():
    b = frequency_bound(hm())
    assert b.lambdas == (0.0, 0.0, 0.0) and b.omega_star == 0.0


def test_unstable_body_raises(square):
    imm = clip_immersed(square)
    with pytest.raises(NegativeRoot):
        frequency_bound(assemble_matrices(square, imm))


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 10), st.floats(0, 10))
@settings(max_examples=100, deadline=None)
def test_decoupled_roots(IM, IM2, ID, K33):
    b = frequency_bound(hm(IM=IM, IM2=IM2, ID=ID, IDxx=K33))
    expect = sorted([0.0, G * ID / IM, G * K33 / IM2])
    assert b.lambdas == pytest.approx(expect, rel=1e-12, abs=1e-12)


@given(
    st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-3, 3), st.floats(0.1, 10)
)
@settings(max_examples=150, deadline=None)
def test_roots_solve_determinant(IM, IM2, ID, IDx, K33):
    # keep K' positive definite
    K33 = K33 + IDx * IDx / ID
    m = hm(IM=IM, IM2=IM2, ID=ID, IDx=IDx, IDxx=K33)
    b = frequency_bound(m)
    assert 0.0 in b.lambdas
    for lam in b.lambdas:
        assert det_residual(m, lam) < 1e-9
    # independent check with a generalized symmetric eigensolver
    import scipy.linalg

    ref = scipy.linalg.eigh(G * m.Kprime, np.diag([IM, IM2]), eigvals_only=True)
    assert sorted(b.lambdas[1:]) == pytest.approx(sorted(ref), rel=1e-10, abs=1e-12)


@given(
    st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-3, 3), st.floats(0.1, 10)
)
@settings(max_examples=40, deadline=None)
def test_psd_above_threshold_random_chi(IM, IM2, ID, IDx, K33):
    K33 = K33 + IDx * IDx / ID
    m = hm(IM=IM, IM2=IM2, ID=ID, IDx=IDx, IDxx=K33)
    b = frequency_bound(m)
    rng = np.random.default_rng(0)
    chi = rng.normal(size=(1000, 3))
    M = stiffness_pencil(m, b.lambda_max * (1 + 1e-12))
    q = np.einsum("ij,jk,ik->i", chi, M, chi)
    assert q.min() >= -1e-9 * np.linalg.norm(M)
    lo, w = pencil_witness(m, 0.9 * b.lambda_max)
    assert lo < 0
    assert w @ stiffness_pencil(m, 0.9 * b.lambda_max) @ w < 0


# -- geometric checks -------------------------------------------------------


def bulged(delta):
    return np.array([[-1, -1], [1 + delta, -0.5], [1, 0.5], [-1, 0.5]], dtype=float)


def test_strip_examples(rect_imm):
    assert check_john_strip(rect_imm).status == "holds"
    imm = clip_immersed(BodySpec.uniform(bulged(0.1), 1.0))
    v = check_john_strip(imm)
    assert v.status == "fails"
    assert v.witness == pytest.approx((1.1, -0.5))
    imm = clip_immersed(BodySpec.uniform(bulged(0.0), 1.0))
    tol_delta = 0.5e-9 * imm.diameter
    imm = clip_immersed(BodySpec.uniform(bulged(tol_delta), 1.0))
    assert check_john_strip(imm).status == "marginal"


def test_john_i(rect_imm):
    assert check_john_i(rect_imm).holds
    P = np.array([[-3, -1], [-1, -1], [-1, 0.2], [1, 0.2], [1, -1], [3, -1], [3, 1], [-3, 1]], dtype=float)
    assert check_john_i(clip_immersed(BodySpec.uniform(P, 1.0))).status == "fails"


def test_simon_ursell_examples(rect_imm, rect_fluid):
    v = check_simon_ursell(rect_imm, rect_fluid)
    assert v.status == "holds"
    assert v.detail.startswith("angle 44.3333")
    # flared point a + 1 below the waterline at depth 0.5
    P = np.array([[-1, 0.5], [-1, -0.5], [2.0, -0.5], [1.0, 0.0], [1.0, 0.5]], dtype=float)
    imm = clip_immersed(BodySpec.uniform(P, 1.0))
    v = check_simon_ursell(imm, FluidConfig(), 45.0)
    assert v.status == "fails"
    assert v.witness == pytest.approx((2.0, -0.5))
    assert v.margin == pytest.approx(-0.5)


@given(st.floats(0.05, 20), st.floats(0.1, 5))
@settings(max_examples=50, deadline=None)
def test_triangular_hull_inside_cone(b0, a):
    P = np.array([[0, -b0], [a, 0], [a, 1], [-a, 1], [-a, 0]], dtype=float)
    imm = clip_immersed(BodySpec.uniform(P, 1.0))
    assert check_simon_ursell(imm, FluidConfig()).status == "holds"
    assert check_john_strip(imm).status == "holds"


def test_angle_zero_is_strip():
    rng = np.random.default_rng(5)
    from oracles import random_floating_polygon

    for _ in range(30):
        imm = clip_immersed(BodySpec.uniform(random_floating_polygon(rng), 1.0))
        a = check_simon_ursell(imm, FluidConfig(), 0.0)
        b = check_john_strip(imm)
        assert (a.status, a.margin, a.witness) == (b.status, b.margin, b.witness)


def test_cone_angle_monotone():
    rng = np.random.default_rng(9)
    from oracles import random_floating_polygon

    for _ in range(30):
        imm = clip_immersed(BodySpec.uniform(random_floating_polygon(rng), 1.0))
        m = [check_simon_ursell(imm, FluidConfig(), ang).margin for ang in (0, 20, FINITE_CONE_DEG, 45)]
        assert all(x <= y + 1e-15 for x, y in zip(m, m[1:]))


# -- class B ----------------------------------------------------------------


def test_class_b_flared(flared, flared_water):
    imm = clip_immersed(flared, flared_water)
    v = check_class_b(imm, flared, flared_water)
    assert v.status == "holds"
    assert v.symmetric and v.graph == "holds" and v.simon_ursell == "fails"


def test_class_b_rectangle_goes_to_cone_path(rect, rect_imm, rect_fluid):
    v = check_class_b(rect_imm, rect, rect_fluid)
    assert v.status == "fails"
    assert v.simon_ursell == "holds"


def test_class_b_asymmetric():
    P = np.array([[-1, -1], [1.5, -1.2], [1, 0.5], [-1, 0.5]], dtype=float)
    body = BodySpec.uniform(P, 500.0)
    fluid = FluidConfig(depth=5.0)
    v = check_class_b(clip_immersed(body, fluid), body, fluid)
    assert v.status == "fails" and not v.symmetric


def test_class_b_asymmetric_density(flared_water):
    P = rectangle(-1, 1, -1, 1)
    left, right = rectangle(-1, 0, -1, 1), rectangle(0, 1, -1, 1)
    body = BodySpec(P, regions=[DensityRegion(left, 400.0), DensityRegion(right, 600.0)])
    v = check_class_b(clip_immersed(body, flared_water), body, flared_water)
    assert not v.symmetric


def test_class_b_needs_finite_depth(rect):
    imm = clip_immersed(rect)
    with pytest.raises(InfiniteDepth):
        check_class_b(imm, rect, FluidConfig())


# -- mode classification ----------------------------------------------------


def test_classify_mode_examples():
    assert classify_mode("even", (1, 0, 0.3)) == "type-a"
    assert classify_mode("odd", (0, 1, 0)) == "type-b"
    assert classify_mode("even", (1, 1, 0)) == "neither"
    assert classify_mode("none", (1, 0, 0)) == "neither"
    assert classify_mode("odd", (1e-9, 1, 0)) == "type-b"
    assert classify_mode("odd", (0, 0, 0)) == "type-b"


def test_field_parity():
    x = np.linspace(-1, 1, 21)
    mirror = np.arange(21)[::-1]
    assert field_parity(np.cos(x), mirror) == "even"
    assert field_parity(np.sin(x), mirror) == "odd"
    assert field_parity(np.exp(x), mirror) == "none"
    assert field_parity(np.cos(x) + 1e-9 * np.sin(x), mirror) == "even"


# -- report -----------------------------------------------------------------


def test_report_rectangle(rect, rect_fluid):
    r = nontrapping_report(rect, rect_fluid)
    assert r.applicable_proposition == "Prop2-SU"
    assert r.bound.omega_star == pytest.approx(math.sqrt(2 * G), rel=1e-12)
    assert not r.bound.strict and r.mode_restriction == ()
    assert r.claim.startswith("no trapped modes for omega >=")


def test_report_square(square):
    r = nontrapping_report(square, FluidConfig())
    assert r.applicable_proposition == "none"
    assert r.claim == "no claim (equilibrium unstable)"
    assert r.bound is None


def test_report_flared(flared, flared_water):
    r = nontrapping_report(flared, flared_water)
    assert r.equilibrium.ok
    assert r.applicable_proposition == "Prop3-classB"
    assert r.mode_restriction == ("type-a", "type-b")
    assert r.bound.strict
    assert "omega >" in r.claim


def ballasted(P, split, rho_upper=300.0, rho0=1000.0):
    """Body floating with its displaced area; heavy ballast below ``y = split``."""
    displaced = clip_immersed(BodySpec.uniform(P, 1.0)).area
    lo, up = split_polygon(P, split)
    a_lo = sum(_area(p) for p in lo)
    a_up = sum(_area(p) for p in up)
    rho_lo = (rho0 * displaced - rho_upper * a_up) / a_lo
    regions = [DensityRegion(p, rho_lo) for p in lo] + [DensityRegion(p, rho_upper) for p in up]
    return BodySpec(P, regions=regions)


def _area(P):
    x, y = P[:, 0], P[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def test_report_no_conclusion():
    # wide bulb in deep water: outside both cones, and class B needs a bottom
    P = np.array([[-1, 0.3], [-1, 0], [-2.5, -1], [0, -1.5], [2.5, -1], [1, 0], [1, 0.3]], dtype=float)
    body = ballasted(P, -1.0)
    r = nontrapping_report(body, FluidConfig())
    assert r.equilibrium.ok
    assert r.simon_ursell.status == "fails"
    assert r.class_b is None
    assert r.applicable_proposition == "none"
    assert r.claim == "no conclusion"


def test_report_two_hulls():
    P = np.array([[-3, -1], [-1, -1], [-1, 0.2], [1, 0.2], [1, -1], [3, -1], [3, 1], [-3, 1]], dtype=float)
    body = BodySpec.uniform(P, 1000.0 * 4.0 / 10.4)
    r = nontrapping_report(body, FluidConfig())
    assert r.applicable_proposition == "none"
    assert r.john_i.status == "fails"
