import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle_values as ov
from robinspec.geometry import (
    UNBOUNDED, BallWeight, ComparisonWeight, CurvatureData, CustomWeight, DomainError,
    ModelCase, RadiusTooLarge, WarpingFunction, ball_weight, build_model_domain, cot_K,
    ds_K, first_weight_zero, is_log_concave, s_K, theta_weight,
)

curv = st.floats(-4.0, 4.0, allow_nan=False)
meanc = st.floats(-3.0, 3.0, allow_nan=False)
dims = st.integers(2, 6)


def test_s_K_examples():
    assert s_K(1.5, 0.0) == 1.5
    assert s_K(math.pi / 2, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert s_K(1.0, -1.0) == pytest.approx(ov.SINH_1, rel=1e-15)


def test_s_K_uses_sinh_for_negative_curvature():
    # the hyperbolic branch must agree with the space-form warping function
    r = np.linspace(0.0, 3.0, 31)
    np.testing.assert_allclose(s_K(r, -4.0), np.sinh(2 * r) / 2, rtol=1e-14)


@given(st.floats(0.0, 3.0), curv)
def test_s_K_solves_jacobi_equation(r, K):
    h = 1e-4
    d2 = (s_K(r + h, K) - 2 * s_K(r, K) + s_K(r - h, K)) / h ** 2 if r > h else -K * s_K(r, K)
    assert d2 == pytest.approx(-K * s_K(r, K), abs=1e-5 * (1 + abs(K) * abs(s_K(r, K))))
    assert ds_K(0.0, K) == 1.0 and s_K(0.0, K) == 0.0


def test_theta_examples():
    assert theta_weight(CurvatureData(3, 0.0, 0.0), 0.7) == 1.0
    assert theta_weight(CurvatureData(2, 0.0, 1.0), 0.25) == pytest.approx(0.75, abs=1e-15)
    assert theta_weight(CurvatureData(3, 1.0, 0.0), math.pi / 4) == pytest.approx(0.5, rel=1e-14)


def test_theta_past_first_zero_raises():
    with pytest.raises(DomainError):
        theta_weight(CurvatureData(2, 0.0, 1.0), 1.5)
    # at the zero itself the weight is clamped to 0
    assert theta_weight(CurvatureData(2, 0.0, 1.0), 1.0) == 0.0


@given(dims, curv, meanc)
def test_theta_at_origin_is_one(n, K, H):
    assert theta_weight(CurvatureData(n, K, H), 0.0) == pytest.approx(1.0, abs=1e-15)


@given(dims, st.floats(0.0, 10.0))
def test_flat_weight_is_constant(n, r):
    assert theta_weight(CurvatureData(n, 0.0, 0.0), r) == 1.0


def test_first_weight_zero_examples():
    assert first_weight_zero(CurvatureData(2, 0.0, 1.0)) == pytest.approx(1.0, abs=1e-15)
    assert first_weight_zero(CurvatureData(2, 0.0, 0.0)) == UNBOUNDED
    assert math.isinf(UNBOUNDED)
    assert first_weight_zero(CurvatureData(3, -1.0, math.sqrt(2))) == pytest.approx(
        ov.ATANH_INV_SQRT2, rel=1e-14)


@given(curv, st.floats(0.05, 3.0), st.floats(0.01, 1.0))
def test_first_weight_zero_decreases_in_H(K, H, dH):
    a = first_weight_zero(CurvatureData(2, K, H))
    b = first_weight_zero(CurvatureData(2, K, H + dH))
    assert b < a or math.isinf(a)
    if not math.isinf(b):
        assert theta_weight(CurvatureData(2, K, H + dH), b) == pytest.approx(0.0, abs=1e-12)


@given(curv, meanc)
def test_weight_positive_before_first_zero(K, H):
    cd = CurvatureData(3, K, H)
    z = first_weight_zero(cd)
    top = min(z, 5.0)
    r = np.linspace(0.0, top, 200)[:-1]
    assert np.all(theta_weight(cd, r) > 0)


def test_curvature_data_validation():
    with pytest.raises(ValueError):
        CurvatureData(1, 0.0, 0.0)
    with pytest.raises(ValueError):
        CurvatureData(2, math.nan, 0.0)


def test_ball_weight_examples():
    hyp = WarpingFunction.hyperbolic()
    assert ball_weight(hyp, 2, 2.0, 0.0) == pytest.approx(ov.SINH_2, rel=1e-15)
    assert ball_weight(WarpingFunction.euclidean(), 3, 1.0, 1.0) == 0.0
    assert ball_weight(hyp, 2, 2.0, 2.0) == 0.0
    assert BallWeight(2.0, warping=hyp, n=2).right_singular


def test_log_concavity_examples():
    grid = [0.5, 1.0, 2.0]
    assert is_log_concave(WarpingFunction.hyperbolic(), grid)
    assert is_log_concave(WarpingFunction.euclidean(), grid)
    cosh = WarpingFunction(np.cosh, np.sinh, require_pole=False)
    assert not is_log_concave(cosh, grid)


def test_warping_pole_required():
    with pytest.raises(ValueError):
        WarpingFunction(np.cosh, np.sinh)


@pytest.mark.parametrize("K", [1.0, 0.0, -1.0, -0.25])
@pytest.mark.parametrize("Rt", [0.4, 1.0])
def test_ball_weight_is_comparison_weight_up_to_constant(K, Rt):
    wf = WarpingFunction.space_form(K)
    cd = CurvatureData(3, K, float(cot_K(Rt, K)))
    r = np.linspace(0.0, Rt, 50)[:-1]
    ratio = np.array([ball_weight(wf, 3, Rt, x) for x in r]) / theta_weight(cd, r)
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)
    assert ratio[0] == pytest.approx(float(wf.phi(Rt)) ** 2, rel=1e-12)


CASES = [(1.0, 0.5), (1.0, -0.5), (1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-1.0, 2.0), (-1.0, -2.0),
         (0.0, 0.0), (-1.0, 0.5), (-1.0, -0.3), (-1.0, 0.0), (-1.0, 1.0), (-1.0, -1.0), (-4.0, 2.0)]


@pytest.mark.parametrize("K,H", CASES)
@pytest.mark.parametrize("n", [2, 3, 5])
def test_model_domain_weight_matches_theta(K, H, n):
    cd = CurvatureData(n, K, H)
    R = min(1.0, 0.9 * first_weight_zero(cd))
    md = build_model_domain(cd, R)
    r = np.linspace(0.0, R, 1000)
    np.testing.assert_allclose(md.weight(r), theta_weight(cd, r), rtol=1e-12, atol=1e-14)
    assert md.boundary_mean_curvature() == pytest.approx(H, abs=1e-12)


def test_model_domain_case_selection():
    k = build_model_domain
    assert k(CurvatureData(2, 0.0, 0.0), 1.0).case is ModelCase.FLAT_CYLINDER
    assert k(CurvatureData(2, -1.0, 0.5), 1.0).case is ModelCase.HYPERBOLIC_CYLINDER
    assert k(CurvatureData(2, -1.0, 1.0), 1.0).case is ModelCase.LIMIT_CASE
    assert k(CurvatureData(2, -1.0, -1.0), 1.0).case is ModelCase.LIMIT_CASE
    assert k(CurvatureData(2, -1.0, 1.5), 0.5).case is ModelCase.ANNULUS_IN_SPACE_FORM
    assert k(CurvatureData(2, 0.0, -1.0), 1.0).case is ModelCase.ANNULUS_IN_SPACE_FORM
    cap = k(CurvatureData(2, 1.0, 0.0), math.pi / 2)
    assert cap.case is ModelCase.ANNULUS_IN_SPACE_FORM
    assert cap.A == pytest.approx(math.pi / 2)


def test_hyperbolic_cylinder_example():
    md = build_model_domain(CurvatureData(2, -1.0, 0.5), 1.0)
    A = -math.atanh(0.5)
    assert md.A == pytest.approx(A, rel=1e-14)
    r = np.linspace(0.0, 1.0, 100)
    np.testing.assert_allclose(md.weight(r), np.cosh(A + r) / np.cosh(A), rtol=1e-13)


def test_radius_too_large():
    with pytest.raises(RadiusTooLarge):
        build_model_domain(CurvatureData(2, 0.0, 1.0), 1.5)


def test_weight_flags():
    w = ComparisonWeight(1.0, curvature=CurvatureData(2, 0.0, 1.0))
    assert w.right_singular and not w.left_singular
    assert w.singular_order("right") == pytest.approx(1.0, rel=1e-6)
    w = ComparisonWeight(0.5, curvature=CurvatureData(2, 0.0, 1.0))
    assert not w.right_singular


def test_custom_weight_samples_and_derivative():
    r = np.linspace(0.0, 1.0, 201)
    w = CustomWeight(1.0, samples=(r, np.exp(-r)))
    assert w.log_derivative(0.5) == pytest.approx(-1.0, abs=1e-6)
    g = CustomWeight(1.0, func=lambda x: np.exp(-2 * np.asarray(x)))
    assert g.log_derivative(0.3) == pytest.approx(-2.0, abs=1e-6)
    with pytest.raises(ValueError):
        CustomWeight(1.0)
