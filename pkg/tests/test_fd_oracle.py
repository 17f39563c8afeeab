import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle_values as ov
from robinspec.closed_form import flat_robin_eigenvalue
from robinspec.fd_oracle import (
    GridTooCoarse, assemble, cylinder2d_first_eigenvalue, fd_first_eigenvalue, richardson_slope,
)
from robinspec.geometry import BallWeight, ComparisonWeight, CurvatureData, DriftWeight, WarpingFunction
from robinspec.sl_solver import BoundaryCondition, RobinProblem


def flat(R, sigma):
    return RobinProblem.standard(ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0)), sigma)


def test_flat_example():
    e = fd_first_eigenvalue(flat(1.0, 1.0), 4096)
    assert e.lam == pytest.approx(ov.FLAT_R1_S1, abs=1e-6)
    assert e.solver_tag == "fd_oracle"
    assert 0 < e.err_estimate < 1e-7
    assert fd_first_eigenvalue(flat(1.0, 0.0)).lam == 0.0


def test_richardson_slope_is_two():
    p = flat(1.0, 1.0)
    vals = [fd_first_eigenvalue(p, n).lam for n in (128, 256, 512)]
    assert richardson_slope(vals) == pytest.approx(2.0, abs=0.05)
    assert fd_first_eigenvalue(p, 512, richardson=True).lam == pytest.approx(ov.FLAT_R1_S1, abs=1e-10)


def test_singular_ball_matches_dirichlet_disc_limit():
    e = fd_first_eigenvalue(RobinProblem.standard(BallWeight(1.0, warping=WarpingFunction.euclidean(), n=2),
                                                  1e8), 2048, richardson=True)
    assert e.lam == pytest.approx(ov.J01_SQUARED, abs=1e-5)


@given(st.integers(0, 2 ** 31), st.sampled_from([1.0, -1.0, 4.0]))
def test_discrete_minmax(seed, sigma):
    # the computed eigenvalue minimises the discrete quotient
    p = RobinProblem.standard(DriftWeight(1.5, A=0.7), sigma)
    op = assemble(p, 64)
    lam = fd_first_eigenvalue(p, 64).lam
    v = np.random.default_rng(seed).normal(size=len(op.diag))
    assert op.quotient(v) >= lam - 1e-10 * max(1.0, abs(lam))
    assert op.count_below(lam - 1e-8) == 0
    assert op.count_below(lam + 1e-8) == 1


@pytest.mark.parametrize("sigma", [2.0, -2.0, 0.5])
def test_eigenvector_positive(sigma):
    e = fd_first_eigenvalue(RobinProblem.standard(BallWeight(2.0, warping=WarpingFunction.hyperbolic(), n=3),
                                                  sigma), 256)
    assert np.all(e.u > 0)
    assert np.max(e.u) == 1.0


def test_dirichlet_end_eliminated():
    w = ComparisonWeight(1.0, curvature=CurvatureData(2, 0.0, 0.0))
    p = RobinProblem(1.0, w, BoundaryCondition.dirichlet(), BoundaryCondition.neumann())
    e = fd_first_eigenvalue(p, 256, richardson=True)
    assert e.lam == pytest.approx(math.pi ** 2 / 4, abs=1e-8)
    assert e.u[0] == 0.0 and len(e.nodes) == 257


@pytest.mark.parametrize("sigma", [1.0, -1.0])
def test_cylinder_matches_interval(sigma):
    one_d = flat_robin_eigenvalue(0.5, sigma)
    vals = [cylinder2d_first_eigenvalue(0.5, 1.0, sigma, nx, 16) for nx in (64, 128, 256)]
    assert vals[-1] == pytest.approx(one_d, rel=1e-4)
    assert richardson_slope(vals) == pytest.approx(2.0, abs=0.05)


@given(st.floats(0.3, 4.0))
def test_cylinder_independent_of_circumference(c):
    a = cylinder2d_first_eigenvalue(0.5, c, 1.0, 32, 16)
    b = cylinder2d_first_eigenvalue(0.5, 1.0, 1.0, 32, 16)
    assert a == pytest.approx(b, rel=1e-10)


def test_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        fd_first_eigenvalue(flat(1.0, 1.0), 8)
    with pytest.raises(GridTooCoarse):
        cylinder2d_first_eigenvalue(0.5, 1.0, 1.0, 8, 64)
    with pytest.raises(ValueError):
        cylinder2d_first_eigenvalue(-0.5, 1.0, 1.0, 64, 64)
    assert cylinder2d_first_eigenvalue(0.5, 1.0, 0.0, 64, 64) == 0.0
