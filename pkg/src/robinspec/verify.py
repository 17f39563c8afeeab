"""Certification harness: run the solvers and compare against explicit bounds.

Every check returns :class:`BoundReport` records.  A report passes iff
``margin >= -tolerance``; margins are oriented so that a positive value means
the statement holds with room to spare.  A negative tolerance therefore
demands a strictly positive margin.  Each report carries the full argument
record of the check that produced it, so :func:`reproduce` can rerun it.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import closed_form as cf
from .fd_oracle import cylinder2d_first_eigenvalue, fd_first_eigenvalue, richardson_slope
from .geometry import (
    ComparisonWeight, CurvatureData, DriftWeight, WarpingFunction, BallWeight,
    build_model_domain, cot_K, first_weight_zero, is_log_concave,
)
from .sl_solver import RobinProblem, ball_first_eigenvalue, eigenfunction_log_derivative, first_eigenvalue

DEFAULT_TOL = 1e-8
GRID_TOL = 1e-3
STRICT = -1e-10  # required positive margin for strict inequalities


class LogConcavityViolated(ValueError):
    pass


class TheoremId(str, enum.Enum):
    COMPARISON = "comparison"
    CYLINDER_SHARPNESS = "cylinder_sharpness"
    FLAT_EXPLICIT_BOUND = "flat_explicit_bound"
    BALL_EQUALITY = "ball_equality"
    DOMAIN_MONOTONICITY = "domain_monotonicity"
    MCKEAN = "mckean"
    TWO_TERM_ASYMPTOTICS = "two_term_asymptotics"
    EIGENFUNCTION_SHAPE = "eigenfunction_shape"
    DRIFT_BRACKETS = "drift_brackets"
    MODEL_DOMAIN = "model_domain"
    DIRICHLET_LIMIT = "dirichlet_limit"
    NEGATIVE_SIGMA_TREND = "negative_sigma_trend"


@dataclass(frozen=True)
class BoundReport:
    theorem_id: TheoremId
    params: dict
    computed: float
    bound: float
    margin: float
    passed: bool
    tolerance: float
    relation: str
    solver_tags: tuple = ()
    discrepancy: Optional[float] = None
    informational: bool = False

    def to_dict(self):
        d = asdict(self)
        d["theorem_id"] = self.theorem_id.value
        d["solver_tags"] = list(self.solver_tags)
        return d

    def sort_key(self):
        return self.theorem_id.value, json.dumps(self.params, sort_keys=True)


def _report(tid, params, computed, bound, margin, tolerance, relation, tags=("shooting",),
            discrepancy=None, informational=False):
    margin = float(margin)
    return BoundReport(tid, dict(params), float(computed), float(bound), margin,
                       bool(margin >= -tolerance), float(tolerance), relation, tuple(tags),
                       None if discrepancy is None else float(discrepancy), informational)


def _warping(name, kappa: float = 1.0) -> WarpingFunction:
    if isinstance(name, WarpingFunction):
        return name
    if name == "euclidean":
        return WarpingFunction.euclidean()
    if name == "hyperbolic":
        return WarpingFunction.hyperbolic(kappa)
    if name == "spherical":
        return WarpingFunction.spherical(kappa)
    raise ValueError(f"unknown warping {name!r}")


def _ball(name, n, R, sigma, kappa=1.0):
    return ball_first_eigenvalue(_warping(name, kappa), n, R, sigma).lam


def _comparison(cd, R, sigma):
    return first_eigenvalue(RobinProblem.standard(ComparisonWeight(R, curvature=cd), sigma)).lam


def _oriented(sigma, a, b):
    """``a - b`` for ``sigma > 0``, ``b - a`` for ``sigma < 0``."""
    return a - b if sigma >= 0 else b - a


# -- comparison and equality ------------------------------------------------------------

def check_comparison(cd: CurvatureData, R: float, sigma: float, body: str = "model",
                     tolerance: float = DEFAULT_TOL) -> BoundReport:
    """Compare a test body against the one-dimensional comparison eigenvalue.

    ``body="model"`` uses the model domain built from ``cd`` (equality
    expected).  ``body="ball"`` uses the geodesic ball of radius ``R`` in the
    space form of curvature ``cd.K``; its boundary mean curvature must be at
    least ``cd.H``.  Equality is expected when it equals ``cd.H``, otherwise a
    strict gap in the direction fixed by the sign of ``sigma``.
    """
    params = dict(check="comparison", n=cd.n, K=cd.K, H=cd.H, R=R, sigma=sigma, body=body)
    lam_cmp = _comparison(cd, R, sigma)
    if body == "model":
        md = build_model_domain(cd, R)
        lam = first_eigenvalue(RobinProblem.standard(md.as_weight(), sigma)).lam
        return _report(TheoremId.COMPARISON, params, lam, lam_cmp, -abs(lam - lam_cmp),
                       tolerance, "==")
    if body != "ball":
        raise ValueError(f"unknown body {body!r}")
    H_ball = float(cot_K(R, cd.K))
    if cd.H > H_ball + 1e-12:
        raise ValueError("curvature data does not bound the ball: H exceeds its mean curvature")
    lam = ball_first_eigenvalue(WarpingFunction.space_form(cd.K), cd.n, R, sigma).lam
    if abs(H_ball - cd.H) <= 1e-12:
        return _report(TheoremId.COMPARISON, params, lam, lam_cmp, -abs(lam - lam_cmp),
                       tolerance, "==")
    rel = ">" if sigma > 0 else "<"
    return _report(TheoremId.COMPARISON, params, lam, lam_cmp, _oriented(sigma, lam, lam_cmp),
                   STRICT, rel)


def check_ball_equality(n: int, K: float, R: float, sigma: float,
                        tolerance: float = DEFAULT_TOL) -> BoundReport:
    """Comparison eigenvalue with the ball's own curvature data equals the ball eigenvalue."""
    params = dict(check="ball_equality", n=n, K=K, R=R, sigma=sigma)
    cd = CurvatureData(n, K, float(cot_K(R, K)))
    lam_cmp = _comparison(cd, R, sigma)
    lam = ball_first_eigenvalue(WarpingFunction.space_form(K), n, R, sigma).lam
    return _report(TheoremId.BALL_EQUALITY, params, lam, lam_cmp, -abs(lam - lam_cmp),
                   tolerance, "==")


def check_model_domain(cd: CurvatureData, R: float, sigma: float, grid_n: int = 1024,
                       tolerance: float = 1e-6) -> BoundReport:
    """Model-domain eigenvalue by both solvers against the comparison eigenvalue."""
    params = dict(check="model_domain", n=cd.n, K=cd.K, H=cd.H, R=R, sigma=sigma, grid_n=grid_n)
    md = build_model_domain(cd, R)
    prob = RobinProblem.standard(md.as_weight(), sigma)
    lam_s = first_eigenvalue(prob).lam
    lam_f = fd_first_eigenvalue(prob, grid_n, richardson=True).lam
    lam_cmp = _comparison(cd, R, sigma)
    margin = -max(abs(lam_s - lam_cmp), abs(lam_f - lam_cmp))
    return _report(TheoremId.MODEL_DOMAIN, params, lam_s, lam_cmp, margin, tolerance, "==",
                   ("shooting", "fd_oracle"), abs(lam_s - lam_f))


# -- balls ---------------------------------------------------------------------------

def check_ball_monotonicity(warping, n: int, radii: Sequence[float], sigma: float,
                            kappa: float = 1.0, tolerance: float = STRICT) -> list:
    """Nested balls: eigenvalues decrease with the radius for ``sigma > 0``, increase for ``sigma < 0``.

    ``warping`` is a name or a :class:`WarpingFunction`.  One report per
    consecutive pair of radii.  Zero ``sigma`` is checked
    against a zero margin with ``DEFAULT_TOL``.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be ascending")
    w = _warping(warping, kappa)
    if isinstance(warping, WarpingFunction):
        warping = warping.kind or "custom"
    if not is_log_concave(w, np.linspace(0.0, max(radii), 2001)[1:]):
        raise LogConcavityViolated(f"{warping} warping is not log-concave on (0, {max(radii)})")
    lams = [ball_first_eigenvalue(w, n, r, sigma).lam for r in radii]
    tol = tolerance if sigma != 0 else DEFAULT_TOL
    out = []
    for (r1, l1), (r2, l2) in zip(zip(radii, lams), zip(radii[1:], lams[1:])):
        params = dict(check="ball_monotonicity", warping=warping, n=n, radii=radii, sigma=sigma,
                      kappa=kappa, pair=[r1, r2])
        rel = ">" if sigma > 0 else ("<" if sigma < 0 else "==")
        margin = _oriented(sigma, l1, l2) if sigma != 0 else -abs(l1 - l2)
        out.append(_report(TheoremId.DOMAIN_MONOTONICITY, params, l1, l2, margin, tol, rel))
    return out


def check_mckean(n: int, sigma: float, radii: Sequence[float], kappa: float = 1.0,
                 tolerance: float = DEFAULT_TOL) -> list:
    """Hyperbolic balls against the McKean-type bound, plus the approach to the limit.

    For ``sigma > (n-1) kappa / 2`` two extra reports check that the gap to
    ``(n-1)^2 kappa^2 / 4`` shrinks along ``radii`` and that the final gap is
    below ``pi^2/R^2 + C/R^3`` (the two-term upper envelope, ``kappa = 1``).
    """
    if sigma == 0 or not kappa > 0:
        raise ValueError("need sigma != 0 and kappa > 0")
    radii = [float(r) for r in radii]
    bound = cf.mckean_bound(n, sigma, kappa)
    base = dict(check="mckean", n=n, sigma=sigma, radii=radii, kappa=kappa)
    out, lams = [], []
    for R in radii:
        lam = _ball("hyperbolic", n, R, sigma, kappa)
        lams.append(lam)
        margin = lam - bound.value if bound.kind == "lower" else bound.value - lam
        rel = ">=" if bound.kind == "lower" else "<="
        out.append(_report(TheoremId.MCKEAN, dict(base, R=R), lam, bound.value, margin, tolerance, rel))
    half = 0.5 * (n - 1) * kappa
    if sigma > half and len(radii) > 1:
        gaps = [lam - half * half for lam in lams]
        steps = [a - b for a, b in zip(gaps, gaps[1:])]
        out.append(_report(TheoremId.MCKEAN, dict(base, part="decreasing"), gaps[-1], gaps[0],
                           min(steps), STRICT, "decreasing"))
        if kappa == 1.0:
            R = radii[-1]
            cap = math.pi ** 2 / R ** 2 + cf.envelope_C(n) / R ** 3
            out.append(_report(TheoremId.MCKEAN, dict(base, part="final_gap"), gaps[-1], cap,
                               cap - gaps[-1], tolerance, "<="))
    return out


def check_asymptotics(n: int, sigma: float, radii: Sequence[float],
                      tolerance: float = DEFAULT_TOL) -> list:
    """Two-term envelope for hyperbolic balls.

    Radii below ``R0`` get only the upper envelope, which holds for every
    radius.  From ``R0`` on, the lower envelope is certified with the
    corrected constant ``c0_certified``; the originally stated ``c0`` is
    reported alongside as informational.  The largest radius also gets the
    rate check ``|R^2 (lam - A^2) - pi^2| <= (C + c0)/R``.
    """
    env = cf.asymptotic_envelope(n, sigma)
    A2 = env.A ** 2
    radii = [float(r) for r in radii]
    base = dict(check="asymptotics", n=n, sigma=sigma, radii=radii)
    out = []
    lam = None
    for R in radii:
        lam = _ball("hyperbolic", n, R, sigma)
        up = env.upper(R)
        out.append(_report(TheoremId.TWO_TERM_ASYMPTOTICS, dict(base, R=R, side="upper"),
                           lam, up, up - lam, tolerance, "<="))
        if R >= env.R0:
            lo = env.lower(R, certified=True)
            out.append(_report(TheoremId.TWO_TERM_ASYMPTOTICS, dict(base, R=R, side="lower"),
                               lam, lo, lam - lo, tolerance, ">="))
            lo = env.lower(R)
            out.append(_report(TheoremId.TWO_TERM_ASYMPTOTICS, dict(base, R=R, side="lower_stated"),
                               lam, lo, lam - lo, tolerance, ">=", informational=True))
    R = radii[-1]
    dev = abs(R * R * (lam - A2) - math.pi ** 2)
    cap = (env.C + env.c0) / R
    out.append(_report(TheoremId.TWO_TERM_ASYMPTOTICS, dict(base, R=R, side="rate"),
                       dev, cap, cap - dev, tolerance, "<="))
    return out


# -- eigenfunction shape ----------------------------------------------------------------

def _weight_from(spec: dict):
    kind = spec["weight"]
    R = spec["R"]
    if kind == "flat":
        return ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0))
    if kind == "comparison":
        return ComparisonWeight(R, curvature=CurvatureData(spec["n"], spec["K"], spec["H"]))
    if kind == "ball":
        return BallWeight(R, warping=_warping(spec["warping"], spec.get("kappa", 1.0)), n=spec["n"])
    if kind == "drift":
        return DriftWeight(R, A=spec["A"])
    raise ValueError(f"unknown weight {kind!r}")


def _log_concave_weight(w, R):
    r = np.linspace(0.0, R, 2001)[1:-1]
    d = np.asarray(w.log_derivative(r), dtype=float)
    return bool(np.all(np.diff(d) <= 1e-12 * (1 + np.abs(d[1:]))))


def check_eigenfunction_shape(spec: dict, sigma: float, tolerance: float = DEFAULT_TOL) -> list:
    """Derivative sign and log-derivative pinch for the first eigenfunction.

    ``spec`` describes the weight: ``{"weight": "flat"|"comparison"|"ball"|"drift", "R": ...}``
    plus ``n, K, H``, ``warping, n`` or ``A`` as needed.  For ``sigma > 0``
    the eigenfunction increases and ``0 <= u'/u <= sigma``; for ``sigma < 0``
    it decreases and ``sigma <= u'/u <= 0``.  The pinch is asserted only for
    log-concave weights.
    """
    spec = dict(spec)
    w = _weight_from(spec)
    e = first_eigenvalue(RobinProblem.standard(w, sigma))
    s = 1.0 if sigma >= 0 else -1.0
    interior = slice(1, -1)
    base = dict(check="eigenfunction_shape", spec=spec, sigma=sigma)
    out = [_report(TheoremId.EIGENFUNCTION_SHAPE, dict(base, part="derivative_sign"),
                   float(np.min(s * e.du[interior])), 0.0, float(np.min(s * e.du[interior])),
                   tolerance, "sign")]
    if _log_concave_weight(w, spec["R"]):
        q = eigenfunction_log_derivative(e)
        lo, hi = (0.0, sigma) if sigma >= 0 else (sigma, 0.0)
        margin = float(min(np.min(q - lo), np.min(hi - q)))
        out.append(_report(TheoremId.EIGENFUNCTION_SHAPE, dict(base, part="log_derivative_pinch"),
                           float(np.max(np.abs(q))), abs(sigma), margin, tolerance, "within"))
    return out


# -- flat interval ---------------------------------------------------------------------

def check_flat_bounds(R: float, sigma: float, tolerance: float = STRICT) -> list:
    """Flat interval against the explicit bounds.

    ``sigma > 0``: the eigenvalue beats the explicit trigonometric lower bound,
    which in turn beats the Hardy-type bound.  ``sigma < 0``: the eigenvalue
    lies strictly below ``-sigma^2``.
    """
    base = dict(check="flat_bounds", R=R, sigma=sigma)
    lam = first_eigenvalue(RobinProblem.standard(
        ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0)), sigma)).lam
    if sigma > 0:
        cor = cf.corollary_lower_bound(R, sigma)
        kov, _ = cf.kovarik_bounds(R, sigma)
        return [
            _report(TheoremId.FLAT_EXPLICIT_BOUND, dict(base, part="explicit"), lam, cor,
                    lam - cor, tolerance, ">"),
            _report(TheoremId.FLAT_EXPLICIT_BOUND, dict(base, part="improves_hardy"), cor, kov,
                    cor - kov, tolerance, ">", tags=("closed_form",)),
        ]
    return [_report(TheoremId.FLAT_EXPLICIT_BOUND, dict(base, part="negative_ceiling"), lam,
                    -sigma * sigma, -sigma * sigma - lam, tolerance, "<")]


def check_dirichlet_limit(R: float = 1.0, sigmas: Sequence[float] = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6),
                          final_gap: float = 1e-5) -> list:
    """Flat eigenvalues increase toward ``pi^2/(4R^2)`` with gap ``<= pi^2/(2 R^3 sigma)``."""
    sigmas = [float(s) for s in sigmas]
    target = math.pi ** 2 / (4 * R * R)
    base = dict(check="dirichlet_limit", R=R, sigmas=sigmas, final_gap=final_gap)
    w = ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0))
    lams = [first_eigenvalue(RobinProblem.standard(w, s)).lam for s in sigmas]
    out = [_report(TheoremId.DIRICHLET_LIMIT, dict(base, part="increasing"), lams[-1], lams[0],
                   min(b - a for a, b in zip(lams, lams[1:])), STRICT, "increasing")]
    for s, lam in zip(sigmas, lams):
        cap = math.pi ** 2 / (2 * R ** 3 * s)
        gap = target - lam
        out.append(_report(TheoremId.DIRICHLET_LIMIT, dict(base, part="rate", sigma=s), gap, cap,
                           min(cap - gap, gap), 0.0, "(0, cap]"))
    gap = target - lams[-1]
    out.append(_report(TheoremId.DIRICHLET_LIMIT, dict(base, part="final"), gap, final_gap,
                       final_gap - gap, 0.0, "<="))
    return out


def check_cylinder(sigma: float = 1.0, circumference: float = 1.0,
                   grids: Sequence[Sequence[int]] = ((64, 16), (128, 32), (256, 64)),
                   rel_tolerance: float = GRID_TOL) -> list:
    """2-D flat cylinder of length 1 against the 1-D interval, with the refinement order."""
    grids = [list(g) for g in grids]
    base = dict(check="cylinder", sigma=sigma, circumference=circumference, grids=grids)
    ref = cf.flat_robin_eigenvalue(0.5, sigma)
    vals = [cylinder2d_first_eigenvalue(0.5, circumference, sigma, nx, ny) for nx, ny in grids]
    rel = abs(vals[-1] - ref) / abs(ref)
    out = [_report(TheoremId.CYLINDER_SHARPNESS, dict(base, part="agreement"), vals[-1], ref,
                   rel_tolerance - rel, 0.0, "rel<=", ("fd_oracle", "closed_form"),
                   abs(vals[-1] - ref))]
    if len(vals) >= 3:
        slope = math.log2(abs(vals[-3] - ref) / abs(vals[-2] - ref))
        slope2 = math.log2(abs(vals[-2] - ref) / abs(vals[-1] - ref))
        order = min(slope, slope2), max(slope, slope2)
        margin = min(order[0] - 1.7, 2.3 - order[1])
        out.append(_report(TheoremId.CYLINDER_SHARPNESS, dict(base, part="order"), slope2, 2.0,
                           margin, 0.0, "in [1.7, 2.3]", ("fd_oracle",)))
        out.append(_report(TheoremId.CYLINDER_SHARPNESS, dict(base, part="richardson"),
                           richardson_slope(vals), 2.0,
                           min(richardson_slope(vals) - 1.7, 2.3 - richardson_slope(vals)),
                           0.0, "in [1.7, 2.3]", ("fd_oracle",)))
    return out


# -- constant drift ----------------------------------------------------------------

def check_drift_brackets(A: float, sigma: float, R: float, tolerance: float = 1e-10) -> list:
    """Floors, ceiling and characteristic-equation residual for the constant-drift problem."""
    base = dict(check="drift_brackets", A=A, sigma=sigma, R=R)
    lam = cf.drift_eigenvalue(cf.DriftProblem(A, R, sigma))
    shoot = first_eigenvalue(RobinProblem.standard(DriftWeight(R, A=A), sigma)).lam
    tags = ("closed_form", "shooting")
    out = []
    if sigma > 0:
        floor = cf.drift_floor(A, sigma)
        out.append(_report(TheoremId.DRIFT_BRACKETS, dict(base, part="floor"), lam, floor,
                           lam - floor, 0.0, ">=", tags, abs(lam - shoot)))
    elif sigma < 0:
        ceil = cf.drift_ceiling(A, sigma)
        out.append(_report(TheoremId.DRIFT_BRACKETS, dict(base, part="ceiling"), lam, ceil,
                           ceil - lam, 0.0, "<=", tags, abs(lam - shoot)))
    if lam <= A * A:
        res = abs(cf.drift_residual(cf.DriftProblem(A, R, sigma), lam))
        out.append(_report(TheoremId.DRIFT_BRACKETS, dict(base, part="residual"), res, 0.0,
                           -res, tolerance, "==", ("closed_form",)))
    out.append(_report(TheoremId.DRIFT_BRACKETS, dict(base, part="cross_solver"), shoot, lam,
                       -abs(shoot - lam), 1e-8, "==", tags, abs(lam - shoot)))
    return out


# -- negative sigma trend -------------------------------------------------------------

def check_negative_sigma_trend(warping: Optional[str], n: int, R: float,
                               sigmas: Sequence[float] = (-5.0, -10.0, -20.0, -40.0)) -> list:
    """Informational trend of ``(lam + sigma^2)/sigma`` toward ``(n-1) H_max``.

    ``H_max`` is the boundary mean curvature ``Phi'(R)/Phi(R)`` of the ball.
    With ``warping=None`` the flat interval is used, where the limit is 0
    and ``lam < -sigma^2`` must hold.  The slack halves whenever ``|sigma|``
    doubles, starting from twice the first deviation.
    """
    sigmas = [float(s) for s in sigmas]
    if any(s >= 0 for s in sigmas) or any(b >= a for a, b in zip(sigmas, sigmas[1:])):
        raise ValueError("sigmas must be negative and descending")
    base = dict(check="negative_sigma_trend", warping=warping, n=n, R=R, sigmas=sigmas)
    if warping is None:
        w = ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0))
        lams = [first_eigenvalue(RobinProblem.standard(w, s)).lam for s in sigmas]
        limit = 0.0
    else:
        wf = _warping(warping)
        lams = [ball_first_eigenvalue(wf, n, R, s).lam for s in sigmas]
        limit = (n - 1) * float(wf.mean_curvature(R))
    devs = [abs((lam + s * s) / s - limit) for lam, s in zip(lams, sigmas)]
    slack0 = 2 * devs[0] + 1e-12
    out = []
    for s, lam, dev in zip(sigmas, lams, devs):
        slack = slack0 * sigmas[0] / s
        out.append(_report(TheoremId.NEGATIVE_SIGMA_TREND, dict(base, sigma=s),
                           (lam + s * s) / s, limit, slack - dev, 0.0, "->",
                           informational=True))
    if warping is None:
        for s, lam in zip(sigmas, lams):
            # the true gap is about 4 s^2 exp(-2|s|R), below rounding once |s| R >~ 15
            out.append(_report(TheoremId.NEGATIVE_SIGMA_TREND, dict(base, sigma=s, part="ceiling"),
                               lam, -s * s, -s * s - lam, 1e-12 * s * s, "<="))
    return out


# -- reproduction and suites ---------------------------------------------------------------

def reproduce(report: BoundReport) -> BoundReport:
    """Rerun the check recorded in ``report.params`` and return the matching report."""
    p = dict(report.params)
    kind = p["check"]
    if kind == "comparison":
        cands = [check_comparison(CurvatureData(p["n"], p["K"], p["H"]), p["R"], p["sigma"], p["body"],
                                  tolerance=report.tolerance if report.relation == "==" else DEFAULT_TOL)]
    elif kind == "ball_equality":
        cands = [check_ball_equality(p["n"], p["K"], p["R"], p["sigma"], report.tolerance)]
    elif kind == "model_domain":
        cands = [check_model_domain(CurvatureData(p["n"], p["K"], p["H"]), p["R"], p["sigma"],
                                    p["grid_n"], report.tolerance)]
    elif kind == "ball_monotonicity":
        cands = check_ball_monotonicity(p["warping"], p["n"], p["radii"], p["sigma"], p["kappa"],
                                        report.tolerance)
    elif kind == "mckean":
        cands = check_mckean(p["n"], p["sigma"], p["radii"], p["kappa"], report.tolerance)
    elif kind == "asymptotics":
        cands = check_asymptotics(p["n"], p["sigma"], p["radii"], report.tolerance)
    elif kind == "eigenfunction_shape":
        cands = check_eigenfunction_shape(p["spec"], p["sigma"], report.tolerance)
    elif kind == "flat_bounds":
        cands = check_flat_bounds(p["R"], p["sigma"], report.tolerance)
    elif kind == "dirichlet_limit":
        cands = check_dirichlet_limit(p["R"], p["sigmas"], p["final_gap"])
    elif kind == "cylinder":
        cands = check_cylinder(p["sigma"], p["circumference"], p["grids"])
    elif kind == "drift_brackets":
        cands = check_drift_brackets(p["A"], p["sigma"], p["R"])
    elif kind == "negative_sigma_trend":
        cands = check_negative_sigma_trend(p["warping"], p["n"], p["R"], p["sigmas"])
    else:
        raise ValueError(f"unknown check {kind!r}")
    for c in cands:
        if c.params == report.params:
            return c
    raise LookupError("rerun produced no report with matching params")


MODEL_CASES = ((1.0, 0.5), (1.0, -0.5), (0.0, 1.0), (-1.0, 2.0),
               (0.0, 0.0), (-1.0, 0.5), (-1.0, 1.0), (-1.0, -1.0))

SHAPE_PROBLEMS = (
    ({"weight": "flat", "R": 1.0}, 2.0),
    ({"weight": "flat", "R": 1.0}, -0.5),
    ({"weight": "comparison", "R": 0.5, "n": 2, "K": 0.0, "H": 1.0}, 0.5),
    ({"weight": "comparison", "R": 0.9, "n": 3, "K": 0.0, "H": 1.0}, -2.0),
    ({"weight": "ball", "R": 1.0, "n": 2, "warping": "euclidean"}, 2.0),
    ({"weight": "ball", "R": 1.0, "n": 3, "warping": "euclidean"}, -0.5),
    ({"weight": "ball", "R": 2.0, "n": 2, "warping": "hyperbolic"}, 0.5),
    ({"weight": "ball", "R": 3.0, "n": 3, "warping": "hyperbolic"}, -2.0),
    ({"weight": "drift", "R": 1.0, "A": 1.0}, 0.5),
    ({"weight": "drift", "R": 2.0, "A": 0.5}, -2.0),
)


def suite_comparison(tol=DEFAULT_TOL):
    out = []
    for K, H in MODEL_CASES:
        cd = CurvatureData(3, K, H)
        R = min(1.0, 0.9 * first_weight_zero(cd))
        for s in (1.0, -1.0):
            out.append(check_comparison(cd, R, s, "model", tol))
    out.append(check_comparison(CurvatureData(2, 0.0, 1.0), 1.0, 1.0, "ball", tol))
    out.append(check_comparison(CurvatureData(2, 0.0, 0.5), 1.0, 1.0, "ball", tol))
    out.append(check_comparison(CurvatureData(2, 0.0, 0.5), 1.0, -1.0, "ball", tol))
    out.append(check_comparison(CurvatureData(2, -1.0, 0.0), 1.0, 1.0, "model", tol))
    for n, K in ((2, 0.0), (2, 1.0), (3, -1.0)):
        for s in (1.0, -1.0):
            out.append(check_ball_equality(n, K, 1.0, s, tol))
    return out


def suite_monotonicity(tol=DEFAULT_TOL):
    out = []
    for w in ("hyperbolic", "euclidean"):
        for n in (2, 3):
            for s in (1.0, -1.0):
                out.extend(check_ball_monotonicity(w, n, (1.0, 2.0, 4.0, 8.0), s))
    return out


def suite_mckean(tol=DEFAULT_TOL):
    out = []
    for n in (2, 3, 4):
        A = 0.5 * (n - 1)
        for s in (0.5 * A, A + 1.0, -1.0):
            out.extend(check_mckean(n, s, (2.0, 5.0, 10.0, 20.0), tolerance=tol))
    return out


def suite_asymptotics(tol=DEFAULT_TOL):
    out = []
    for n in (2, 3):
        s = 0.5 * (n - 1) + 1.0
        R0 = cf.asymptotic_envelope(n, s).R0
        out.extend(check_asymptotics(n, s, (1.0, float(math.ceil(R0)), 10.0, 20.0, 30.0), tol))
    for A in (0.5, 1.0, 2.0):
        for s in (-2.0, -0.5, 0.5, 1.0, 2.0):
            for R in (0.5, 1.0, 2.0):
                out.extend(check_drift_brackets(A, s, R))
    out.extend(check_negative_sigma_trend("euclidean", 2, 1.0))
    out.extend(check_negative_sigma_trend("hyperbolic", 2, 1.0))
    out.extend(check_negative_sigma_trend(None, 2, 1.0))
    return out


def suite_shape(tol=DEFAULT_TOL):
    out = []
    for spec, s in SHAPE_PROBLEMS:
        out.extend(check_eigenfunction_shape(spec, s, tol))
    return out


def suite_sharpness(tol=DEFAULT_TOL):
    out = []
    out.extend(check_cylinder(1.0))
    out.extend(check_cylinder(-1.0, grids=((64, 16), (128, 32))))
    for s in (0.1, 1.0, 10.0, 100.0, -1.0):
        for R in (0.1, 0.5, 1.0, 2.0, 10.0):
            out.extend(check_flat_bounds(R, s))
    out.extend(check_dirichlet_limit())
    return out


SUITES = {
    "comparison": suite_comparison,
    "monotonicity": suite_monotonicity,
    "mckean": suite_mckean,
    "asymptotics": suite_asymptotics,
    "shape": suite_shape,
    "sharpness": suite_sharpness,
}


def run_suite(name: str, tol: float = DEFAULT_TOL) -> list:
    """Run one named suite (or ``"all"``) and return its reports sorted by params."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise ValueError(f"unknown suite {nm!r}")
        out.extend(SUITES[nm](tol))
    return sorted(out, key=BoundReport.sort_key)


def failures(reports) -> list:
    """Reports that failed and are not informational."""
    return [r for r in reports if not r.passed and not r.informational]
