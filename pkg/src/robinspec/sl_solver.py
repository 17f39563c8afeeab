"""First eigenpair of weighted Sturm-Liouville problems by shooting.

The problem on ``[0, R]`` is ``u'' + (theta'/theta) u' + lam u = 0`` with a
boundary condition at each end.  ``Robin(sigma)`` always means
``du/dN = sigma u`` with ``N`` the inner normal, so ``u'(0) = sigma u(0)`` on
the left and ``u'(R) = -sigma u(R)`` on the right.

Eigenvalues are located by bisection on a Pruefer-type predicate: a shot
from the start end with eigenvalue parameter ``lam`` lies above the first
eigenvalue iff the solution has changed sign or its phase at the far end has
passed the target boundary condition.  The phase is monotone in ``lam``, so the
predicate is monotone and bisection cannot land on a higher eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from . import _backend
from .closed_form import BracketFailure, crude_bracket
from .geometry import BallWeight, WarpingFunction, WeightSpec

__all__ = [
    "BoundaryCondition", "RobinProblem", "Eigenpair", "NoConvergence", "BracketFailure",
    "first_eigenvalue", "ball_first_eigenvalue", "eigenfunction_log_derivative",
    "rayleigh_quotient", "DEFAULT_RTOL", "DEFAULT_ATOL",
]

DEFAULT_RTOL = 1e-11
DEFAULT_ATOL = 1e-13
SERIES_OFFSET = 1e-6
MAX_EXPANSIONS = 200


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class BoundaryCondition:
    """One of ``robin`` (with ``sigma``), ``neumann``, ``singular`` or ``dirichlet``.

    ``Robin(0)`` is normalised to ``neumann``.  ``singular`` marks an end where
    the weight vanishes and boundedness replaces a flux condition.
    """

    kind: str
    sigma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("robin", "neumann", "singular", "dirichlet"):
            raise ValueError(f"unknown boundary condition {self.kind!r}")
        if self.kind == "robin":
            if not math.isfinite(self.sigma):
                raise ValueError("sigma must be finite")
            if self.sigma == 0.0:
                object.__setattr__(self, "kind", "neumann")
        if self.kind != "robin":
            object.__setattr__(self, "sigma", 0.0)
        object.__setattr__(self, "sigma", float(self.sigma))

    @classmethod
    def robin(cls, sigma):
        return cls("robin", sigma)

    @classmethod
    def neumann(cls):
        return cls("neumann")

    @classmethod
    def singular(cls):
        return cls("singular")

    @classmethod
    def dirichlet(cls):
        return cls("dirichlet")

    @property
    def is_flux(self):
        return self.kind in ("robin", "neumann")


@dataclass(frozen=True)
class RobinProblem:
    """Weighted problem on ``[0, R]``; ``R`` must equal ``weight.domain_length``."""

    R: float
    weight: WeightSpec
    left_bc: BoundaryCondition
    right_bc: BoundaryCondition

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("R must be positive")
        if abs(self.R - self.weight.domain_length) > 1e-14 * self.R:
            raise ValueError("R does not match the weight's domain length")
        lb, rb = self.left_bc, self.right_bc
        if lb.kind == "singular" and rb.kind == "singular":
            raise ValueError("at most one singular endpoint is supported")
        for bc, sing, side in ((lb, self.weight.left_singular, "left"),
                               (rb, self.weight.right_singular, "right")):
            if bc.kind == "singular" and not sing:
                raise ValueError(f"singular condition at the {side} end, but the weight does not vanish there")
            if sing and bc.kind == "robin":
                raise ValueError(f"Robin condition at the {side} end where the weight vanishes")
        if self.weight.left_singular and self.weight.right_singular:
            raise ValueError("weight vanishes at both ends")

    @classmethod
    def standard(cls, weight: WeightSpec, sigma: float):
        """Robin at ``r = 0`` and Neumann (or the regular-singular condition) at ``r = R``."""
        right = BoundaryCondition.singular() if weight.right_singular else BoundaryCondition.neumann()
        return cls(weight.domain_length, weight, BoundaryCondition.robin(sigma), right)

    def _effective(self, bc, singular):
        return BoundaryCondition.singular() if singular and bc.kind == "neumann" else bc

    @property
    def left(self):
        return self._effective(self.left_bc, self.weight.left_singular)

    @property
    def right(self):
        return self._effective(self.right_bc, self.weight.right_singular)

    @property
    def sigmas(self):
        return self.left.sigma, self.right.sigma

    def is_trivial(self):
        """True when the constant function is the first eigenfunction (eigenvalue 0)."""
        return all(bc.kind in ("neumann", "singular") for bc in (self.left, self.right))


@dataclass(frozen=True)
class Eigenpair:
    """First eigenvalue with eigenfunction samples normalised to ``max|u| = 1``, ``u > 0``.

    ``err_estimate`` bounds the eigenvalue error, not a pointwise residual.
    """

    lam: float
    nodes: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    du: np.ndarray = field(repr=False)
    solver_tag: str
    err_estimate: float
    problem: Optional[RobinProblem] = field(default=None, repr=False, compare=False)

    @property
    def eigenvalue(self):
        return self.lam


# -- shooting setup --------------------------------------------------------------

@dataclass
class _Shooter:
    problem: RobinProblem
    rtol: float
    atol: float
    backend: Optional[str]

    def __post_init__(self):
        p = self.problem
        self.L = p.R
        self.reflect = p.right.kind == "singular"
        start, target = (p.right, p.left) if self.reflect else (p.left, p.right)
        self.start, self.target = start, target
        w = p.weight
        self.native = w.native_drift(self.reflect)
        self.drift = None if self.native is not None else w.drift(self.reflect)
        if start.kind == "singular":
            self.order = w.singular_order("right" if self.reflect else "left")
            self.x0 = SERIES_OFFSET * self.L
        else:
            self.order = None
            self.x0 = 0.0
        self.h0 = self.x0 if self.x0 > 0 else 1e-2 * self.L

    def initial(self, lam):
        s = self.start
        if s.kind == "singular":
            m, x = self.order, self.x0
            return 1.0 - lam * x * x / (2 * (m + 1)), -lam * x / (m + 1)
        if s.kind == "dirichlet":
            return 0.0, 1.0
        return 1.0, s.sigma

    def shoot(self, lam, nodes, rtol=None, atol=None):
        u0, p0 = self.initial(lam)
        u, pv, ls, nz, status = _backend.shoot(
            self.native, self.drift, lam, nodes, u0, p0,
            rtol or self.rtol, atol or self.atol, self.h0, self.backend)
        if status:
            raise NoConvergence(f"integrator failed at lam={lam!r} (status {status})")
        return u, pv, ls, nz

    def mismatch(self, lam, rtol=None, atol=None):
        """``(above, g)``: whether ``lam`` exceeds the first eigenvalue, and the scaled residual."""
        nodes = np.array([self.x0, self.L])
        u, pv, _, nz = self.shoot(lam, nodes, rtol, atol)
        uL, pL = u[-1], pv[-1]
        if self.target.kind == "dirichlet":
            g = uL / math.hypot(uL, pL)
        else:
            g = (pL + self.target.sigma * uL) / math.hypot(uL, pL)
        return (nz >= 1 or g <= 0.0), g

    def max_drift(self):
        d = self.drift or _backend._pykernels.make_drift(*self.native)
        xs = np.linspace(max(self.x0, 0.05 * self.L), self.L, 64)
        return max(abs(d(float(x))) for x in xs)


def _weight_integral(w: WeightSpec, n=401):
    r = np.linspace(0.0, w.domain_length, n)
    return float(simpson(np.asarray(w.theta(r), dtype=float) * np.ones_like(r), x=r))


def _bracket(sh: _Shooter, rtol=None, atol=None):
    p = sh.problem
    w = p.weight
    R = p.R
    terms = [(p.left.sigma, float(w.theta(0.0))), (p.right.sigma, float(w.theta(R)))]
    neg = min(0.0, *p.sigmas)
    lo, hi = crude_bracket(terms, _weight_integral(w), neg, sh.max_drift() if neg < 0 else 0.0)
    if p.left.kind == "dirichlet" or p.right.kind == "dirichlet":
        hi = max(hi, 1.0 / R ** 2)
    for _ in range(MAX_EXPANSIONS):
        above, g_hi = sh.mismatch(hi, rtol, atol)
        if above:
            break
        lo = max(lo, hi)
        hi = 2 * hi + 1.0
    else:
        raise BracketFailure("no upper bracket for the first eigenvalue")
    for _ in range(MAX_EXPANSIONS):
        above, g_lo = sh.mismatch(lo, rtol, atol)
        if not above:
            break
        hi, g_hi = lo, g_lo
        lo = 2 * lo - 1.0
    else:
        raise BracketFailure("no lower bracket for the first eigenvalue")
    return lo, hi


def _locate(sh: _Shooter, lo, hi, rtol=None, atol=None):
    g_lo = sh.mismatch(lo, rtol, atol)[1]
    g_hi, hi_clean = None, False
    while hi - lo > 1e-12 * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        above, g = sh.mismatch(mid, rtol, atol)
        if above:
            hi, g_hi, hi_clean = mid, g, g <= 0.0
        else:
            lo, g_lo = mid, g
    lam = 0.5 * (lo + hi)
    # secant polish: only meaningful while the high end has not crossed a zero
    if g_hi is not None and hi_clean and g_lo != g_hi:
        cand = lo - g_lo * (hi - lo) / (g_hi - g_lo)
        if lo <= cand <= hi:
            lam = cand
    return lam, hi - lo


def _narrow_bracket(sh, lam, rtol, atol):
    d = 1e-6 * max(1.0, abs(lam))
    lo, hi = lam - d, lam + d
    for _ in range(60):
        if not sh.mismatch(lo, rtol, atol)[0]:
            break
        lo -= d
        d *= 4
    else:
        raise BracketFailure("lost the lower bracket during error estimation")
    d = 1e-6 * max(1.0, abs(lam))
    for _ in range(60):
        if sh.mismatch(hi, rtol, atol)[0]:
            break
        hi += d
        d *= 4
    else:
        raise BracketFailure("lost the upper bracket during error estimation")
    return lo, hi


def _sample(sh: _Shooter, lam, n_samples):
    p = sh.problem
    L = sh.L
    xs = np.linspace(0.0, L, n_samples)
    if sh.x0 > 0:
        run = np.concatenate(([sh.x0], xs[1:]))
    else:
        run = xs
    u, pv, ls, nz = sh.shoot(lam, run)
    if nz:
        raise NoConvergence("eigenfunction changes sign; not the first eigenvalue")
    if sh.x0 > 0:
        u = np.concatenate(([1.0], u[1:]))
        pv = np.concatenate(([0.0], pv[1:]))
        ls = np.concatenate(([0.0], ls[1:]))
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(u)) + ls
    shift = ls - np.max(logabs)
    u = u * np.exp(shift)
    du = pv * np.exp(shift)
    if sh.reflect:
        r = p.R - xs[::-1]
        u, du = u[::-1], -du[::-1]
        r[0] = 0.0
    else:
        r = xs
    return r, u, du


def first_eigenvalue(p: RobinProblem, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                     n_samples: int = 1025, backend: Optional[str] = None,
                     estimate_error: bool = True) -> Eigenpair:
    """Smallest eigenvalue and positive eigenfunction of ``p`` by shooting.

    Parameters
    ----------
    p : RobinProblem
    rtol, atol : float
        Dormand-Prince tolerances for every shot.
    n_samples : int
        Number of equispaced eigenfunction samples on ``[0, R]``.
    backend : {"native", "python"}, optional
        Kernel implementation; defaults to the compiled one when built.
    estimate_error : bool
        Re-solve at 100x looser tolerances and report the eigenvalue change.

    Returns
    -------
    Eigenpair
        ``solver_tag`` is ``"shooting"``.

    Raises
    ------
    NoConvergence
        An integration failed or the final eigenfunction has an interior zero.
    BracketFailure
        The eigenvalue could not be bracketed.
    """
    if n_samples < 3:
        raise ValueError("need at least 3 samples")
    if p.is_trivial():
        r = np.linspace(0.0, p.R, n_samples)
        return Eigenpair(0.0, r, np.ones_like(r), np.zeros_like(r), "shooting", 0.0, p)
    sh = _Shooter(p, rtol, atol, backend)
    lo, hi = _bracket(sh)
    lam, width = _locate(sh, lo, hi)
    err = max(width, 1e-15 * max(1.0, abs(lam)))
    if estimate_error:
        lr, la = 100 * rtol, 100 * atol
        a, b = _narrow_bracket(sh, lam, lr, la)
        loose, _ = _locate(sh, a, b, lr, la)
        err = max(err, abs(lam - loose))
    r, u, du = _sample(sh, lam, n_samples)
    return Eigenpair(float(lam), r, u, du, "shooting", float(err), p)


def ball_first_eigenvalue(warping: WarpingFunction, n: int, R: float, sigma: float,
                          **kwargs) -> Eigenpair:
    """First Robin eigenvalue of the geodesic ball of radius ``R`` about the pole.

    Solved in the distance-to-boundary variable ``r``: Robin at ``r = 0`` (the
    boundary sphere), regular singular at ``r = R`` (the centre).
    """
    if not 0 < R < warping.T:
        raise ValueError("radius must lie in (0, T)")
    w = BallWeight(R, warping=warping, n=n)
    prob = RobinProblem(R, w, BoundaryCondition.robin(sigma), BoundaryCondition.singular())
    return first_eigenvalue(prob, **kwargs)


def eigenfunction_log_derivative(e: Eigenpair) -> np.ndarray:
    """``du/u`` at the sample nodes."""
    return e.du / e.u


def rayleigh_quotient(p: RobinProblem, nodes, u, du) -> float:
    """Weighted Rayleigh quotient of samples ``(u, du)`` by composite Simpson."""
    nodes = np.asarray(nodes, dtype=float)
    u = np.asarray(u, dtype=float)
    du = np.asarray(du, dtype=float)
    th = np.asarray(p.weight.theta(nodes), dtype=float) * np.ones_like(nodes)
    num = simpson(du * du * th, x=nodes)
    num += p.left.sigma * th[0] * u[0] ** 2 + p.right.sigma * th[-1] * u[-1] ** 2
    return float(num / simpson(u * u * th, x=nodes))
