"""Exact transcendental characterisations and explicit eigenvalue bounds.

All root finding is bracketed bisection to an interval of width ``1e-13``
followed by a single Newton step that is kept only if it stays inside the
final bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import quad


class BracketFailure(RuntimeError):
    """No sign change where one is guaranteed; the parameters are inconsistent."""


class InvalidSigma(ValueError):
    pass


def _bisect(f, a, b, width=1e-13, max_iter=400):
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a, a, a
    if fb == 0.0:
        return b, b, b
    if (fa > 0) == (fb > 0):
        raise BracketFailure(f"no sign change on [{a}, {b}]: f={fa}, {fb}")
    for _ in range(max_iter):
        if b - a <= width * max(1.0, abs(a)):
            break
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m, m, m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b), a, b


def _polish(f, df, x, a, b):
    d = df(x)
    if d == 0.0 or not math.isfinite(d):
        return x
    y = x - f(x) / d
    return y if a <= y <= b else x


def _root(f, df, a, b, width=1e-13):
    x, lo, hi = _bisect(f, a, b, width)
    return _polish(f, df, x, lo, hi)


# -- flat interval -------------------------------------------------------------

def flat_robin_eigenvalue(R: float, sigma: float) -> float:
    """First eigenvalue of ``u'' + lam u = 0`` on ``[0, R]``, ``u'(0) = sigma u(0)``, ``u'(R) = 0``.

    Equivalently the first Robin eigenvalue of ``[0, 2R]`` with the same
    ``sigma`` at both ends.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    if sigma == 0:
        return 0.0
    a = R * sigma
    if sigma > 0:
        # x tan x = a on (0, pi/2), written without the pole
        c = _root(lambda x: x * math.sin(x) - a * math.cos(x),
                  lambda x: math.sin(x) + x * math.cos(x) + a * math.sin(x),
                  0.0, 0.5 * math.pi)
        return c * c / (R * R)
    # a coth x + x = 0, unique positive root; a + x tanh x increases and cannot overflow
    hi = -a + 2.0
    f = lambda x: a + x * math.tanh(x)
    df = lambda x: math.tanh(x) + x * (1.0 - math.tanh(x) ** 2)
    while f(hi) <= 0:
        hi *= 2.0
    c = _root(f, df, 1e-300, hi)
    return -c * c / (R * R)


def flat_root_residual(R: float, sigma: float, lam: float) -> float:
    """Residual of the flat characteristic equation at ``lam`` (``x tan x - R sigma`` or ``R sigma coth x + x``)."""
    if sigma > 0:
        x = R * math.sqrt(lam)
        return x * math.tan(x) - R * sigma
    x = R * math.sqrt(-lam)
    return R * sigma / math.tanh(x) + x


# -- constant-drift problem -------------------------------------------------------

@dataclass(frozen=True)
class DriftProblem:
    """``u'' + 2A u' + lam u = 0`` on ``[0, R]`` with ``u'(0) = 0`` and ``u'(R) = -sigma u(R)``."""

    A: float
    R: float
    sigma: float

    def __post_init__(self):
        for name in ("A", "R", "sigma"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.A > 0 and self.R > 0):
            raise ValueError("A and R must be positive")


@dataclass(frozen=True)
class TranscendentalRoots:
    """Ascending positive zeros of ``x**2 - alpha x cot x - beta``."""

    alpha: float
    beta: float
    roots: tuple

    def phi(self, x):
        return x * x - self.alpha * x / math.tan(x) - self.beta

    def dphi(self, x):
        s = math.sin(x)
        return 2 * x - self.alpha * (math.cos(x) / s - x / (s * s))


def transcendental_roots(alpha: float, beta: float, count: int = 1) -> TranscendentalRoots:
    """First ``count`` positive zeros of ``x**2 - alpha x cot x - beta`` for ``alpha > 0``.

    The function increases on every ``((k-1) pi, k pi)``; the first interval
    holds a zero iff ``alpha + beta > 0``, every later interval exactly one.
    Bisection runs on the pole-free form ``(x**2 - beta) sin x - alpha x cos x``.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    tr = TranscendentalRoots(alpha, beta, ())
    psi = lambda x: (x * x - beta) * math.sin(x) - alpha * x * math.cos(x)
    roots = []
    k = 1
    while len(roots) < count:
        lo, hi = (k - 1) * math.pi, k * math.pi
        if k == 1 and alpha + beta <= 0:
            k += 1
            continue
        # bisect on the sign-corrected psi, which tracks phi inside the interval
        sgn = 1.0 if k % 2 == 1 else -1.0
        eps = 1e-15 * max(1.0, hi)
        g = lambda x, s=sgn: s * psi(x)
        x, a, b = _bisect(g, lo + eps, hi - eps)
        roots.append(_polish(tr.phi, tr.dphi, x, a, b))
        k += 1
    return TranscendentalRoots(alpha, beta, tuple(roots))


def _qcoth(q, R):
    z = q * R
    if z < 1e-5:
        return (1.0 + z * z / 3.0) / R
    return q / math.tanh(z)


def _qcot(q, R):
    z = q * R
    if z < 1e-5:
        return (1.0 - z * z / 3.0) / R
    return q / math.tan(z)


def drift_residual(p: DriftProblem, lam: float) -> float:
    """``lam - sigma (A + q coth(qR))``, ``q = sqrt(A**2 - lam)``; continued past ``A**2`` with ``cot``."""
    A, R, s = p.A, p.R, p.sigma
    if lam <= A * A:
        return lam - s * (A + _qcoth(math.sqrt(A * A - lam), R))
    return lam - s * (A + _qcot(math.sqrt(lam - A * A), R))


def drift_eigenvalue(p: DriftProblem) -> float:
    """First eigenvalue of the constant-drift problem.

    For ``0 < sigma < A`` with a non-negative residual at ``A**2`` the root
    sits on ``[2 sigma A - sigma**2, A**2]``; otherwise (``sigma >= A`` always
    lands here) it is ``A**2 + x1**2/R**2`` with ``x1`` the first zero of
    ``x**2 - sigma R x cot x - (sigma A - A**2) R**2``.  Negative ``sigma``
    gives the unique negative root of the hyperbolic branch.
    """
    A, R, s = p.A, p.R, p.sigma
    if s == 0:
        return 0.0
    f = lambda lam: drift_residual(p, lam)
    if s > 0:
        if s < A and f(A * A) >= 0:
            lo = 2 * s * A - s * s
            if f(lo) > 0:
                raise BracketFailure("certified lower bracket violated")
            x, _, _ = _bisect(f, lo, A * A, width=1e-15)
            return x
        tr = transcendental_roots(s * R, (s * A - A * A) * R * R, 1)
        return A * A + tr.roots[0] ** 2 / (R * R)
    hi = 0.0
    lo = min(-s * s + 2 * A * s, -s * s) - 1.0
    while f(lo) >= 0:
        lo *= 2.0
        if lo < -1e300:
            raise BracketFailure("no negative root")
    x, _, _ = _bisect(f, lo, hi, width=1e-15)
    return x


def drift_floor(A: float, sigma: float) -> float:
    """Lower bound ``2 sigma A - sigma**2`` (``sigma <= A``) or ``A**2`` (``sigma >= A``); ``sigma >= 0``."""
    return 2 * sigma * A - sigma * sigma if sigma <= A else A * A


def drift_ceiling(A: float, sigma: float) -> float:
    """Upper bound ``-sigma**2 + 2 A sigma`` for ``sigma < 0``."""
    return -sigma * sigma + 2 * A * sigma


# -- explicit bounds -----------------------------------------------------------

def corollary_lower_bound(R: float, sigma: float) -> float:
    """Explicit lower bound ``pi^2 sigma / (pi^2 R + 4 R^2 sigma)`` for non-negatively curved domains."""
    if not (R > 0 and sigma > 0):
        raise ValueError("need R > 0 and sigma > 0")
    return math.pi ** 2 * sigma / (math.pi ** 2 * R + 4 * R * R * sigma)


def kovarik_bounds(R: float, sigma: float, K_n: Optional[float] = None):
    """Hardy-inequality bounds for convex domains: ``(lower, upper)``.

    The upper bound ``2 K_n sigma / (R + R^2 sigma)`` needs the dimensional
    constant ``K_n``; without it ``upper`` is None.
    """
    if not (R > 0 and sigma > 0):
        raise ValueError("need R > 0 and sigma > 0")
    lower = sigma / (4 * R + 4 * R * R * sigma)
    upper = None if K_n is None else 2 * K_n * sigma / (R + R * R * sigma)
    return lower, upper


class McKeanBound(NamedTuple):
    value: float
    kind: str  # "lower" or "upper"


def mckean_bound(n: int, sigma: float, kappa: float = 1.0) -> McKeanBound:
    """Uniform bound for domains in hyperbolic space of curvature ``-kappa**2``."""
    if n < 2 or not kappa > 0:
        raise ValueError("need n >= 2 and kappa > 0")
    half = 0.5 * (n - 1) * kappa
    if sigma >= half:
        return McKeanBound(half * half, "lower")
    if sigma >= 0:
        return McKeanBound((n - 1) * kappa * sigma - sigma * sigma, "lower")
    return McKeanBound(-sigma * sigma + (n - 1) * kappa * sigma, "upper")


def becker_stark_check(x: float) -> bool:
    """True iff ``tan x < pi^2 x / (pi^2 - 4 x^2)``; meaningful on ``(0, pi/2)``."""
    return math.tan(x) < math.pi ** 2 * x / (math.pi ** 2 - 4 * x * x)


# -- large hyperbolic balls ------------------------------------------------------

_TAIL_CUT = 40.0


def sinh_moment() -> float:
    """``int_0^inf r^2 / sinh(r)^2 dr`` by adaptive quadrature on ``[0, 40]``.

    The discarded tail is below ``4 * 40**2 * exp(-80)``.
    """
    def integrand(r):
        if r < 1e-4:
            return 1.0 - r * r / 3.0
        return (r / math.sinh(r)) ** 2

    val, _ = quad(integrand, 0.0, _TAIL_CUT, epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def sinh_moment_tail_bound() -> float:
    return 4 * _TAIL_CUT ** 2 * math.exp(-2 * _TAIL_CUT)


@dataclass(frozen=True)
class AsymptoticEnvelope:
    """Constants of the two-term envelope for hyperbolic balls of curvature -1.

    ``c0`` is the constant as originally stated.  Squaring
    ``x1 >= pi - d/R`` actually yields ``x1^2 >= pi^2 - 2 pi d / R``, so the
    lower envelope is only guaranteed with ``c0_certified = pi * c0``; the
    stated ``c0`` is violated by exact solutions (e.g. ``n = 3``, ``sigma = 2``,
    ``R = 30``).
    """

    n: int
    sigma: float
    C: float
    c0: float
    R0: float
    c0_certified: float

    @property
    def A(self):
        return 0.5 * (self.n - 1)

    def lower(self, R, certified=False):
        c = self.c0_certified if certified else self.c0
        return self.A ** 2 + math.pi ** 2 / R ** 2 - c / R ** 3

    def upper(self, R):
        return self.A ** 2 + math.pi ** 2 / R ** 2 + self.C / R ** 3


def envelope_C(n: int) -> float:
    return math.pi ** 2 * (n * n - 1) / 2.0 * sinh_moment()


def asymptotic_envelope(n: int, sigma: float) -> AsymptoticEnvelope:
    """Constants ``C``, ``c0``, ``R0`` for ``sigma > (n-1)/2``."""
    A = 0.5 * (n - 1)
    if not sigma > A:
        raise InvalidSigma(f"need sigma > (n-1)/2 = {A}, got {sigma}")
    gap = sigma * A - A * A
    c0 = 8 * math.pi * sigma / (3 * gap)
    R0 = max(2 * math.pi / math.sqrt(gap), 4 * sigma / (3 * gap))
    return AsymptoticEnvelope(n, sigma, envelope_C(n), c0, R0, math.pi * c0)


def dirichlet_envelope(n: int, R: float):
    """Two-sided bound on the first Dirichlet eigenvalue of the hyperbolic ball ``B_R``."""
    if n < 2 or not R > 0:
        raise ValueError("need n >= 2 and R > 0")
    A2 = 0.25 * (n - 1) ** 2
    base = A2 + math.pi ** 2 / R ** 2
    return base - 4 * math.pi ** 2 / ((n - 1) * R ** 3), base + envelope_C(n) / R ** 3


# -- solver support ------------------------------------------------------------

def crude_bracket(boundary_terms, weight_integral, most_negative_sigma=0.0, max_drift=0.0):
    """Initial eigenvalue bracket ``(lo, hi)`` for the shooting solver.

    ``hi`` is the Rayleigh quotient of the constant test function,
    ``sum(sigma_end * theta_end) / int theta``, nudged up so the quotient itself
    is strictly above the first eigenvalue.  ``lo`` is 0 when no boundary
    parameter is negative, otherwise ``-s^2 - |s| max_drift - 1`` for the most
    negative ``s``.  The caller verifies both ends and widens as needed.
    """
    rq = sum(s * t for s, t in boundary_terms) / weight_integral
    hi = rq + 1e-9 * max(1.0, abs(rq))
    s = most_negative_sigma
    lo = 0.0 if s >= 0 else -s * s - abs(s) * max_drift - 1.0
    if lo >= hi:
        lo = hi - 1.0 - abs(hi)
    return lo, hi


def bessel_j0_first_zero() -> float:
    """First zero of ``J0`` from its power series, by bisection on ``(2, 3)``."""
    def j0(x):
        term, total, k = 1.0, 1.0, 0
        while abs(term) > 1e-18:
            k += 1
            term *= -(x * x / 4.0) / (k * k)
            total += term
        return total

    x, _, _ = _bisect(j0, 2.0, 3.0, width=1e-15)
    return x
