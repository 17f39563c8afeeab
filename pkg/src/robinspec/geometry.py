"""Curvature data, space-form functions, weights and model domains.

Everything here is a pure function of its arguments.  Weights are expressed
in the *distance-to-boundary* coordinate ``r in [0, R]``: the Robin end sits
at ``r = 0`` and the far end (Neumann face or a pole) at ``r = R``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

UNBOUNDED = math.inf
"""Marker returned by :func:`first_weight_zero` when the weight never vanishes."""

SINGULAR_ZERO = 1e-14
BASE_ZERO_TOL = 1e-12


class DomainError(ValueError):
    """A weight was evaluated past its first zero."""


class RadiusTooLarge(ValueError):
    """The requested radius exceeds the admissible radius for the curvature data."""


@dataclass(frozen=True)
class CurvatureData:
    """Dimension ``n``, Ricci lower bound ``(n-1) K`` and boundary mean-curvature bound ``H``."""

    n: int
    K: float
    H: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n}")
        if not (math.isfinite(self.K) and math.isfinite(self.H)):
            raise ValueError("K and H must be finite")


# -- space-form special functions ---------------------------------------------

def s_K(r, K):
    """Space-form warping: ``r``, ``sin(r sqrt K)/sqrt K`` or ``sinh(r sqrt|K|)/sqrt|K|``."""
    if K > 0:
        k = math.sqrt(K)
        return np.sin(k * np.asarray(r, dtype=float)) / k if np.ndim(r) else math.sin(k * r) / k
    if K < 0:
        k = math.sqrt(-K)
        return np.sinh(k * np.asarray(r, dtype=float)) / k if np.ndim(r) else math.sinh(k * r) / k
    return np.asarray(r, dtype=float) if np.ndim(r) else float(r)


def ds_K(r, K):
    """Derivative of :func:`s_K` in ``r``."""
    if K > 0:
        k = math.sqrt(K)
        return np.cos(k * np.asarray(r, dtype=float)) if np.ndim(r) else math.cos(k * r)
    if K < 0:
        k = math.sqrt(-K)
        return np.cosh(k * np.asarray(r, dtype=float)) if np.ndim(r) else math.cosh(k * r)
    return np.ones_like(np.asarray(r, dtype=float)) if np.ndim(r) else 1.0


def cot_K(r, K):
    """Mean curvature ``s_K'/s_K`` of the geodesic sphere of radius ``r`` in ``M_K``."""
    return ds_K(r, K) / s_K(r, K)


def arccot_K(c, K):
    """Radius of the geodesic sphere in ``M_K`` with mean curvature ``c``.

    Defined for every ``c`` when ``K > 0``, for ``c > 0`` when ``K = 0`` and for
    ``c > sqrt|K|`` when ``K < 0``.
    """
    if K > 0:
        k = math.sqrt(K)
        return math.atan2(k, c) / k
    if K == 0:
        if c <= 0:
            raise DomainError("no Euclidean sphere has non-positive mean curvature")
        return 1.0 / c
    k = math.sqrt(-K)
    if c <= k:
        raise DomainError(f"no hyperbolic sphere has mean curvature {c} <= {k}")
    return math.atanh(k / c) / k


# -- the comparison weight -------------------------------------------------------

def _theta_base(cd: CurvatureData, r):
    return ds_K(r, cd.K) - cd.H * s_K(r, cd.K)


def theta_weight(cd: CurvatureData, r):
    """Comparison weight ``(s_K'(r) - H s_K(r))**(n-1)``; ``r`` may be an array.

    Raises
    ------
    DomainError
        If ``r`` lies beyond the first zero of ``s_K' - H s_K``.  A base within
        ``1e-12`` of zero counts as the zero itself and yields ``0.0``.
    """
    if np.ndim(r):
        return np.array([theta_weight(cd, float(x)) for x in np.asarray(r, dtype=float)])
    if r < 0:
        raise DomainError("r must be non-negative")
    base = _theta_base(cd, r)
    if base <= 0.0:
        if base > -BASE_ZERO_TOL and r <= first_weight_zero(cd) * (1 + 1e-9):
            return 0.0
        raise DomainError(f"weight undefined at r={r}: base {base} <= 0")
    return float(base ** (cd.n - 1))


def first_weight_zero(cd: CurvatureData) -> float:
    """Smallest ``r > 0`` where ``s_K' - H s_K`` vanishes, or :data:`UNBOUNDED`."""
    K, H = cd.K, cd.H
    if K > 0:
        k = math.sqrt(K)
        return math.atan2(k, H) / k
    if K == 0:
        return 1.0 / H if H > 0 else UNBOUNDED
    k = math.sqrt(-K)
    return math.atanh(k / H) / k if H > k else UNBOUNDED


# -- revolution manifolds ------------------------------------------------------

@dataclass(frozen=True)
class WarpingFunction:
    """Warping function of a revolution manifold ``dr^2 + phi(r)^2 g_sphere``.

    ``kind`` names a closed form the compiled kernels understand
    (``"euclidean"``, ``"hyperbolic"``, ``"spherical"``); anything else runs on
    the Python kernels.  ``d2log`` is ``(log phi)''``; when omitted it is
    approximated by central differences of ``dphi/phi``.
    """

    phi: Callable[[float], float]
    dphi: Callable[[float], float]
    d2log: Optional[Callable[[float], float]] = None
    T: float = UNBOUNDED
    kind: Optional[str] = None
    kappa: float = 1.0
    require_pole: bool = True

    def __post_init__(self):
        if self.require_pole:
            if abs(float(self.phi(0.0))) > 1e-12 or abs(float(self.dphi(0.0)) - 1.0) > 1e-9:
                raise ValueError("warping function needs phi(0) = 0 and phi'(0) = 1")

    @classmethod
    def euclidean(cls):
        return cls(lambda r: r, lambda r: np.ones_like(r) if np.ndim(r) else 1.0,
                   lambda r: -1.0 / np.asarray(r) ** 2, kind="euclidean")

    @classmethod
    def hyperbolic(cls, kappa=1.0):
        """Hyperbolic space of curvature ``-kappa**2``."""
        k = float(kappa)
        return cls(lambda r: np.sinh(k * r) / k, lambda r: np.cosh(k * r),
                   lambda r: -k * k / np.sinh(k * np.asarray(r)) ** 2,
                   kind="hyperbolic", kappa=k)

    @classmethod
    def spherical(cls, kappa=1.0):
        """Round sphere of curvature ``kappa**2``."""
        k = float(kappa)
        return cls(lambda r: np.sin(k * r) / k, lambda r: np.cos(k * r),
                   lambda r: -k * k / np.sin(k * np.asarray(r)) ** 2,
                   T=math.pi / k, kind="spherical", kappa=k)

    @classmethod
    def space_form(cls, K):
        if K > 0:
            return cls.spherical(math.sqrt(K))
        if K < 0:
            return cls.hyperbolic(math.sqrt(-K))
        return cls.euclidean()

    def mean_curvature(self, r):
        """``phi'/phi``: mean curvature of the geodesic sphere of radius ``r``."""
        return self.dphi(r) / self.phi(r)

    def log_second_derivative(self, r):
        if self.d2log is not None:
            return np.asarray(self.d2log(np.asarray(r, dtype=float)), dtype=float)
        r = np.asarray(r, dtype=float)
        h = 1e-5 * np.maximum(1.0, np.abs(r))
        return (self.mean_curvature(r + h) - self.mean_curvature(r - h)) / (2 * h)

    @property
    def native_code(self):
        return {"euclidean": 0.0, "hyperbolic": 1.0, "spherical": 2.0}.get(self.kind)


def is_log_concave(warping: WarpingFunction, grid) -> bool:
    """True iff ``(log phi)'' < 0`` at every grid point."""
    vals = warping.log_second_derivative(np.atleast_1d(np.asarray(grid, dtype=float)))
    return bool(np.all(vals < 0.0))


def ball_weight(warping: WarpingFunction, n: int, R: float, r: float) -> float:
    """Weight ``phi(R - r)**(n-1)`` of a geodesic ball seen from its boundary."""
    if not 0.0 <= r <= R or R > warping.T:
        raise ValueError("need 0 <= r <= R <= T")
    return float(warping.phi(R - r)) ** (n - 1)


# -- weights consumed by the solvers -------------------------------------------

@dataclass(frozen=True)
class WeightSpec:
    """Positive weight on ``[0, R]`` together with its logarithmic derivative.

    Subclasses supply :meth:`theta` and :meth:`log_derivative`; the solvers
    also ask for :meth:`drift` (the ODE coefficient in the integration
    variable, optionally reflected ``x = R - r``) and :meth:`native_drift`.
    """

    domain_length: float
    left_singular: bool = field(default=False, init=False)
    right_singular: bool = field(default=False, init=False)

    variant = "abstract"

    def _set_flags(self):
        R = self.domain_length
        if not R > 0:
            raise ValueError("domain length must be positive")
        object.__setattr__(self, "left_singular", bool(self.theta(0.0) < SINGULAR_ZERO))
        object.__setattr__(self, "right_singular", bool(self.theta(R) < SINGULAR_ZERO))

    def theta(self, r):
        raise NotImplementedError

    def log_derivative(self, r):
        raise NotImplementedError

    def singular_order(self, end: str) -> float:
        """Vanishing exponent ``m`` with ``theta ~ c * dist**m`` at a singular end."""
        R = self.domain_length
        eps = 1e-4 * R
        if end == "right":
            a, b = self.theta(R - eps), self.theta(R - 2 * eps)
        else:
            a, b = self.theta(eps), self.theta(2 * eps)
        return math.log(b / a) / math.log(2.0)

    def drift(self, reflected: bool = False) -> Callable[[float], float]:
        R = self.domain_length
        if reflected:
            return lambda x: -float(self.log_derivative(R - x))
        return lambda x: float(self.log_derivative(x))

    def native_drift(self, reflected: bool = False):
        return None


@dataclass(frozen=True)
class ComparisonWeight(WeightSpec):
    """The weight built from curvature data on ``[0, R]``."""

    curvature: CurvatureData = None
    variant = "comparison"

    def __post_init__(self):
        if self.curvature is None:
            raise ValueError("curvature data required")
        if self.domain_length > first_weight_zero(self.curvature) * (1 + 1e-12):
            raise DomainError("interval extends past the first zero of the weight")
        self._set_flags()

    def theta(self, r):
        base = _theta_base(self.curvature, r)
        base = np.where(np.abs(base) < BASE_ZERO_TOL, 0.0, base) if np.ndim(base) else (
            0.0 if abs(base) < BASE_ZERO_TOL else base)
        return base ** (self.curvature.n - 1)

    def log_derivative(self, r):
        cd = self.curvature
        s, ds = s_K(r, cd.K), ds_K(r, cd.K)
        return (cd.n - 1) * (-cd.K * s - cd.H * ds) / (ds - cd.H * s)

    def singular_order(self, end):
        return float(self.curvature.n - 1)

    def native_drift(self, reflected=False):
        cd = self.curvature
        if cd.K == 0 and cd.H == 0:
            return 0, (0.0,)
        return 1, (cd.n - 1.0, cd.K, cd.H, self.domain_length, 1.0 if reflected else 0.0)


@dataclass(frozen=True)
class BallWeight(WeightSpec):
    """Geodesic ball of radius ``R`` around the pole, ``theta(r) = phi(R - r)**(n-1)``."""

    warping: WarpingFunction = None
    n: int = 2
    variant = "ball"

    def __post_init__(self):
        if self.warping is None:
            raise ValueError("warping function required")
        if self.domain_length >= self.warping.T:
            raise ValueError("ball radius must stay below the warping's maximal radius")
        self._set_flags()

    def theta(self, r):
        return self.warping.phi(self.domain_length - np.asarray(r, dtype=float) if np.ndim(r)
                                else self.domain_length - r) ** (self.n - 1)

    def log_derivative(self, r):
        return -(self.n - 1) * self.warping.mean_curvature(self.domain_length - r)

    def singular_order(self, end):
        return float(self.n - 1)

    def drift(self, reflected=False):
        if reflected:
            m, w = self.n - 1, self.warping
            return lambda x: m * float(w.dphi(x)) / float(w.phi(x))
        return super().drift(False)

    def native_drift(self, reflected=False):
        code = self.warping.native_code
        if not reflected or code is None:
            return None
        return 2, (self.n - 1.0, code, self.warping.kappa)


@dataclass(frozen=True)
class DriftWeight(WeightSpec):
    """Constant drift ``theta(r) = exp(-2 A r)``: the linearised large-ball problem."""

    A: float = 1.0
    variant = "drift"

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("A must be positive")
        self._set_flags()

    def theta(self, r):
        return np.exp(-2.0 * self.A * np.asarray(r, dtype=float)) if np.ndim(r) else math.exp(
            -2.0 * self.A * r)

    def log_derivative(self, r):
        return -2.0 * self.A * np.ones_like(r) if np.ndim(r) else -2.0 * self.A

    def native_drift(self, reflected=False):
        return 0, (2.0 * self.A if reflected else -2.0 * self.A,)


@dataclass(frozen=True)
class CustomWeight(WeightSpec):
    """User weight from a closed form or a sampled table.

    Give either ``func`` (optionally with its derivative ``dfunc``) or
    ``samples = (r_values, theta_values)``; tables are interpolated by a cubic
    spline.  Without an analytic derivative the log-derivative uses central
    differences with step ``1e-6 * R``.
    """

    func: Optional[Callable] = None
    dfunc: Optional[Callable] = None
    samples: Optional[tuple] = None
    order: Optional[float] = None
    variant = "custom"

    def __post_init__(self):
        if (self.func is None) == (self.samples is None):
            raise ValueError("give exactly one of func or samples")
        if self.samples is not None:
            spline = CubicSpline(np.asarray(self.samples[0], float), np.asarray(self.samples[1], float))
            object.__setattr__(self, "func", spline)
            object.__setattr__(self, "dfunc", spline.derivative())
        self._set_flags()
        r = np.linspace(0.0, self.domain_length, 257)[1:-1]
        if np.any(np.asarray(self.func(r)) <= 0):
            raise ValueError("weight must be positive on the open interval")

    def theta(self, r):
        val = self.func(r)
        return float(val) if np.ndim(val) == 0 else np.asarray(val, dtype=float)

    def log_derivative(self, r):
        if self.dfunc is not None:
            return self.dfunc(r) / self.func(r)
        R = self.domain_length
        h = 1e-6 * R
        r = np.asarray(r, dtype=float)
        lo = np.clip(r - h, 0.0, R)
        hi = np.clip(r + h, 0.0, R)
        d = (np.log(self.func(hi)) - np.log(self.func(lo))) / (hi - lo)
        return float(d) if d.ndim == 0 else d

    def singular_order(self, end):
        return float(self.order) if self.order is not None else super().singular_order(end)


# -- model domains ---------------------------------------------------------------

class ModelCase(enum.Enum):
    ANNULUS_IN_SPACE_FORM = "annulus"
    FLAT_CYLINDER = "flat_cylinder"
    HYPERBOLIC_CYLINDER = "hyperbolic_cylinder"
    LIMIT_CASE = "limit"


@dataclass(frozen=True)
class ModelDomainSpec:
    """Rotationally symmetric domain whose mixed Robin/Neumann problem is the 1-D problem.

    ``A`` is the ambient radial coordinate of the Robin face: the sphere radius
    for annuli, the slice position for hyperbolic cylinders, and 0 for the flat
    and limiting cylinders.
    """

    case: ModelCase
    curvature: CurvatureData
    R: float
    A: float

    def _profile(self, t):
        """Area factor of the ambient slice at radial coordinate ``t``."""
        K = self.curvature.K
        if self.case is ModelCase.ANNULUS_IN_SPACE_FORM:
            return s_K(t, K)
        if self.case is ModelCase.FLAT_CYLINDER:
            return np.ones_like(np.asarray(t, dtype=float)) if np.ndim(t) else 1.0
        k = math.sqrt(-K)
        if self.case is ModelCase.HYPERBOLIC_CYLINDER:
            return np.cosh(k * np.asarray(t, dtype=float))
        return np.exp(-math.copysign(1.0, self.curvature.H) * k * np.asarray(t, dtype=float))

    def _dprofile(self, t):
        K = self.curvature.K
        if self.case is ModelCase.ANNULUS_IN_SPACE_FORM:
            return ds_K(t, K)
        if self.case is ModelCase.FLAT_CYLINDER:
            return np.zeros_like(np.asarray(t, dtype=float))
        k = math.sqrt(-K)
        if self.case is ModelCase.HYPERBOLIC_CYLINDER:
            return k * np.sinh(k * np.asarray(t, dtype=float))
        sgn = math.copysign(1.0, self.curvature.H)
        return -sgn * k * np.exp(-sgn * k * np.asarray(t, dtype=float))

    @property
    def direction(self) -> float:
        """+1 when the distance to the Robin face grows with the ambient coordinate."""
        if self.case is ModelCase.ANNULUS_IN_SPACE_FORM and self.curvature.H >= 0:
            return -1.0
        return 1.0

    def ambient_coordinate(self, rho):
        return self.A + self.direction * np.asarray(rho, dtype=float)

    def weight(self, rho):
        """Level-set area at distance ``rho`` from the Robin face, relative to the face."""
        n = self.curvature.n
        return (self._profile(self.ambient_coordinate(rho)) / self._profile(self.A)) ** (n - 1)

    def weight_derivative(self, rho):
        n = self.curvature.n
        t = self.ambient_coordinate(rho)
        ratio = self._profile(t) / self._profile(self.A)
        return (n - 1) * ratio ** (n - 2) * self.direction * self._dprofile(t) / self._profile(self.A)

    def boundary_mean_curvature(self) -> float:
        """Mean curvature of the Robin face with respect to the inner normal."""
        t = self.A
        return float(-self.direction * self._dprofile(t) / self._profile(t))

    def as_weight(self) -> CustomWeight:
        return CustomWeight(self.R, func=self.weight, dfunc=self.weight_derivative,
                            order=float(self.curvature.n - 1))


def build_model_domain(cd: CurvatureData, R: float) -> ModelDomainSpec:
    """Resolve the model domain for curvature data ``cd`` and inradius ``R``.

    Raises
    ------
    RadiusTooLarge
        When ``R`` exceeds :func:`first_weight_zero` for ``cd``.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    limit = first_weight_zero(cd)
    if R > limit * (1 + 1e-12):
        raise RadiusTooLarge(f"R={R} exceeds the admissible radius {limit}")
    K, H = cd.K, cd.H
    if K > 0 or (K == 0 and H != 0):
        return ModelDomainSpec(ModelCase.ANNULUS_IN_SPACE_FORM, cd, R, arccot_K(abs(H), K))
    if K == 0:
        return ModelDomainSpec(ModelCase.FLAT_CYLINDER, cd, R, 0.0)
    k = math.sqrt(-K)
    if abs(abs(H) - k) <= 1e-14 * k:
        return ModelDomainSpec(ModelCase.LIMIT_CASE, cd, R, 0.0)
    if abs(H) > k:
        return ModelDomainSpec(ModelCase.ANNULUS_IN_SPACE_FORM, cd, R, arccot_K(abs(H), K))
    return ModelDomainSpec(ModelCase.HYPERBOLIC_CYLINDER, cd, R, -math.atanh(H / k) / k)
