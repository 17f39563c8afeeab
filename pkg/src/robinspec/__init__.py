"""First Robin eigenvalues of weighted one-dimensional problems.

Shooting and finite-difference solvers for ``u'' + (theta'/theta) u' + lam u = 0``
with Robin, Neumann, Dirichlet or regular-singular ends, the comparison
weights of Riemannian domains with curvature bounds, closed-form
characteristic equations and explicit bounds, and a certification harness.
"""

from ._backend import BACKEND, available_backends
from .closed_form import (
    AsymptoticEnvelope, DriftProblem, InvalidSigma, TranscendentalRoots, asymptotic_envelope,
    becker_stark_check, corollary_lower_bound, dirichlet_envelope, drift_eigenvalue,
    flat_robin_eigenvalue, kovarik_bounds, mckean_bound, transcendental_roots,
)
from .fd_oracle import GridTooCoarse, cylinder2d_first_eigenvalue, fd_first_eigenvalue
from .geometry import (
    BallWeight, ComparisonWeight, CurvatureData, CustomWeight, DomainError, DriftWeight,
    ModelCase, ModelDomainSpec, RadiusTooLarge, WarpingFunction, WeightSpec,
    build_model_domain, first_weight_zero, theta_weight,
)
from .sl_solver import (
    BoundaryCondition, BracketFailure, Eigenpair, NoConvergence, RobinProblem,
    ball_first_eigenvalue, eigenfunction_log_derivative, first_eigenvalue, rayleigh_quotient,
)
from .verify import BoundReport, TheoremId, run_suite

__version__ = "0.1.0"
