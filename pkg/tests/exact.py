"""Closed-form radial eigenvalues used as independent references.

Each routine reduces a ball problem to one scalar equation and solves it with
``scipy.optimize.brentq``, sharing no code with the package under test.
"""

import math

from scipy.optimize import brentq
from scipy.special import j0, j1


def _branch(R, target):
    # x cot x = target on (0, pi) if target < 1, else x coth x = target on (0, inf)
    if target < 1.0:
        x = brentq(lambda x: x * math.cos(x) - target * math.sin(x), 1e-12, math.pi - 1e-15,
                   xtol=1e-15, rtol=1e-15)
        return (x / R) ** 2
    if target == 1.0:
        return 0.0
    hi = target + 1.0
    x = brentq(lambda x: x * math.cosh(x) - target * math.sinh(x), 1e-12, hi,
               xtol=1e-15, rtol=1e-15)
    return -(x / R) ** 2


def hyperbolic3_ball(R, sigma):
    """First Robin eigenvalue of the geodesic ball of radius ``R`` in hyperbolic 3-space.

    ``v = sin(mu r)/sinh(r)`` with ``mu cot(mu R) = coth R - sigma``, ``lam = 1 + mu^2``.
    """
    return 1.0 + _branch(R, R * (1.0 / math.tanh(R) - sigma))


def euclidean3_ball(R, sigma):
    """``v = sin(mu r)/r`` with ``mu cot(mu R) = 1/R - sigma``."""
    return _branch(R, 1.0 - R * sigma)


def euclidean2_ball(R, sigma):
    """``v = J0(mu r)`` with ``mu J1(mu R) = sigma J0(mu R)``; ``sigma > 0`` only."""
    f = lambda x: x * j1(x) - R * sigma * j0(x)
    x = brentq(f, 1e-12, 2.404825557695773, xtol=1e-15, rtol=1e-15)
    return (x / R) ** 2
