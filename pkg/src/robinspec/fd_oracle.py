"""Finite-difference oracle, independent of the shooting solver.

The weighted problem is discretised in flux form on a vertex-centred grid,
which keeps the matrix pencil symmetric and the quadratic form a faithful
copy of the continuous one.  Only the smallest eigenvalue is wanted, so it
is found by bisection on inertia counts of the shifted pencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, cholesky_banded, solve_banded

from . import _backend
from .sl_solver import Eigenpair, RobinProblem

__all__ = [
    "GridTooCoarse", "DiscreteOperator", "assemble", "fd_first_eigenvalue",
    "cylinder2d_first_eigenvalue", "richardson_slope",
]

MIN_GRID = 16


class GridTooCoarse(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteOperator:
    """Symmetric tridiagonal stiffness ``(diag, offdiag)`` and lumped ``mass``.

    ``nodes`` are the unknowns' abscissae; Dirichlet ends are eliminated and
    a singular end keeps its node with zero mass.
    """

    h: float
    nodes: np.ndarray
    diag: np.ndarray
    offdiag: np.ndarray
    mass: np.ndarray

    def count_below(self, mu, backend=None):
        """Number of eigenvalues strictly below ``mu``."""
        return _backend.sturm_count(self.diag, self.offdiag, self.mass, mu, backend)

    def quotient(self, v):
        v = np.asarray(v, dtype=float)
        Kv = self.diag * v
        Kv[:-1] += self.offdiag * v[1:]
        Kv[1:] += self.offdiag * v[:-1]
        return float(v @ Kv / (v @ (self.mass * v)))


def assemble(p: RobinProblem, grid_n: int) -> DiscreteOperator:
    """Flux-form discretisation of ``p`` with ``grid_n`` cells."""
    if grid_n < MIN_GRID:
        raise GridTooCoarse(f"grid_n must be at least {MIN_GRID}")
    R = p.R
    h = R / grid_n
    r = np.linspace(0.0, R, grid_n + 1)
    th = np.asarray(p.weight.theta(r), dtype=float) * np.ones_like(r)
    face = np.asarray(p.weight.theta(0.5 * (r[:-1] + r[1:])), dtype=float) * np.ones(grid_n)
    c = face / h
    diag = np.zeros(grid_n + 1)
    diag[:-1] += c
    diag[1:] += c
    off = -c.copy()
    mass = th * h
    mass[0] *= 0.5
    mass[-1] *= 0.5
    left, right = p.left, p.right
    diag[0] += left.sigma * th[0]
    diag[-1] += right.sigma * th[-1]
    for bc, i in ((left, 0), (right, -1)):
        if bc.kind == "singular":
            mass[i] = 0.0
    lo = 1 if left.kind == "dirichlet" else 0
    hi = grid_n if right.kind == "dirichlet" else grid_n + 1
    return DiscreteOperator(h, r[lo:hi], diag[lo:hi], off[lo:hi - 1], mass[lo:hi])


def _smallest(op: DiscreteOperator, backend=None):
    # Gershgorin-type bracket on the pencil, then bisection on counts
    pos = op.mass > 0
    rows = np.abs(op.diag).copy()
    rows[:-1] += np.abs(op.offdiag)
    rows[1:] += np.abs(op.offdiag)
    scale = float(np.max(rows[pos] / op.mass[pos]))
    massless = int(np.count_nonzero(~pos))
    lo, hi = -scale, scale
    if op.count_below(lo, backend) != 0:
        lo = -4 * scale - 1.0
        if op.count_below(lo, backend) != 0:
            raise GridTooCoarse("inertia count positive below the Gershgorin bound")
    while op.count_below(hi, backend) < 1:
        hi = 2 * hi + 1.0
        if hi > 1e300:
            raise GridTooCoarse("no eigenvalue found")
    # massless nodes contribute fixed inertia; the counts must still be monotone
    base = op.count_below(lo, backend)
    if base > massless:
        raise GridTooCoarse("inconsistent inertia counts")
    for _ in range(200):
        if hi - lo <= 1e-14 * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if op.count_below(mid, backend) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _eigenvector(op: DiscreteOperator, lam):
    """Inverse iteration for the eigenvector at ``lam``, signed positive."""
    n = len(op.diag)
    shift = lam - 1e-9 * max(1.0, abs(lam))
    ab = np.zeros((3, n))
    ab[0, 1:] = op.offdiag
    ab[1] = op.diag - shift * op.mass
    ab[2, :-1] = op.offdiag
    v = np.ones(n)
    for _ in range(4):
        v = solve_banded((1, 1), ab, op.mass * v)
        v /= np.max(np.abs(v))
    return v if v[np.argmax(np.abs(v))] > 0 else -v


def fd_first_eigenvalue(p: RobinProblem, grid_n: int = 1024, richardson: bool = False,
                        backend: Optional[str] = None) -> Eigenpair:
    """Smallest eigenvalue of the discretised pencil.

    ``err_estimate`` is ``|lam_h - lam_{h/2}|/3``, the second-order error
    estimate from one refinement.  With ``richardson=True`` the extrapolated
    value ``(4 lam_{h/2} - lam_h)/3`` is returned instead of ``lam_h``.
    """
    if p.is_trivial():
        r = np.linspace(0.0, p.R, grid_n + 1)
        return Eigenpair(0.0, r, np.ones_like(r), np.zeros_like(r), "fd_oracle", 0.0, p)
    op = assemble(p, grid_n)
    lam_h = _smallest(op, backend)
    lam_h2 = _smallest(assemble(p, 2 * grid_n), backend)
    err = abs(lam_h - lam_h2) / 3.0
    lam = (4 * lam_h2 - lam_h) / 3.0 if richardson else lam_h
    v = _eigenvector(op, lam_h)
    nodes = op.nodes
    if p.left.kind == "dirichlet":
        nodes = np.concatenate(([0.0], nodes))
        v = np.concatenate(([0.0], v))
    if p.right.kind == "dirichlet":
        nodes = np.concatenate((nodes, [p.R]))
        v = np.concatenate((v, [0.0]))
    v = v / np.max(np.abs(v))
    du = np.gradient(v, nodes, edge_order=2)
    return Eigenpair(float(lam), nodes, v, du, "fd_oracle", float(err), p)


def richardson_slope(values) -> float:
    """Observed order ``log2(|l1 - l2| / |l2 - l3|)`` from three successive halvings."""
    a, b, c = values
    return math.log2(abs(a - b) / abs(b - c))


# -- flat cylinder ------------------------------------------------------------------

def _cylinder_pencil(Rx, circumference, sigma, nx, ny):
    L = 2.0 * Rx
    hx, hy = L / nx, circumference / ny
    nxp = nx + 1
    N = nxp * ny
    mx = np.full(nxp, hx)
    mx[0] = mx[-1] = 0.5 * hx
    # upper banded storage with bandwidth ny, node index i*ny + j
    K = np.zeros((ny + 1, N))
    diag = K[ny]
    idx = np.arange(N)
    i = idx // ny
    j = idx % ny
    # x-edges between (i, j) and (i+1, j)
    cx = hy / hx
    diag += cx * ((i > 0).astype(float) + (i < nx).astype(float))
    K[0, ny:] = -cx
    # Robin at both ends in x
    diag += sigma * hy * ((i == 0) | (i == nx))
    # y-edges, periodic
    cy = mx[i] / hy
    diag += 2 * cy
    K[ny - 1, 1:] = np.where(j[1:] != 0, -cy[1:], 0.0)
    # wrap-around couples (i, 0) with (i, ny-1), offset ny-1
    wrap = np.where(j == ny - 1, -cy, 0.0)
    K[1, ny - 1:] += wrap[ny - 1:]
    M = mx[i] * hy
    return K, M


def cylinder2d_first_eigenvalue(Rx: float, circumference: float, sigma: float,
                                nx: int, ny: int) -> float:
    """First Robin eigenvalue of ``[0, 2 Rx]`` times a circle, by the 5-point scheme.

    Robin ``sigma`` at both ends in ``x``, periodic in ``y``.  The smallest
    eigenvalue is bisected on positive definiteness of ``K - mu M``, tested by
    a banded Cholesky factorisation.
    """
    if not (Rx > 0 and circumference > 0):
        raise ValueError("Rx and circumference must be positive")
    if nx < MIN_GRID or ny < MIN_GRID:
        raise GridTooCoarse(f"nx and ny must be at least {MIN_GRID}")
    if sigma == 0:
        return 0.0
    K, M = _cylinder_pencil(Rx, circumference, sigma, nx, ny)

    def definite(mu):
        A = K.copy()
        A[-1] -= mu * M
        try:
            cholesky_banded(A, lower=False, check_finite=False)
        except LinAlgError:
            return False
        return True

    L = 2.0 * Rx
    if sigma > 0:
        lo, hi = 0.0, 2 * sigma / L + 1e-9
    else:
        lo, hi = -sigma * sigma - 4 * abs(sigma) / L - 1.0, 0.0
    while not definite(lo):
        lo = 2 * lo - 1.0
        if lo < -1e300:
            raise GridTooCoarse("no lower bracket")
    while definite(hi):
        hi = 2 * hi + 1.0
        if hi > 1e300:
            raise GridTooCoarse("no upper bracket")
    while hi - lo > 1e-13 * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if definite(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
