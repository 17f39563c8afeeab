"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``ROBINSPEC_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

import numpy as np

from . import _pykernels

_native = None
if not os.environ.get("ROBINSPEC_PURE_PYTHON"):
    try:
        from . import _kernels as _native
    except ImportError:  # extension not built
        _native = None

BACKEND = "native" if _native is not None else "python"


def available_backends():
    return ("native", "python") if _native is not None else ("python",)


def _resolve(backend):
    backend = backend or BACKEND
    if backend == "native" and _native is None:
        raise RuntimeError("compiled kernels are not available in this build")
    if backend not in ("native", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def shoot(native_args, drift, lam, nodes, u0, p0, rtol, atol, h0, backend=None):
    """Run one shot.  ``native_args`` is ``(code, params)`` or None.

    Returns ``(u, p, logscale, n_zeros, status)`` with arrays over ``nodes``.
    """
    backend = _resolve(backend)
    nodes = np.ascontiguousarray(nodes, dtype=float)
    u_out = np.empty_like(nodes)
    p_out = np.empty_like(nodes)
    ls_out = np.empty_like(nodes)
    if backend == "native" and native_args is not None:
        code, params = native_args
        nz, status = _native.shoot(
            int(code), np.ascontiguousarray(params, dtype=float), float(lam), nodes,
            float(u0), float(p0), float(rtol), float(atol), float(h0),
            u_out, p_out, ls_out,
        )
    else:
        if drift is None:
            drift = _pykernels.make_drift(*native_args)
        nz, status = _pykernels.shoot(
            drift, float(lam), nodes.tolist(), float(u0), float(p0),
            float(rtol), float(atol), float(h0), u_out, p_out, ls_out,
        )
    return u_out, p_out, ls_out, nz, status


def sturm_count(diag, off, mass, mu, backend=None):
    backend = _resolve(backend)
    if backend == "native":
        return _native.sturm_count(
            np.ascontiguousarray(diag, dtype=float),
            np.ascontiguousarray(off, dtype=float),
            np.ascontiguousarray(mass, dtype=float),
            float(mu),
        )
    return _pykernels.sturm_count(
        np.asarray(diag, dtype=float).tolist(),
        np.asarray(off, dtype=float).tolist(),
        np.asarray(mass, dtype=float).tolist(),
        float(mu),
    )
