# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Dormand-Prince shooting and Sturm inertia counts.

The pure-Python twin lives in ``_pykernels``; both must stay numerically
identical up to floating-point evaluation order.
"""

from libc.math cimport sin, cos, sinh, cosh, tan, tanh, sqrt, fabs, log, pow

cdef long MAX_STEPS = 2000000

# drift codes, mirrored in _pykernels
cdef enum:
    CONST = 0
    COMPARISON = 1
    POLE = 2


cdef inline double _drift(int code, const double* p, double x) nogil:
    cdef double m, K, H, R, r, k, s, ds, b, db
    if code == CONST:
        return p[0]
    if code == COMPARISON:
        m = p[0]; K = p[1]; H = p[2]; R = p[3]
        r = R - x if p[4] != 0.0 else x
        if K > 0.0:
            k = sqrt(K)
            s = sin(k * r) / k
            ds = cos(k * r)
        elif K < 0.0:
            k = sqrt(-K)
            s = sinh(k * r) / k
            ds = cosh(k * r)
        else:
            s = r
            ds = 1.0
        b = ds - H * s
        db = -K * s - H * ds
        if p[4] != 0.0:
            return -m * db / b
        return m * db / b
    # POLE: m * Phi'/Phi measured from the pole
    m = p[0]; k = p[2]
    if p[1] == 0.0:
        return m / x
    if p[1] == 1.0:
        return m * k / tanh(k * x)
    return m * k / tan(k * x)


cdef inline double _sign(double v) nogil:
    return 1.0 if v > 0.0 else (-1.0 if v < 0.0 else 0.0)


def shoot(int code, const double[::1] params, double lam, const double[::1] nodes,
          double u0, double p0, double rtol, double atol, double h0,
          double[::1] u_out, double[::1] p_out, double[::1] ls_out):
    """Integrate u'' + d(x) u' + lam u = 0 through ``nodes``.

    Returns ``(n_zeros, status)``; status 0 on success, 1 on step exhaustion,
    2 on a non-finite error estimate or a collapsed step.
    States at every node go into the output buffers, together with the log
    of the renormalisation factor accumulated so far.
    """
    cdef const double* p = &params[0]
    cdef Py_ssize_t nn = nodes.shape[0], k
    cdef double x = nodes[0], xend, h = h0, hprop, hstep
    cdef double u = u0, v = p0, un, vn, sc1, sc2, err, fac, nrm
    cdef double ku1, ku2, ku3, ku4, ku5, ku6, ku7
    cdef double kv1, kv2, kv3, kv4, kv5, kv6, kv7
    cdef double uu, vv, eu, ev, logscale = 0.0, sgn
    cdef long steps = 0
    cdef int nz = 0, status = 0
    cdef bint clamped

    sgn = _sign(u) if u != 0.0 else _sign(v)
    u_out[0] = u; p_out[0] = v; ls_out[0] = 0.0

    with nogil:
        ku1 = v
        kv1 = -_drift(code, p, x) * v - lam * u
        for k in range(1, nn):
            xend = nodes[k]
            while x < xend:
                steps += 1
                if steps > MAX_STEPS:
                    status = 1
                    break
                clamped = x + h >= xend
                hstep = xend - x if clamped else h

                uu = u + hstep * 0.2 * ku1
                vv = v + hstep * 0.2 * kv1
                ku2 = vv; kv2 = -_drift(code, p, x + 0.2 * hstep) * vv - lam * uu

                uu = u + hstep * (3.0 / 40.0 * ku1 + 9.0 / 40.0 * ku2)
                vv = v + hstep * (3.0 / 40.0 * kv1 + 9.0 / 40.0 * kv2)
                ku3 = vv; kv3 = -_drift(code, p, x + 0.3 * hstep) * vv - lam * uu

                uu = u + hstep * (44.0 / 45.0 * ku1 - 56.0 / 15.0 * ku2 + 32.0 / 9.0 * ku3)
                vv = v + hstep * (44.0 / 45.0 * kv1 - 56.0 / 15.0 * kv2 + 32.0 / 9.0 * kv3)
                ku4 = vv; kv4 = -_drift(code, p, x + 0.8 * hstep) * vv - lam * uu

                uu = u + hstep * (19372.0 / 6561.0 * ku1 - 25360.0 / 2187.0 * ku2
                                  + 64448.0 / 6561.0 * ku3 - 212.0 / 729.0 * ku4)
                vv = v + hstep * (19372.0 / 6561.0 * kv1 - 25360.0 / 2187.0 * kv2
                                  + 64448.0 / 6561.0 * kv3 - 212.0 / 729.0 * kv4)
                ku5 = vv; kv5 = -_drift(code, p, x + 8.0 / 9.0 * hstep) * vv - lam * uu

                uu = u + hstep * (9017.0 / 3168.0 * ku1 - 355.0 / 33.0 * ku2
                                  + 46732.0 / 5247.0 * ku3 + 49.0 / 176.0 * ku4
                                  - 5103.0 / 18656.0 * ku5)
                vv = v + hstep * (9017.0 / 3168.0 * kv1 - 355.0 / 33.0 * kv2
                                  + 46732.0 / 5247.0 * kv3 + 49.0 / 176.0 * kv4
                                  - 5103.0 / 18656.0 * kv5)
                ku6 = vv; kv6 = -_drift(code, p, x + hstep) * vv - lam * uu

                un = u + hstep * (35.0 / 384.0 * ku1 + 500.0 / 1113.0 * ku3
                                  + 125.0 / 192.0 * ku4 - 2187.0 / 6784.0 * ku5
                                  + 11.0 / 84.0 * ku6)
                vn = v + hstep * (35.0 / 384.0 * kv1 + 500.0 / 1113.0 * kv3
                                  + 125.0 / 192.0 * kv4 - 2187.0 / 6784.0 * kv5
                                  + 11.0 / 84.0 * kv6)
                ku7 = vn; kv7 = -_drift(code, p, x + hstep) * vn - lam * un

                eu = hstep * (71.0 / 57600.0 * ku1 - 71.0 / 16695.0 * ku3
                              + 71.0 / 1920.0 * ku4 - 17253.0 / 339200.0 * ku5
                              + 22.0 / 525.0 * ku6 - 1.0 / 40.0 * ku7)
                ev = hstep * (71.0 / 57600.0 * kv1 - 71.0 / 16695.0 * kv3
                              + 71.0 / 1920.0 * kv4 - 17253.0 / 339200.0 * kv5
                              + 22.0 / 525.0 * kv6 - 1.0 / 40.0 * kv7)
                sc1 = atol + rtol * (fabs(u) if fabs(u) > fabs(un) else fabs(un))
                sc2 = atol + rtol * (fabs(v) if fabs(v) > fabs(vn) else fabs(vn))
                err = sqrt(0.5 * ((eu / sc1) * (eu / sc1) + (ev / sc2) * (ev / sc2)))
                if err != err or hstep <= 1e-15 * fabs(x):
                    status = 2
                    break

                if err <= 1.0:
                    x = xend if clamped else x + hstep
                    if un != 0.0 and _sign(un) != sgn:
                        if sgn != 0.0:
                            nz += 1
                        sgn = _sign(un)
                    u = un; v = vn
                    ku1 = ku7; kv1 = kv7
                    nrm = fabs(u) + fabs(v)
                    if nrm > 16.0 or nrm < 0.0625:
                        u /= nrm; v /= nrm
                        ku1 /= nrm; kv1 /= nrm
                        logscale += log(nrm)
                    fac = 5.0 if err == 0.0 else 0.9 * pow(err, -0.2)
                    if fac > 5.0:
                        fac = 5.0
                    hprop = hstep * fac
                    # a clamped step must not shrink the proposal for the next segment
                    if not (clamped and hprop < h):
                        h = hprop
                else:
                    fac = 0.9 * pow(err, -0.2)
                    if fac < 0.2:
                        fac = 0.2
                    h = hstep * fac
            if status:
                break
            u_out[k] = u; p_out[k] = v; ls_out[k] = logscale
    return nz, status


def sturm_count(const double[::1] diag, const double[::1] off,
                const double[::1] mass, double mu):
    """Number of negative pivots of the tridiagonal pencil ``T - mu*M``."""
    cdef Py_ssize_t n = diag.shape[0], i
    cdef double q, pivmin = 1e-300
    cdef int count = 0
    with nogil:
        q = diag[0] - mu * mass[0]
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
        for i in range(1, n):
            q = diag[i] - mu * mass[i] - off[i - 1] * off[i - 1] / q
            if fabs(q) < pivmin:
                q = -pivmin
            if q < 0.0:
                count += 1
    return count
