"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same algorithms, same constants, same return conventions.  Used when the
extension is not built or ``ROBINSPEC_PURE_PYTHON`` is set.
"""

import math

MAX_STEPS = 2_000_000

CONST = 0
COMPARISON = 1
POLE = 2


def make_drift(code, params):
    """Python closure evaluating the drift encoded by ``(code, params)``."""
    p = [float(v) for v in params]
    if code == CONST:
        c = p[0]
        return lambda x: c
    if code == COMPARISON:
        m, K, H, R, reflect = p[:5]

        def drift(x):
            r = R - x if reflect else x
            if K > 0.0:
                k = math.sqrt(K)
                s, ds = math.sin(k * r) / k, math.cos(k * r)
            elif K < 0.0:
                k = math.sqrt(-K)
                s, ds = math.sinh(k * r) / k, math.cosh(k * r)
            else:
                s, ds = r, 1.0
            val = m * (-K * s - H * ds) / (ds - H * s)
            return -val if reflect else val

        return drift
    if code == POLE:
        m, kind, k = p[:3]
        if kind == 0.0:
            return lambda x: m / x
        if kind == 1.0:
            return lambda x: m * k / math.tanh(k * x)
        return lambda x: m * k / math.tan(k * x)
    raise ValueError(f"unknown drift code {code}")


def shoot(drift, lam, nodes, u0, p0, rtol, atol, h0, u_out, p_out, ls_out):
    x = float(nodes[0])
    h = h0
    u, v = u0, p0
    logscale = 0.0
    nz = 0
    steps = 0
    sgn = math.copysign(1.0, u) if u != 0.0 else math.copysign(1.0, v)
    u_out[0], p_out[0], ls_out[0] = u, v, 0.0

    ku1 = v
    kv1 = -drift(x) * v - lam * u
    for k in range(1, len(nodes)):
        xend = float(nodes[k])
        while x < xend:
            steps += 1
            if steps > MAX_STEPS:
                return nz, 1
            clamped = x + h >= xend
            hs = xend - x if clamped else h

            uu = u + hs * 0.2 * ku1
            vv = v + hs * 0.2 * kv1
            ku2 = vv
            kv2 = -drift(x + 0.2 * hs) * vv - lam * uu

            uu = u + hs * (3.0 / 40.0 * ku1 + 9.0 / 40.0 * ku2)
            vv = v + hs * (3.0 / 40.0 * kv1 + 9.0 / 40.0 * kv2)
            ku3 = vv
            kv3 = -drift(x + 0.3 * hs) * vv - lam * uu

            uu = u + hs * (44.0 / 45.0 * ku1 - 56.0 / 15.0 * ku2 + 32.0 / 9.0 * ku3)
            vv = v + hs * (44.0 / 45.0 * kv1 - 56.0 / 15.0 * kv2 + 32.0 / 9.0 * kv3)
            ku4 = vv
            kv4 = -drift(x + 0.8 * hs) * vv - lam * uu

            uu = u + hs * (19372.0 / 6561.0 * ku1 - 25360.0 / 2187.0 * ku2
                           + 64448.0 / 6561.0 * ku3 - 212.0 / 729.0 * ku4)
            vv = v + hs * (19372.0 / 6561.0 * kv1 - 25360.0 / 2187.0 * kv2
                           + 64448.0 / 6561.0 * kv3 - 212.0 / 729.0 * kv4)
            ku5 = vv
            kv5 = -drift(x + 8.0 / 9.0 * hs) * vv - lam * uu

            uu = u + hs * (9017.0 / 3168.0 * ku1 - 355.0 / 33.0 * ku2
                           + 46732.0 / 5247.0 * ku3 + 49.0 / 176.0 * ku4
                           - 5103.0 / 18656.0 * ku5)
            vv = v + hs * (9017.0 / 3168.0 * kv1 - 355.0 / 33.0 * kv2
                           + 46732.0 / 5247.0 * kv3 + 49.0 / 176.0 * kv4
                           - 5103.0 / 18656.0 * kv5)
            ku6 = vv
            kv6 = -drift(x + hs) * vv - lam * uu

            un = u + hs * (35.0 / 384.0 * ku1 + 500.0 / 1113.0 * ku3
                           + 125.0 / 192.0 * ku4 - 2187.0 / 6784.0 * ku5
                           + 11.0 / 84.0 * ku6)
            vn = v + hs * (35.0 / 384.0 * kv1 + 500.0 / 1113.0 * kv3
                           + 125.0 / 192.0 * kv4 - 2187.0 / 6784.0 * kv5
                           + 11.0 / 84.0 * kv6)
            ku7 = vn
            kv7 = -drift(x + hs) * vn - lam * un

            eu = hs * (71.0 / 57600.0 * ku1 - 71.0 / 16695.0 * ku3
                       + 71.0 / 1920.0 * ku4 - 17253.0 / 339200.0 * ku5
                       + 22.0 / 525.0 * ku6 - 1.0 / 40.0 * ku7)
            ev = hs * (71.0 / 57600.0 * kv1 - 71.0 / 16695.0 * kv3
                       + 71.0 / 1920.0 * kv4 - 17253.0 / 339200.0 * kv5
                       + 22.0 / 525.0 * kv6 - 1.0 / 40.0 * kv7)
            sc1 = atol + rtol * max(abs(u), abs(un))
            sc2 = atol + rtol * max(abs(v), abs(vn))
            err = math.sqrt(0.5 * ((eu / sc1) ** 2 + (ev / sc2) ** 2))
            if err != err or hs <= 1e-15 * abs(x):
                return nz, 2

            if err <= 1.0:
                x = xend if clamped else x + hs
                if un != 0.0 and math.copysign(1.0, un) != sgn:
                    nz += 1
                    sgn = math.copysign(1.0, un)
                u, v = un, vn
                ku1, kv1 = ku7, kv7
                nrm = abs(u) + abs(v)
                if nrm > 16.0 or nrm < 0.0625:
                    u /= nrm
                    v /= nrm
                    ku1 /= nrm
                    kv1 /= nrm
                    logscale += math.log(nrm)
                fac = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
                hprop = hs * fac
                if not (clamped and hprop < h):
                    h = hprop
            else:
                h = hs * max(0.2, 0.9 * err ** -0.2)
        u_out[k], p_out[k], ls_out[k] = u, v, logscale
    return nz, 0


def sturm_count(diag, off, mass, mu):
    pivmin = 1e-300
    count = 0
    q = diag[0] - mu * mass[0]
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, len(diag)):
        q = diag[i] - mu * mass[i] - off[i - 1] * off[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count
