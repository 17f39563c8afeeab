"""Frozen reference values from independent high-precision computations.

Each constant was produced by :func:`regenerate` (mpmath at 40 digits,
bracketed root finding on the defining equations, closed-form quadrature)
and is frozen here so the test suite does not depend on mpmath.
"""

FLAT_R1_S1 = 0.740173884394967042           # c^2, c tan c = 1
FLAT_R1_SM1 = -1.43922883989064515          # -x^2, coth x = x
FLAT_R1_SM1_ROOT = 1.19967864025773383
J01_SQUARED = 5.78318596294678452           # first zero of J0, squared
SINH_1 = 1.17520119364380146
SINH_2 = 3.62686040784701877
SINH_MOMENT = 1.64493406684822644           # int_0^inf r^2/sinh(r)^2 dr = pi^2/6
ATANH_INV_SQRT2 = 0.881373587019543025
DRIFT_A1_S05_R1 = 1.0                       # seam: residual vanishes at A^2
DRIFT_A1_S03_R2 = 0.533441640324261661
DRIFT_A1_S2_R1 = 2.70705297555092248
DRIFT_A1_S2_R1_ROOT = 1.30654237418880620
# hyperbolic 3-ball: v = sin(mu r)/sinh(r), mu cot(mu R) = coth R - sigma
HYP3_S2_R30 = 1.01027239513933780


def regenerate():
    """Recompute every constant with mpmath; returns a dict keyed like the module globals."""
    import mpmath as mp

    mp.mp.dps = 40
    out = {}
    c = mp.findroot(lambda x: x * mp.tan(x) - 1, 0.86)
    out["FLAT_R1_S1"] = c ** 2
    x = mp.findroot(lambda x: mp.coth(x) - x, 1.2)
    out["FLAT_R1_SM1_ROOT"] = x
    out["FLAT_R1_SM1"] = -x ** 2
    out["J01_SQUARED"] = mp.besseljzero(0, 1) ** 2
    out["SINH_1"] = mp.sinh(1)
    out["SINH_2"] = mp.sinh(2)
    out["SINH_MOMENT"] = mp.quad(lambda r: r ** 2 / mp.sinh(r) ** 2, [0, 1, mp.inf])
    out["ATANH_INV_SQRT2"] = mp.atanh(1 / mp.sqrt(2))

    def drift(A, s, R, guess):
        def f(lam):
            q = mp.sqrt(A * A - lam)
            return lam - s * (A + q * mp.coth(q * R))
        return mp.findroot(f, guess)

    out["DRIFT_A1_S05_R1"] = mp.mpf(1)
    out["DRIFT_A1_S03_R2"] = drift(1, mp.mpf("0.3"), 2, 0.5)
    x1 = mp.findroot(lambda x: x * x - 2 * x * mp.cot(x) - 1, 1.3)
    out["DRIFT_A1_S2_R1_ROOT"] = x1
    out["DRIFT_A1_S2_R1"] = 1 + x1 ** 2
    R = 30
    # x = mu R lies in (pi/2, pi) where x cot x decreases from 0 to -inf
    x = mp.findroot(lambda x: x * mp.cos(x) - R * (mp.coth(R) - 2) * mp.sin(x),
                    (mp.pi / 2, mp.pi - mp.mpf("1e-30")), solver="anderson")
    out["HYP3_S2_R30"] = 1 + (x / R) ** 2
    return {k: float(v) for k, v in out.items()}
