"""Acceptance criteria at their stated tolerances.

Each criterion is a function returning ``(ok, detail)``; the tests print one
``PASS``/``FAIL`` line per criterion to the terminal.  Run the file directly
(``python tests/test_acceptance.py``) for the summary without pytest.

Criterion 4 as literally stated (lower envelope with the stated ``c0``) is
false: exact solutions fall below it.  It stays red and is marked
``xfail(strict=True)``; the corrected constant is checked separately.
"""

import math
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracle_values as ov  # noqa: E402
from robinspec import closed_form as cf  # noqa: E402
from robinspec import verify as vf  # noqa: E402
from robinspec.fd_oracle import fd_first_eigenvalue  # noqa: E402
from robinspec.geometry import (  # noqa: E402
    ComparisonWeight, CurvatureData, WarpingFunction, build_model_domain, first_weight_zero,
)
from robinspec.sl_solver import RobinProblem, ball_first_eigenvalue, first_eigenvalue  # noqa: E402

HYP = WarpingFunction.hyperbolic()


def _flat(R, sigma):
    return RobinProblem.standard(ComparisonWeight(R, curvature=CurvatureData(2, 0.0, 0.0)), sigma)


def _timed(f):
    t = time.perf_counter()
    out = f()
    return out, time.perf_counter() - t


def criterion_1():
    p = _flat(1.0, 1.0)
    first_eigenvalue(p)  # warm-up
    e, ts = _timed(lambda: first_eigenvalue(p))
    f, tf = _timed(lambda: fd_first_eigenvalue(p, 4096))
    ds, df = abs(e.lam - ov.FLAT_R1_S1), abs(f.lam - ov.FLAT_R1_S1)
    ok = ds <= 1e-9 and df <= 1e-6 and ts <= 0.05 and tf <= 0.05
    return ok, f"shooting |d|={ds:.2e} ({ts * 1e3:.1f} ms), fd@4096 |d|={df:.2e} ({tf * 1e3:.1f} ms)"


def criterion_2():
    worst_a = worst_b = math.inf
    count = 0
    for s in (0.1, 1.0, 10.0, 100.0):
        for R in (0.1, 0.5, 1.0, 2.0, 10.0):
            lam = first_eigenvalue(_flat(R, s)).lam
            cor = cf.corollary_lower_bound(R, s)
            kov, _ = cf.kovarik_bounds(R, s)
            worst_a, worst_b = min(worst_a, lam - cor), min(worst_b, cor - kov)
            count += lam - cor > 0 and cor - kov > 0
    return count == 20, f"{count}/20 strict; min margins {worst_a:.3e}, {worst_b:.3e}"


def criterion_3():
    reps = []
    radii = (1.0, 2.0, 5.0, 10.0, 20.0, 30.0)
    for n in (2, 3, 4):
        for d in (0.1, 1.0, 10.0):
            reps += vf.check_mckean(n, 0.5 * (n - 1) + d, radii, tolerance=1e-8)
    bad = vf.failures(reps)
    lows = [r.margin for r in reps if "part" not in r.params]
    return not bad, f"{len(reps)} reports, {len(bad)} failed; min margin {min(lows):.3e}"


def _criterion_4(certified):
    rows, ok = [], True
    for n in (2, 3):
        s = 0.5 * (n - 1) + 1.0
        env = cf.asymptotic_envelope(n, s)
        for R in (float(math.ceil(env.R0)), 10.0, 20.0, 30.0):
            lam = ball_first_eigenvalue(HYP, n, R, s).lam
            lo, hi = env.lower(R, certified=certified), env.upper(R)
            if not lo <= lam <= hi:
                ok = False
                rows.append(f"n={n} R={R:g}: lam-lower={lam - lo:.2e}")
        A2 = env.A ** 2
        c0 = env.c0_certified if certified else env.c0
        dev = abs(30.0 ** 2 * (lam - A2) - math.pi ** 2)
        if dev > (env.C + c0) / 30.0:
            ok = False
            rows.append(f"n={n} rate {dev:.3e} > {(env.C + c0) / 30:.3e}")
    return ok, ("; ".join(rows) if rows else "all radii inside the envelope, rate holds")


def criterion_4():
    return _criterion_4(certified=False)


def criterion_4_certified():
    return _criterion_4(certified=True)


def criterion_5():
    reps, cases = [], set()
    for K, H in vf.MODEL_CASES:
        cd = CurvatureData(3, K, H)
        R = min(1.0, 0.9 * first_weight_zero(cd))
        cases.add(build_model_domain(cd, R).case.name)
        for s in (1.0, -1.0):
            reps.append(vf.check_model_domain(cd, R, s, tolerance=1e-6))
    worst = max(-r.margin for r in reps)
    ok = not vf.failures(reps) and len(cases) == 4
    return ok, f"{len(reps)} checks over {len(cases)} cases; worst deviation {worst:.2e}"


def criterion_6():
    reps = [vf.check_ball_equality(2, 0.0, 1.0, 1.0), vf.check_ball_equality(2, 1.0, 1.0, 1.0)]
    return not vf.failures(reps), "deviations " + ", ".join(f"{-r.margin:.1e}" for r in reps)


def criterion_7():
    reps = vf.check_cylinder(1.0, 1.0, ((64, 16), (128, 32), (256, 64)))
    d = {r.params["part"]: r for r in reps}
    rel = abs(d["agreement"].computed - d["agreement"].bound) / d["agreement"].bound
    return not vf.failures(reps), f"rel gap {rel:.2e}, observed order {d['richardson'].computed:.3f}"


def criterion_8():
    reps = []
    for w in ("hyperbolic", "euclidean"):
        for n in (2, 3):
            for s in (1.0, -1.0):
                reps += vf.check_ball_monotonicity(w, n, (1.0, 2.0, 4.0, 8.0), s)
    worst = min(r.margin for r in reps)
    ok = not vf.failures(reps) and worst > 1e-10
    return ok, f"{len(reps)} steps, min margin {worst:.3e}"


def criterion_9():
    reps = []
    for spec, s in vf.SHAPE_PROBLEMS:
        reps += vf.check_eigenfunction_shape(spec, s, 1e-8)
    pinch = sum(r.params["part"] == "log_derivative_pinch" for r in reps)
    return not vf.failures(reps), f"{len(vf.SHAPE_PROBLEMS)} problems, {len(reps)} reports ({pinch} pinch)"


def criterion_10():
    lam = first_eigenvalue(_flat(1.0, -1.0)).lam
    ok = lam < -1 and abs(lam - ov.FLAT_R1_SM1) <= 1e-9
    reps = []
    for n in (2, 3):
        for s in (-1.0, -2.0):
            reps += vf.check_mckean(n, s, (1.0, 2.0, 5.0, 10.0))
    ok = ok and not vf.failures(reps) and all(r.relation == "<=" for r in reps)
    return ok, f"flat lam={lam:.10f}; {len(reps)} ball ceilings, min margin {min(r.margin for r in reps):.3e}"


def criterion_11():
    reps = vf.check_dirichlet_limit(1.0, [10.0 ** k for k in range(1, 7)], 1e-5)
    final = [r for r in reps if r.params["part"] == "final"][0]
    return not vf.failures(reps), f"final gap {final.computed:.3e}"


def criterion_12():
    reps = []
    grid = (0.5, 1.0, 2.0)
    for A in grid:
        for s in grid:
            for R in grid:
                reps += vf.check_drift_brackets(A, s, R, 1e-10)
    res = [r.computed for r in reps if r.params["part"] == "residual"]
    return not vf.failures(reps), f"{len(reps)} reports, {len(res)} residuals, max {max(res):.1e}"


CRITERIA = [
    (1, "flat closed form", criterion_1),
    (2, "explicit bound dominance", criterion_2),
    (3, "McKean certification", criterion_3),
    (4, "two-term envelope (stated c0)", criterion_4),
    (5, "model-domain equality", criterion_5),
    (6, "ball equality case", criterion_6),
    (7, "flat-cylinder sharpness", criterion_7),
    (8, "domain monotonicity", criterion_8),
    (9, "eigenfunction shape", criterion_9),
    (10, "negative-sigma ceilings", criterion_10),
    (11, "Dirichlet limit", criterion_11),
    (12, "drift brackets", criterion_12),
]


def _line(num, name, ok, detail):
    return f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.fixture
def report(capsys):
    def emit(num, name, ok, detail):
        with capsys.disabled():
            print("\n" + _line(num, name, ok, detail))
    return emit


@pytest.mark.parametrize("num,name,func", [c for c in CRITERIA if c[0] != 4],
                         ids=[f"criterion_{c[0]}" for c in CRITERIA if c[0] != 4])
def test_criterion(num, name, func, report):
    ok, detail = func()
    report(num, name, ok, detail)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="stated envelope constant is too small; exact solutions violate it")
def test_criterion_4_as_stated(report):
    ok, detail = criterion_4()
    report(4, "two-term envelope (stated c0)", ok, detail)
    assert ok, detail


def test_criterion_4_with_certified_constant(report):
    ok, detail = criterion_4_certified()
    report("4c", "two-term envelope (certified c0)", ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, func in CRITERIA + [("4c", "two-term envelope (certified c0)", criterion_4_certified)]:
        ok, detail = func()
        failed += not ok
        print(_line(num, name, ok, detail))
    sys.exit(1 if failed else 0)
