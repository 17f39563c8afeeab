"""Compiled versus pure-Python kernels on representative solves.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.  Prints the best
wall time per backend and the speed-up; both backends must agree exactly.
"""

import argparse
import time

from robinspec import (
    BallWeight, ComparisonWeight, CurvatureData, DriftWeight, RobinProblem, WarpingFunction,
    available_backends, fd_first_eigenvalue, first_eigenvalue,
)

CASES = {
    "flat shooting": (RobinProblem.standard(
        ComparisonWeight(1.0, curvature=CurvatureData(2, 0.0, 0.0)), 1.0), "shoot"),
    "hyperbolic ball R=30": (RobinProblem.standard(
        BallWeight(30.0, warping=WarpingFunction.hyperbolic(), n=3), 2.0), "shoot"),
    "comparison K=-1": (RobinProblem.standard(
        ComparisonWeight(1.0, curvature=CurvatureData(3, -1.0, 0.5)), -1.0), "shoot"),
    "drift": (RobinProblem.standard(DriftWeight(2.0, A=1.0), 0.5), "shoot"),
    "fd sturm n=1024": (RobinProblem.standard(
        ComparisonWeight(1.0, curvature=CurvatureData(2, 0.0, 0.0)), 1.0), "fd"),
}


def _run(problem, kind, backend):
    if kind == "fd":
        return fd_first_eigenvalue(problem, 1024, backend=backend).lam
    return first_eigenvalue(problem, backend=backend).lam


def best_time(problem, kind, backend, repeat):
    best, lam = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        lam = _run(problem, kind, backend)
        best = min(best, time.perf_counter() - t)
    return best, lam


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    print(f"{'case':<24}" + "".join(f"{b:>12}" for b in backends) + f"{'speed-up':>10}")
    for name, (problem, kind) in CASES.items():
        times, lams = [], []
        for b in backends:
            t, lam = best_time(problem, kind, b, args.repeat)
            times.append(t)
            lams.append(lam)
        if len(set(lams)) != 1:
            raise SystemExit(f"{name}: backends disagree: {lams}")
        ratio = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
        print(f"{name:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + ratio)


if __name__ == "__main__":
    main()
