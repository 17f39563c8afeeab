"""Command-line front end.

Commands: ``compute``, ``bounds``, ``verify`` and ``sweep``.  Problems come
from flags or a TOML file given with ``--config``; flags override the file.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 solver error.  Errors are also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional

import numpy as np

from . import closed_form as cf
from .fd_oracle import GridTooCoarse, fd_first_eigenvalue
from .geometry import (
    BallWeight, ComparisonWeight, CurvatureData, DomainError, DriftWeight, RadiusTooLarge,
    WarpingFunction,
)
from .sl_solver import DEFAULT_ATOL, DEFAULT_RTOL, BracketFailure, NoConvergence, RobinProblem, first_eigenvalue
from . import verify as vf

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

SCHEMA = "robinspec.bound_report"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# -- configuration ----------------------------------------------------------------

@dataclass
class ProblemSection:
    kind: str = "flat"          # flat | comparison | ball | drift
    R: float = 1.0
    sigma: float = 1.0
    n: int = 2
    K: float = 0.0
    H: float = 0.0
    warping: str = "hyperbolic"  # ball only
    kappa: float = 1.0
    A: float = 1.0               # drift only


@dataclass
class SolverSection:
    method: str = "shooting"     # shooting | fd
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    grid_n: int = 1024
    samples: int = 0


@dataclass
class ProblemConfig:
    problem: ProblemSection = field(default_factory=ProblemSection)
    solver: SolverSection = field(default_factory=SolverSection)

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemConfig":
        unknown = set(data) - {"problem", "solver"}
        if unknown:
            raise ConfigError(f"unknown section(s): {sorted(unknown)}")
        return cls(_section(ProblemSection, data.get("problem", {})),
                   _section(SolverSection, data.get("solver", {}))).validated()

    @classmethod
    def from_toml(cls, text: str) -> "ProblemConfig":
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self):
        return {"problem": asdict(self.problem), "solver": asdict(self.solver)}

    def to_toml(self) -> str:
        lines = []
        for name, sec in self.to_dict().items():
            lines.append(f"[{name}]")
            for k, v in sec.items():
                lines.append(f"{k} = {_toml_value(v)}")
            lines.append("")
        return "\n".join(lines)

    def validated(self) -> "ProblemConfig":
        p, s = self.problem, self.solver
        if p.kind not in ("flat", "comparison", "ball", "drift"):
            raise ConfigError(f"unknown problem kind {p.kind!r}")
        if p.warping not in ("euclidean", "hyperbolic", "spherical"):
            raise ConfigError(f"unknown warping {p.warping!r}")
        if s.method not in ("shooting", "fd"):
            raise ConfigError(f"unknown method {s.method!r}")
        if not (p.R > 0 and math.isfinite(p.R)):
            raise ConfigError("R must be positive and finite")
        if not math.isfinite(p.sigma):
            raise ConfigError("sigma must be finite")
        if p.n < 2:
            raise ConfigError("n must be at least 2")
        if not (s.rtol > 0 and s.atol > 0):
            raise ConfigError("tolerances must be positive")
        if s.samples < 0:
            raise ConfigError("samples must be non-negative")
        return self


def _section(cls, data):
    if not isinstance(data, dict):
        raise ConfigError(f"section for {cls.__name__} must be a table")
    names = {f.name: f for f in fields(cls)}
    unknown = set(data) - set(names)
    if unknown:
        raise ConfigError(f"unknown key(s): {sorted(unknown)}")
    kwargs = {}
    for k, v in data.items():
        typ = type(getattr(cls(), k))
        if typ is float and isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if not isinstance(v, typ) or isinstance(v, bool):
            raise ConfigError(f"{k} must be of type {typ.__name__}")
        kwargs[k] = v
    return cls(**kwargs)


def _toml_value(v):
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


# -- problem construction --------------------------------------------------------------

def _warping(p: ProblemSection):
    if p.warping == "euclidean":
        return WarpingFunction.euclidean()
    if p.warping == "hyperbolic":
        return WarpingFunction.hyperbolic(p.kappa)
    return WarpingFunction.spherical(p.kappa)


def build_problem(cfg: ProblemConfig) -> RobinProblem:
    p = cfg.problem
    if p.kind == "flat":
        w = ComparisonWeight(p.R, curvature=CurvatureData(2, 0.0, 0.0))
    elif p.kind == "comparison":
        w = ComparisonWeight(p.R, curvature=CurvatureData(p.n, p.K, p.H))
    elif p.kind == "ball":
        wf = _warping(p)
        if not p.R < wf.T:
            raise ConfigError("ball radius exceeds the warping's range")
        w = BallWeight(p.R, warping=wf, n=p.n)
    else:
        w = DriftWeight(p.R, A=p.A)
    return RobinProblem.standard(w, p.sigma)


def solve(cfg: ProblemConfig):
    prob = build_problem(cfg)
    s = cfg.solver
    if s.method == "fd":
        return fd_first_eigenvalue(prob, s.grid_n)
    return first_eigenvalue(prob, rtol=s.rtol, atol=s.atol)


def bound_rows(cfg: ProblemConfig, lam: float) -> list:
    """Explicit bounds applicable to the configured problem as ``(name, value, kind)``.

    ``kind`` is ``lower`` or ``upper``; the row margin is positive when the
    computed eigenvalue respects the bound.
    """
    p = cfg.problem
    rows = []
    if p.kind == "flat" or (p.kind == "comparison" and p.K == 0 and p.H == 0):
        if p.sigma > 0:
            rows.append(("corollary", cf.corollary_lower_bound(p.R, p.sigma), "lower"))
            rows.append(("kovarik_lower", cf.kovarik_bounds(p.R, p.sigma)[0], "lower"))
            rows.append(("dirichlet", math.pi ** 2 / (4 * p.R ** 2), "upper"))
        elif p.sigma < 0:
            rows.append(("neg_sigma_ceiling", -p.sigma ** 2, "upper"))
    if p.kind == "ball" and p.warping == "hyperbolic" and p.sigma != 0:
        mk = cf.mckean_bound(p.n, p.sigma, p.kappa)
        rows.append(("mckean", mk.value, mk.kind))
        if p.kappa == 1.0 and p.sigma > 0:
            rows.append(("envelope_upper", cf.dirichlet_envelope(p.n, p.R)[1], "upper"))
            if p.sigma > 0.5 * (p.n - 1):
                env = cf.asymptotic_envelope(p.n, p.sigma)
                if p.R >= env.R0:
                    rows.append(("envelope_lower", env.lower(p.R, certified=True), "lower"))
    if p.kind == "drift":
        if p.sigma > 0:
            rows.append(("drift_floor", cf.drift_floor(p.A, p.sigma), "lower"))
        elif p.sigma < 0:
            rows.append(("drift_ceiling", cf.drift_ceiling(p.A, p.sigma), "upper"))
    return [(name, val, kind, lam - val if kind == "lower" else val - lam) for name, val, kind in rows]


# -- output ----------------------------------------------------------------------------

def _num(v):
    """Shortest round-trip rendering for machine formats."""
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def _table_num(v):
    return format(v, ".12g") if isinstance(v, float) else str(v)


def render(records: list, columns: list, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps({c: r.get(c) for c in columns}) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_num(r.get(c)) for c in columns])
        return buf.getvalue()
    cells = [[_table_num(r.get(c)) if r.get(c) is not None else "" for c in columns] for r in records]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(columns, widths))]
    lines += ["  ".join(v.rjust(wd) for v, wd in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "exit_code": code, "message": message}) + "\n")
    return code


# -- commands ------------------------------------------------------------------------

def _config_from_args(args) -> ProblemConfig:
    cfg = ProblemConfig()
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                cfg = ProblemConfig.from_toml(fh.read().decode("utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    p, s = cfg.problem, cfg.solver
    if args.weight:
        p = replace(p, kind=args.weight)
    if args.ball:
        p = replace(p, kind="ball", warping=args.ball)
    for name in ("R", "sigma", "n", "K", "H", "kappa", "A"):
        v = getattr(args, name)
        if v is not None:
            p = replace(p, **{name: v})
    if args.method:
        s = replace(s, method=args.method)
    if args.grid_n is not None:
        s = replace(s, grid_n=args.grid_n)
    if args.tol is not None:
        s = replace(s, rtol=args.tol, atol=args.tol * 1e-2)
    if getattr(args, "samples", None) is not None:
        s = replace(s, samples=args.samples)
    return ProblemConfig(p, s).validated()


def cmd_compute(args) -> int:
    cfg = _config_from_args(args)
    if args.dump_config:
        _emit(cfg.to_toml(), args.out)
        return EXIT_OK
    e = solve(cfg)
    rec = dict(kind=cfg.problem.kind, R=cfg.problem.R, sigma=cfg.problem.sigma,
               **{"lambda": e.lam}, err_estimate=e.err_estimate, solver_tag=e.solver_tag)
    text = render([rec], list(rec), args.format)
    if cfg.solver.samples:
        idx = np.unique(np.linspace(0, len(e.nodes) - 1, cfg.solver.samples).round().astype(int))
        rows = [dict(r=float(e.nodes[i]), u=float(e.u[i]), du=float(e.du[i])) for i in idx]
        text += render(rows, ["r", "u", "du"], "csv")
    _emit(text, args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    cfg = _config_from_args(args)
    e = solve(cfg)
    recs = [dict(name="computed", value=e.lam, kind="eigenvalue", margin=None)]
    recs += [dict(name=n, value=v, kind=k, margin=m) for n, v, k, m in bound_rows(cfg, e.lam)]
    _emit(render(recs, ["name", "value", "kind", "margin"], args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else vf.DEFAULT_TOL
    reports = vf.run_suite(args.suite, tol)
    out = args.out or f"robinspec_{args.suite}.jsonl"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"schema": SCHEMA, "version": SCHEMA_VERSION, "suite": args.suite,
                             "tolerance": tol, "count": len(reports)}) + "\n")
        for r in reports:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    summary = {}
    for r in reports:
        row = summary.setdefault(r.theorem_id.value, dict(theorem=r.theorem_id.value, reports=0,
                                                          failed=0, informational_failed=0))
        row["reports"] += 1
        if not r.passed:
            row["informational_failed" if r.informational else "failed"] += 1
    cols = ["theorem", "reports", "failed", "informational_failed"]
    sys.stdout.write(render([summary[k] for k in sorted(summary)], cols, args.format))
    return EXIT_FAIL if vf.failures(reports) else EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config_from_args(args)
    if args.num < 2:
        raise ConfigError("--num must be at least 2")
    if args.log:
        if args.start * args.stop <= 0:
            raise ConfigError("logarithmic sweeps need endpoints of one sign")
        vals = np.sign(args.start) * np.geomspace(abs(args.start), abs(args.stop), args.num)
    else:
        vals = np.linspace(args.start, args.stop, args.num)
    recs = []
    names = []
    for v in vals:
        c = ProblemConfig(replace(cfg.problem, **{args.axis: float(v)}), cfg.solver).validated()
        e = solve(c)
        rec = {args.axis: float(v), "lambda": e.lam}
        for n, val, _, _ in bound_rows(c, e.lam):
            rec[n] = val
            if n not in names:
                names.append(n)
        recs.append(rec)
    _emit(render(recs, [args.axis, "lambda"] + names, args.format or "csv"), args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--tol", type=float, help="tolerance (verify: certification; others: integrator rtol)")
    g.add_argument("--grid-n", type=int, dest="grid_n", help="cells for the finite-difference oracle")
    g.add_argument("--out", help="write output to this file")
    g.add_argument("--format", choices=("csv", "json", "table"),
                   help="output format (default: csv for sweep, table otherwise)")

    prob = argparse.ArgumentParser(add_help=False)
    q = prob.add_argument_group("problem")
    q.add_argument("--config", help="TOML file with [problem] and [solver] tables")
    q.add_argument("--weight", choices=("flat", "comparison", "drift"))
    q.add_argument("--ball", choices=("euclidean", "hyperbolic", "spherical"))
    q.add_argument("--R", type=float)
    q.add_argument("--sigma", type=float)
    q.add_argument("--n", type=int)
    q.add_argument("--K", type=float)
    q.add_argument("--H", type=float)
    q.add_argument("--kappa", type=float)
    q.add_argument("--A", type=float)
    q.add_argument("--method", choices=("shooting", "fd"))

    parser = argparse.ArgumentParser(prog="robinspec", description="First Robin eigenvalues and bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common, prob], help="first eigenvalue of one problem")
    c.add_argument("--samples", type=int, help="append this many eigenfunction samples as CSV")
    c.add_argument("--dump-config", action="store_true", help="print the resolved config as TOML")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("bounds", parents=[common, prob], help="eigenvalue against explicit bounds")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run a certification suite")
    v.add_argument("suite", choices=sorted(vf.SUITES) + ["all"])
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common, prob], help="eigenvalue along one parameter")
    s.add_argument("--axis", choices=("sigma", "R"), required=True)
    s.add_argument("--start", type=float, required=True)
    s.add_argument("--stop", type=float, required=True)
    s.add_argument("--num", type=int, default=11)
    s.add_argument("--log", action="store_true", help="geometric spacing")
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code:
            return _fail(EXIT_CONFIG, "usage", "invalid command line")
        return EXIT_OK
    if args.command != "sweep" and args.format is None:
        args.format = "table"
    try:
        return args.func(args)
    except (NoConvergence, BracketFailure, GridTooCoarse) as exc:
        return _fail(EXIT_SOLVER, "solver", str(exc))
    except (ConfigError, RadiusTooLarge, DomainError, ValueError) as exc:
        # invalid parameters surface as ValueError from the problem constructors
        return _fail(EXIT_CONFIG, "config", str(exc))


if __name__ == "__main__":
    sys.exit(main())
