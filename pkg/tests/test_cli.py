import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

import oracle_values as ov
from robinspec import cli
from robinspec.cli import ConfigError, ProblemConfig, ProblemSection, SolverSection, main
from robinspec.sl_solver import NoConvergence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--weight", "flat", "--R", "1", "--sigma", "1", "--format", "json")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["lambda"] == pytest.approx(ov.FLAT_R1_S1, abs=1e-10)
    assert rec["solver_tag"] == "shooting"


def test_compute_fd_and_samples(capsys):
    code, out, _ = run(capsys, "compute", "--ball", "euclidean", "--n", "2", "--R", "1", "--sigma", "1",
                       "--method", "fd", "--grid-n", "256", "--samples", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("kind,")
    assert lines[2] == "r,u,du" and len(lines) == 8


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", "--weight", "flat", "--R", "1", "--sigma", "1")
    assert code == 0
    assert "computed" in out and len(out.splitlines()) > 2


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--weight", "flat", "--axis", "sigma", "--start", "0.1",
                       "--stop", "100", "--num", "4", "--log")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    lams = [float(r["lambda"]) for r in rows]
    assert len(rows) == 4 and lams == sorted(lams)


def test_verify_writes_jsonl(capsys, tmp_path):
    out = tmp_path / "r.jsonl"
    code, text, _ = run(capsys, "verify", "shape", "--out", str(out), "--format", "csv")
    assert code == 0 and "eigenfunction_shape" in text
    lines = out.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["schema"] == "robinspec.bound_report" and header["count"] == len(lines) - 1
    assert all(json.loads(l)["passed"] for l in lines[1:])


def test_verify_failure_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "shape", "--tol", "-1", "--out", str(tmp_path / "x.jsonl"))
    assert code == 1


def test_verify_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "verify", "shape", "--out", str(a))
    run(capsys, "verify", "shape", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["compute", "--sigma", "abc"],
    ["frobnicate"],
    ["compute", "--weight", "comparison", "--K", "0", "--H", "1", "--R", "2"],
    ["compute", "--R", "-1"],
    ["sweep", "--axis", "R", "--start", "-1", "--stop", "1", "--log"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["exit_code"] == 2


def test_solver_error_exit_3(capsys, monkeypatch):
    def boom(cfg):
        raise NoConvergence("integration failed")
    monkeypatch.setattr(cli, "solve", boom)
    code, _, err = run(capsys, "compute")
    assert code == 3
    assert json.loads(err)["error"] == "solver"


def test_config_file_and_dump(capsys, tmp_path):
    path = tmp_path / "p.toml"
    path.write_text('[problem]\nkind = "drift"\nA = 1\nR = 1.0\nsigma = 2.0\n')
    code, out, _ = run(capsys, "compute", "--config", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out.splitlines()[0])["lambda"] == pytest.approx(ov.DRIFT_A1_S2_R1, abs=1e-9)
    code, out, _ = run(capsys, "compute", "--config", str(path), "--sigma", "3", "--dump-config")
    cfg = ProblemConfig.from_toml(out)
    assert cfg.problem.sigma == 3.0 and cfg.problem.kind == "drift"


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        ProblemConfig.from_toml("[problem]\nradius = 1.0\n")
    with pytest.raises(ConfigError):
        ProblemConfig.from_toml("[extras]\n")
    with pytest.raises(ConfigError):
        ProblemConfig.from_toml('[problem]\nR = "one"\n')


finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(st.builds(
    ProblemSection, kind=st.sampled_from(["flat", "comparison", "ball", "drift"]),
    R=st.floats(1e-3, 1e3), sigma=finite, n=st.integers(2, 8), K=finite, H=finite,
    warping=st.sampled_from(["euclidean", "hyperbolic", "spherical"]),
    kappa=st.floats(1e-3, 10.0), A=st.floats(1e-3, 10.0)),
    st.builds(SolverSection, method=st.sampled_from(["shooting", "fd"]), rtol=st.floats(1e-14, 1e-2),
              atol=st.floats(1e-16, 1e-2), grid_n=st.integers(16, 10 ** 5), samples=st.integers(0, 100)))
def test_toml_round_trip(p, s):
    cfg = ProblemConfig(p, s)
    assert ProblemConfig.from_toml(cfg.to_toml()) == cfg
