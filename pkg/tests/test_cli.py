import json

import numpy as np
import pytest

import rspca.cli as cli
from rspca.evaluation import SizeGuardError
from rspca.linalg import ConvergenceError
from rspca.matio import save_matrix


@pytest.fixture
def csv_input(tmp_path):
    rng = np.random.default_rng(70)
    save_matrix(tmp_path / "input.csv", rng.normal(size=(10, 8)))
    return str(tmp_path / "input.csv")


def test_no_command_is_usage_error():
    assert cli.main([]) == 1


def test_unknown_flag_is_usage_error(csv_input, tmp_path):
    rc = cli.main(["solve", "--input", csv_input, "--k", "2", "--frobnicate"])
    assert rc == 1


def test_bad_onoff_value_is_usage_error(csv_input):
    rc = cli.main(["solve", "--input", csv_input, "--k", "2",
                   "--scale-rows", "maybe"])
    assert rc == 1


def test_missing_source_is_input_error(tmp_path, capsys):
    rc = cli.main(["solve", "--k", "2", "--out-dir", str(tmp_path)])
    assert rc == 1
    assert "error" in capsys.readouterr().err.lower()


def test_missing_file_is_input_error(tmp_path, capsys):
    rc = cli.main(["solve", "--input", str(tmp_path / "gone.csv"), "--k", "2",
                   "--out-dir", str(tmp_path)])
    assert rc == 1
    assert "gone.csv" in capsys.readouterr().err


def test_solve_writes_solution(csv_input, tmp_path):
    out = tmp_path / "sol"
    rc = cli.main(["solve", "--input", csv_input, "--k", "3",
                   "--trials", "8", "--out-dir", str(out)])
    assert rc == 0
    data = json.loads((out / "solution.json").read_text())
    assert data["k"] == 3
    assert data["nnz"] >= 1


def test_generate_writes_dataset(tmp_path):
    out = tmp_path / "gen"
    rc = cli.main(["generate", "--m", "4", "--n", "16", "--out-dir", str(out)])
    assert rc == 0
    for name in ("X.mtx", "V.mtx", "sigma.csv", "generate.json"):
        assert (out / name).exists(), name


def test_experiment_writes_curves(csv_input, tmp_path):
    out = tmp_path / "exp"
    rc = cli.main(["experiment", "--input", csv_input, "--grid", "1,2,4",
                   "--trials", "8", "--out-dir", str(out)])
    assert rc == 0
    assert (out / "manifest.json").exists()
    assert (out / "curve_rspca_svd.csv").exists()
    assert (out / "curve_maxcomp_naive.csv").exists()


def test_deflate_writes_components(csv_input, tmp_path):
    out = tmp_path / "defl"
    rc = cli.main(["deflate", "--input", csv_input, "--k", "2",
                   "--components", "2", "--trials", "8", "--out-dir", str(out)])
    assert rc == 0
    assert (out / "components.json").exists()
    assert (out / "components.csv").exists()


def test_verify_prints_check_lines(csv_input, tmp_path, capsys):
    out = tmp_path / "ver"
    rc = cli.main(["verify", "--input", csv_input, "--k", "1",
                   "--epsilon", "0.8", "--trials", "40", "--out-dir", str(out)])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "PASS" in stdout
    assert "expected_nnz_le_s" in stdout
    assert (out / "bound_check.json").exists()


def test_synthetic_source_without_input(tmp_path):
    out = tmp_path / "syn"
    rc = cli.main(["solve", "--synthetic", "--m", "4", "--n", "16",
                   "--k", "2", "--trials", "4", "--out-dir", str(out)])
    assert rc == 0
    assert (out / "solution.json").exists()


def test_guard_errors_exit_two(monkeypatch, csv_input, tmp_path, capsys):
    def guarded(**kwargs):
        raise SizeGuardError("instance too large for the oracle")

    monkeypatch.setattr(cli, "run_solve", guarded)
    rc = cli.main(["solve", "--input", csv_input, "--k", "2",
                   "--out-dir", str(tmp_path)])
    assert rc == 2
    assert "too large" in capsys.readouterr().err


def test_convergence_errors_exit_two(monkeypatch, csv_input, tmp_path):
    def stuck(**kwargs):
        raise ConvergenceError("power iteration stalled",
                               value=0.0, vector=np.zeros(2), residual=1.0)

    monkeypatch.setattr(cli, "run_solve", stuck)
    rc = cli.main(["solve", "--input", csv_input, "--k", "2",
                   "--out-dir", str(tmp_path)])
    assert rc == 2
