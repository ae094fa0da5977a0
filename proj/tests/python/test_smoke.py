"""Smoke tests for the python bindings and the CLI surface."""

import json
import math
import os
import subprocess
import sys

import pytest

import standby

CLI = os.environ.get("STANDBY_CLI")


def run_cli(*args):
    assert CLI, "STANDBY_CLI not set"
    return subprocess.run([CLI, *args], capture_output=True, text=True)


# ---------------------------------------------------------------------------
# bindings


def test_version():
    assert standby.__version__


def test_validation_errors_become_value_errors():
    with pytest.raises(ValueError):
        standby.validate_params(1, 1.0, 1.0)
    with pytest.raises(ValueError):
        standby.validate_params(3, 0.0, 1.0)


def test_mean_lifetime_known_value():
    p = standby.validate_params(2, 1.0, 10.0)
    assert standby.mean_lifetime(p) == pytest.approx(12.0, rel=1e-12)


def test_lst_values():
    p = standby.validate_params(2, 1.0, 10.0)
    assert standby.lst_tau(p, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert standby.lst_tau(p, 1.0) == pytest.approx(1.0 / 14.0, rel=1e-12)
    ev = standby.phi_tridiagonal(p, 1.0)
    assert ev.phi[1] == pytest.approx(1.0 / 14.0, rel=1e-12)


def test_closed_form_and_degenerate_roots():
    p = standby.validate_params(3, 2.0, 20.0)
    ev = standby.phi_closed_form(p, 0.5)
    assert ev.phi[2] == pytest.approx(4.0 / 265.625, rel=1e-10)
    assert ev.roots is not None and ev.roots.q1 > ev.roots.q2
    degenerate = standby.validate_params(4, 1.0, 1.0)
    with pytest.raises(ArithmeticError):
        standby.phi_closed_form(degenerate, 0.0)


def test_solve_transient_conservation():
    p = standby.validate_params(3, 1.0, 5.0)
    grid = standby.default_grid(p, 101)
    sol = standby.solve_transient(p, grid)
    for i in range(len(grid)):
        total = sol.cdf[i] + sum(sol.state_probabilities(i))
        assert total == pytest.approx(1.0, abs=1e-10)
    assert sol.cdf[0] == 0.0
    assert sol.state_probabilities(0)[0] == 1.0


def test_run_trials_deterministic_across_threads():
    p = standby.validate_params(2, 1.0, 10.0)
    a = standby.run_trials(p, 5000, seed=7, threads=1)
    b = standby.run_trials(p, 5000, seed=7, threads=3)
    assert a.samples == b.samples
    assert a.sample_mean == b.sample_mean


def test_convergence_sweep_monotone():
    report = standby.convergence_sweep(2, 1.0, [10.0, 100.0], trials=2000, seed=3)
    assert report.entries[1].lst_sup_error < report.entries[0].lst_sup_error


def test_epsilon_scale():
    e = standby.epsilon_scale(standby.validate_params(4, 2.0, 8.0))
    assert e.epsilon == 0.25
    assert e.scale == 0.015625


# ---------------------------------------------------------------------------
# CLI


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_solve_initial_row(tmp_path):
    out = tmp_path / "solve.csv"
    r = run_cli("solve", "--n", "2", "--lambda", "1", "--mu", "10", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,P_0,P_1,cdf,density"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0
    assert float(first[2]) == 0.0
    assert float(first[3]) == 0.0
    assert float(first[4]) == 0.0
    manifest = json.loads((tmp_path / "solve.csv.manifest.json").read_text())
    assert manifest["command"] == "solve"
    assert str(out) in manifest["outputs"]


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_solve_erlang_matches_closed_form(tmp_path):
    out = tmp_path / "erlang.csv"
    r = run_cli("solve", "--n", "2", "--lambda", "1", "--mu", "0", "--out", str(out))
    assert r.returncode == 0
    rows = out.read_text().splitlines()[1:]
    for row in rows[:: max(1, len(rows) // 25)]:
        t, _, _, cdf, _ = (float(x) for x in row.split(","))
        exact = 1.0 - math.exp(-t) - t * math.exp(-t)
        assert cdf == pytest.approx(exact, abs=1e-8)


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_validation_exit_codes(tmp_path):
    out = tmp_path / "x.csv"
    r = run_cli("solve", "--n", "1", "--lambda", "1", "--mu", "1", "--out", str(out))
    assert r.returncode == 2
    assert "n" in r.stderr
    r = run_cli("simulate", "--n", "2", "--lambda", "1", "--mu", "1", "--trials",
                "0", "--out", str(out))
    assert r.returncode == 2


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_laplace_values_and_degenerate_exit(tmp_path):
    out = tmp_path / "laplace.csv"
    r = run_cli("laplace", "--n", "2", "--lambda", "1", "--mu", "10", "--s", "0,1",
                "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "s,phi_0,phi_1,lst_tau,q1,q2"
    row0 = lines[1].split(",")
    assert float(row0[3]) == pytest.approx(1.0, abs=1e-12)
    assert row0[4] == "" and row0[5] == ""  # tridiagonal leaves roots empty
    row1 = lines[2].split(",")
    assert float(row1[2]) == pytest.approx(1.0 / 14.0, rel=1e-12)

    r = run_cli("laplace", "--n", "4", "--lambda", "1", "--mu", "1", "--s", "0",
                "--method", "closed", "--out", str(out))
    assert r.returncode == 3
    assert "DegenerateRoots" in r.stderr


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_laplace_both_reports_discrepancy(tmp_path):
    out = tmp_path / "both.csv"
    r = run_cli("laplace", "--n", "3", "--lambda", "1", "--mu", "10", "--s", "0.5,2",
                "--method", "both", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0].endswith(",max_rel_discrepancy")
    for row in lines[1:]:
        assert float(row.split(",")[-1]) < 1e-10


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_simulate_reproducible(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    args = ["simulate", "--n", "2", "--lambda", "1", "--mu", "10", "--trials",
            "5000", "--seed", "42"]
    assert run_cli(*args, "--out", str(out_a)).returncode == 0
    assert run_cli(*args, "--out", str(out_b), "--threads", "2").returncode == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    summary = json.loads((tmp_path / "a.csv.summary.json").read_text())
    assert summary["trials"] == 5000
    assert summary["seed"] == 42
    assert summary["ks_vs_analytic"] < 1.36 / math.sqrt(5000)
    assert summary["manifest"]["version"] == standby.__version__


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_converge_report(tmp_path):
    out = tmp_path / "report.json"
    r = run_cli("converge", "--n", "3", "--lambda", "1", "--mu", "10,100", "--trials",
                "2000", "--seed", "7", "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    entries = doc["entries"]
    assert entries[1]["lst_sup_error"] < entries[0]["lst_sup_error"]
    assert "manifest" in doc and doc["manifest"]["seed"] == 7
    csv_lines = (tmp_path / "report.csv").read_text().splitlines()
    assert csv_lines[0] == "t,exp_limit,cdf_mu_10,cdf_mu_100"
    assert len(csv_lines) == 401

    r = run_cli("converge", "--n", "3", "--lambda", "1", "--mu", "0.5", "--trials",
                "100", "--seed", "1", "--out", str(out))
    assert r.returncode == 2


@pytest.mark.skipif(CLI is None, reason="STANDBY_CLI not set")
def test_cli_config_file(tmp_path):
    config = tmp_path / "run.conf"
    out = tmp_path / "from_config.csv"
    config.write_text(
        "\n".join(["# batch run", "n=2", "lambda=1", "mu=10", f"out={out}", ""])
    )
    r = run_cli("solve", "--config", str(config))
    assert r.returncode == 0
    assert out.exists()

    # flags override file values: --mu 0 beats mu=10 from the file
    out2 = tmp_path / "override.csv"
    r = run_cli("solve", "--config", str(config), "--mu", "0", "--out", str(out2))
    assert r.returncode == 0
    rows = out2.read_text().splitlines()[1:]
    t, _, _, cdf, _ = (float(x) for x in rows[len(rows) // 2].split(","))
    exact = 1.0 - math.exp(-t) - t * math.exp(-t)
    assert cdf == pytest.approx(exact, abs=1e-8)
