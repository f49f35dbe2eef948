"""Command-line interface: artifacts, exit codes, determinism."""

import csv
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from taskmacro.cli import EXIT_CONFIG, EXIT_DATA, EXIT_OK, EXIT_SOLVER, main

from conftest import PERIOD_A, PERIOD_B


def read_kv(path: Path) -> dict[str, str]:
    with path.open(newline="") as handle:
        return {row["key"]: row["value"] for row in csv.DictReader(handle)}


def read_rows(path: Path) -> list[dict[str, str]]:
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


def period_a_args() -> list[str]:
    return [
        "--set", f"m={PERIOD_A['m']}",
        "--set", f"beta_w={PERIOD_A['beta_w']}",
        "--set", f"b0={PERIOD_A['b0']}",
    ]


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


class TestSolve:
    def test_artifacts_and_summary(self, tmp_path, capsys):
        code = main(["solve", "--out-dir", str(tmp_path), *period_a_args()])
        assert code == EXIT_OK
        for name in ("manifest.txt", "steady_state.csv", "return_curves.csv",
                     "return_curves.svg"):
            assert (tmp_path / name).exists(), name
        out = capsys.readouterr().out
        assert "mu=0.320000" in out

        state = read_kv(tmp_path / "steady_state.csv")
        assert float(state["mu"]) == pytest.approx(0.32, abs=1e-6)
        assert state["warnings"] == ""
        manifest = (tmp_path / "manifest.txt").read_text()
        assert "command = solve" in manifest
        assert f"m = {PERIOD_A['m']}" in manifest
        assert "resolved_g = " in manifest

    def test_curve_rows_cover_grid(self, tmp_path):
        main(["solve", "--out-dir", str(tmp_path), *period_a_args()])
        rows = read_rows(tmp_path / "return_curves.csv")
        assert len(rows) == 200
        assert set(rows[0]) == {"theta", "mu_supply", "mu_demand", "residual"}

    def test_warnings_go_to_stderr(self, tmp_path, capsys):
        code = main(["solve", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        err = capsys.readouterr().err
        assert "outside-corridor" in err

    def test_byte_identical_reruns(self, tmp_path):
        d1, d2 = tmp_path / "one", tmp_path / "two"
        main(["solve", "--out-dir", str(d1), *period_a_args()])
        main(["solve", "--out-dir", str(d2), *period_a_args()])
        for name in ("manifest.txt", "steady_state.csv", "return_curves.csv",
                     "return_curves.svg"):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name


# ---------------------------------------------------------------------------
# parameter files and overrides
# ---------------------------------------------------------------------------


class TestParams:
    def test_params_file_with_comments(self, tmp_path, capsys):
        pfile = tmp_path / "params.txt"
        pfile.write_text(
            "# period A calibration\n"
            f"m = {PERIOD_A['m']}\n"
            f"beta_w = {PERIOD_A['beta_w']}  # fitted\n"
            f"b0 = {PERIOD_A['b0']}\n"
        )
        out = tmp_path / "out"
        code = main(["solve", "--params", str(pfile), "--out-dir", str(out)])
        assert code == EXIT_OK
        assert "mu=0.320000" in capsys.readouterr().out

    def test_set_overrides_file(self, tmp_path):
        pfile = tmp_path / "params.txt"
        pfile.write_text("m = 0.5\n")
        out = tmp_path / "out"
        code = main([
            "solve", "--params", str(pfile), "--out-dir", str(out),
            "--set", f"m={PERIOD_A['m']}",
            "--set", f"beta_w={PERIOD_A['beta_w']}",
        ])
        assert code == EXIT_OK
        assert f"m = {PERIOD_A['m']}" in (out / "manifest.txt").read_text()

    @pytest.mark.parametrize(
        "content, fragment",
        [
            ("m 0.9\n", "expected 'key = value'"),
            ("= 0.9\n", "empty key"),
            ("m = 0.9\nm = 0.8\n", "duplicate key"),
            ("nonsense = 1\n", "unknown parameter"),
            ("m = fast\n", "m"),
        ],
    )
    def test_bad_params_file_exits_config(self, tmp_path, capsys, content, fragment):
        pfile = tmp_path / "params.txt"
        pfile.write_text(content)
        code = main(["solve", "--params", str(pfile), "--out-dir", str(tmp_path / "o")])
        assert code == EXIT_CONFIG
        assert fragment in capsys.readouterr().err

    def test_missing_params_file(self, tmp_path, capsys):
        code = main(["solve", "--params", str(tmp_path / "nope.txt"),
                     "--out-dir", str(tmp_path / "o")])
        assert code == EXIT_CONFIG
        assert "not found" in capsys.readouterr().err

    def test_malformed_set_flag(self, tmp_path, capsys):
        code = main(["solve", "--out-dir", str(tmp_path), "--set", "m0.9"])
        assert code == EXIT_CONFIG
        assert "KEY=VALUE" in capsys.readouterr().err

    def test_out_dir_from_environment(self, tmp_path, monkeypatch):
        target = tmp_path / "from-env"
        monkeypatch.setenv("TASKMACRO_OUT_DIR", str(target))
        code = main(["solve", *period_a_args()])
        assert code == EXIT_OK
        assert (target / "steady_state.csv").exists()

    def test_solver_failure_exits_three(self, tmp_path, capsys):
        code = main(["solve", "--out-dir", str(tmp_path), "--set", "b0=9.0"])
        assert code == EXIT_SOLVER
        assert "solver failure" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


class TestAudit:
    def test_identities_reported(self, tmp_path, capsys):
        code = main(["audit", "--out-dir", str(tmp_path), *period_a_args()])
        assert code == EXIT_OK
        audit = read_kv(tmp_path / "audit.csv")
        assert audit["mu_inside_corridor"] == "1"
        for key in ("resource_constraint", "savings_net_investment", "cambridge"):
            assert abs(float(audit[key])) < 1e-8, key
        assert "largest identity residual" in capsys.readouterr().out

    def test_floor_violation_exits_three(self, tmp_path, capsys):
        code = main(["audit", "--out-dir", str(tmp_path)])
        assert code == EXIT_SOLVER
        assert "owner consumption" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# compstat
# ---------------------------------------------------------------------------


class TestCompstat:
    def test_decrease_direction(self, tmp_path):
        code = main(["compstat", "--shock", "m", "--delta", "-0.01",
                     "--out-dir", str(tmp_path), *period_a_args()])
        assert code == EXIT_OK
        rows = {r["output"]: r for r in read_rows(tmp_path / "compstat_m.csv")}
        assert len(rows) == 10
        assert (tmp_path / "compstat_m.svg").exists()
        # requested direction is the decrease itself when delta < 0
        for name, row in rows.items():
            assert float(row["response_requested"]) == pytest.approx(
                float(row["response_to_decrease"]), rel=1e-12
            ), name
        assert float(rows["w_hat"]["response_requested"]) < 0.0
        assert float(rows["x_over_y"]["response_requested"]) > 0.0

    def test_increase_flips_reported_direction(self, tmp_path):
        code = main(["compstat", "--shock", "b0", "--delta", "0.01",
                     "--out-dir", str(tmp_path), *period_a_args()])
        assert code == EXIT_OK
        rows = {r["output"]: r for r in read_rows(tmp_path / "compstat_b0.csv")}
        for name, row in rows.items():
            assert float(row["response_requested"]) == pytest.approx(
                -float(row["response_to_decrease"]), rel=1e-12
            ), name

    def test_unknown_shock_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["compstat", "--shock", "sigma", "--out-dir", str(tmp_path)])
        assert err.value.code == 2


# ---------------------------------------------------------------------------
# moments / calibrate / hypothesis
# ---------------------------------------------------------------------------


class TestMoments:
    def test_window_moments(self, tmp_path, capsys, macro_csv):
        code = main(["moments", "--data", str(macro_csv),
                     "--window", "1978:1982", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        moments = read_kv(tmp_path / "moments.csv")
        assert float(moments["mu_data"]) == pytest.approx(0.32, abs=1e-8)
        paths = read_rows(tmp_path / "moment_paths.csv")
        assert len(paths) == 24  # full series, not just the window
        assert (tmp_path / "moments.svg").exists()
        assert "window 1978-1982" in capsys.readouterr().out

    def test_missing_data_flag(self, tmp_path, capsys):
        code = main(["moments", "--out-dir", str(tmp_path)])
        assert code == EXIT_CONFIG
        assert "requires --data" in capsys.readouterr().err

    def test_malformed_window(self, tmp_path, capsys, macro_csv):
        code = main(["moments", "--data", str(macro_csv),
                     "--window", "1978-1982", "--out-dir", str(tmp_path)])
        assert code == EXIT_CONFIG
        assert "1978:1982" in capsys.readouterr().err

    def test_bad_data_exits_four(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("year,py\n1980,1\n")
        code = main(["moments", "--data", str(bad), "--out-dir", str(tmp_path / "o")])
        assert code == EXIT_DATA
        assert "missing column" in capsys.readouterr().err


class TestCalibrate:
    def test_recovers_period_b(self, tmp_path, capsys, macro_csv):
        code = main(["calibrate", "--data", str(macro_csv),
                     "--window", "1996:2001", "--b0", str(PERIOD_B["b0"]),
                     "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        cal = read_kv(tmp_path / "calibration.csv")
        assert float(cal["m"]) == pytest.approx(PERIOD_B["m"], abs=1e-6)
        assert float(cal["beta_w"]) == pytest.approx(PERIOD_B["beta_w"], abs=1e-6)
        assert (tmp_path / "calibrated_state.csv").exists()
        assert (tmp_path / "frontier.svg").exists()
        assert "calibrated m=" in capsys.readouterr().out

    def test_unattainable_targets_exit_four(self, tmp_path, capsys, macro_csv):
        # window with no data rows is a data error
        code = main(["calibrate", "--data", str(macro_csv),
                     "--window", "2050:2060", "--out-dir", str(tmp_path)])
        assert code == EXIT_DATA
        assert "no rows with year in" in capsys.readouterr().err


class TestHypothesis:
    def test_two_window_decomposition(self, tmp_path, capsys, macro_csv):
        code = main([
            "hypothesis", "--data", str(macro_csv),
            "--window-a", "1978:1982", "--window-b", "1996:2001",
            "--b0-a", str(PERIOD_A["b0"]), "--b0-b", str(PERIOD_B["b0"]),
            "--out-dir", str(tmp_path),
        ])
        assert code == EXIT_OK
        states = read_rows(tmp_path / "hypothesis_states.csv")
        assert [r["path"] for r in states] == [
            "base", "technology", "institutions", "full"
        ]
        base_mu = float(states[0]["mu"])
        full_mu = float(states[3]["mu"])
        assert base_mu == pytest.approx(0.32, abs=1e-6)
        assert full_mu == pytest.approx(0.40, abs=1e-6)

        contrib = {r["field"]: r for r in read_rows(tmp_path / "hypothesis_contributions.csv")}
        for field in ("mu", "L", "omega_w", "theta", "w_hat"):
            parts = contrib[field]
            assert float(parts["total"]) == pytest.approx(
                float(parts["technology"])
                + float(parts["institutions"])
                + float(parts["interaction"]),
                abs=1e-12,
            )
        assert (tmp_path / "hypothesis.svg").exists()
        assert "markup change" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# estimate-policy
# ---------------------------------------------------------------------------


class TestEstimatePolicy:
    def test_bands_written_and_reproducible(self, tmp_path, capsys, policy_csv):
        args = ["estimate-policy", "--data", str(policy_csv),
                "--burn", "40", "--keep", "40", "--seed", "7"]
        d1, d2, d3 = (tmp_path / n for n in ("one", "two", "three"))
        assert main([*args, "--out-dir", str(d1)]) == EXIT_OK
        rows = read_rows(d1 / "policy_bands.csv")
        assert len(rows) == 599  # one observation consumed by the lag
        assert rows[0]["date"] == "1954-02"
        assert {"intercept_median", "u_lag1_median", "y_lag1_median",
                "b0_median", "b1_median"} <= set(rows[0])
        assert "terminal reduced-form medians" in capsys.readouterr().out

        assert main([*args, "--out-dir", str(d2)]) == EXIT_OK
        assert (d1 / "policy_bands.csv").read_bytes() == (d2 / "policy_bands.csv").read_bytes()
        assert (d1 / "policy_bands.svg").read_bytes() == (d2 / "policy_bands.svg").read_bytes()

        assert main([*args[:-1], "8", "--out-dir", str(d3)]) == EXIT_OK
        assert (d1 / "policy_bands.csv").read_bytes() != (d3 / "policy_bands.csv").read_bytes()

    def test_bad_policy_data_exits_four(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("date,benefits_ratio\n1954-01,0.1\n")
        code = main(["estimate-policy", "--data", str(bad),
                     "--out-dir", str(tmp_path / "o")])
        assert code == EXIT_DATA
        assert "unemployment" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# installed entry point
# ---------------------------------------------------------------------------


@pytest.mark.skipif(shutil.which("taskmacro") is None,
                    reason="console script not on PATH")
def test_console_script_help():
    proc = subprocess.run(
        ["taskmacro", "--help"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    assert "solve" in proc.stdout and "estimate-policy" in proc.stdout


def test_module_requires_subcommand():
    proc = subprocess.run(
        [sys.executable, "-c", "import taskmacro.cli, sys; sys.exit(taskmacro.cli.main([]))"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 2
