import math

import numpy as np
import pytest
from click.testing import CliRunner

from sqzmet.cli import main
from sqzmet.core import initial_state


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return CliRunner()


def read_csv(path):
    import io
    from pathlib import Path
    data = "\n".join(line for line in Path(path).read_text().splitlines()
                     if not line.startswith("#"))
    return np.genfromtxt(io.StringIO(data), delimiter=",", names=True)


def read_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestEvolve:
    def test_tau_zero_single_row_is_initial_state(self, runner):
        res = runner.invoke(main, ["evolve", "--tau-max", "0",
                                   "--alpha", "0.6", "--phi", "0.9",
                                   "--out", "ev.csv"])
        assert res.exit_code == 0
        data = read_csv("ev.csv")
        assert data.shape == ()  # single row
        rho = initial_state(0.6, 0.9)
        assert float(data["rho11_re"]) == pytest.approx(rho[0, 0].real, abs=1e-15)
        assert float(data["rho14_im"]) == pytest.approx(rho[0, 3].imag, abs=1e-15)
        assert float(data["trace"]) == pytest.approx(1.0, abs=1e-14)

    def test_methods_agree(self, runner):
        common = ["--tau-max", "2", "--tau-count", "5", "--temp", "0.4",
                  "--r", "0.8", "--mu", "0.6", "--phi-sq", "0.7"]
        assert runner.invoke(main, ["evolve", *common, "--method", "analytic",
                                    "--out", "a.csv"]).exit_code == 0
        assert runner.invoke(main, ["evolve", *common, "--method", "ode",
                                    "--out", "b.csv"]).exit_code == 0
        a, b = read_csv("a.csv"), read_csv("b.csv")
        for name in a.dtype.names:
            np.testing.assert_allclose(a[name], b[name], atol=1e-6)

    def test_deterministic_reruns(self, runner):
        args = ["evolve", "--tau-max", "1", "--tau-count", "11",
                "--out", "det.csv"]
        assert runner.invoke(main, args).exit_code == 0
        first = read_bytes("det.csv")
        assert runner.invoke(main, args).exit_code == 0
        assert read_bytes("det.csv") == first

    def test_full_precision_roundtrip(self, runner):
        assert runner.invoke(main, ["evolve", "--tau-max", "1.0",
                                    "--tau-count", "3", "--temp", "0.371",
                                    "--out", "p.csv"]).exit_code == 0
        from sqzmet.core import PhysicalConfig, analytic_state
        rho = analytic_state(PhysicalConfig(0.5, 0.371, 1.0, 0.0, 0.5,
                                            math.sqrt(2) / 2, math.pi / 2))
        data = read_csv("p.csv")
        assert float(data["rho11_re"][1]) == rho[0, 0].real  # exact

    def test_numeric_failure_exit_code(self, runner):
        res = runner.invoke(main, ["evolve", "--method", "ode", "--temp", "50",
                                   "--r", "2", "--step", "1e-2", "--tau-max",
                                   "2", "--tau-count", "3", "--out", "x.csv"])
        assert res.exit_code == 3

    def test_bad_flag_exit_code(self, runner):
        assert runner.invoke(main, ["evolve", "--no-such-flag"]).exit_code == 2
        assert runner.invoke(main, ["evolve", "--tau-max", "-1"]).exit_code == 2
        assert runner.invoke(main, ["evolve", "--mu", "1.5"]).exit_code == 2


class TestQfi:
    def test_tau_zero_row_singular(self, runner):
        res = runner.invoke(main, ["qfi", "--axis", "tau", "--axis-max", "2",
                                   "--axis-count", "3", "--out", "q.csv"])
        assert res.exit_code == 0
        data = read_csv("q.csv")
        assert data["f_mu"][0] == 0.0
        assert data["f_muphi"][0] == 0.0
        assert data["valid"][0] == 0
        assert np.isnan(data["delta_sim"][0])
        assert data["valid"][1:].all()

    def test_methods_agree_where_valid(self, runner):
        common = ["--axis", "tau", "--axis-min", "0.2", "--axis-max", "3",
                  "--axis-count", "7", "--mu", "0.8", "--r", "1.2",
                  "--temp", "0.6"]
        assert runner.invoke(main, ["qfi", *common, "--method", "spectral",
                                    "--out", "s.csv"]).exit_code == 0
        assert runner.invoke(main, ["qfi", *common, "--method", "closed",
                                    "--out", "c.csv"]).exit_code == 0
        s, c = read_csv("s.csv"), read_csv("c.csv")
        mask = (s["valid"] > 0) & (c["valid"] > 0)
        assert mask.any()
        for name in ("f_phi", "f_mu", "f_muphi", "delta_sim", "ratio_r"):
            np.testing.assert_allclose(s[name][mask], c[name][mask],
                                       rtol=1e-8, atol=1e-10)

    def test_config_file_and_flag_override(self, runner, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("temp=0.9\nmu=0.3\n# comment\nr=1.5\n")
        assert runner.invoke(main, ["qfi", "--config", str(cfg),
                                    "--axis-count", "3", "--axis-min", "1",
                                    "--axis-max", "2",
                                    "--out", "f.csv"]).exit_code == 0
        assert runner.invoke(main, ["qfi", "--config", str(cfg), "--mu", "0.7",
                                    "--axis-count", "3", "--axis-min", "1",
                                    "--axis-max", "2",
                                    "--out", "g.csv"]).exit_code == 0
        import json
        man_f = json.loads(read_bytes("f.csv").decode().splitlines()[0]
                           .split(": ", 1)[1])
        man_g = json.loads(read_bytes("g.csv").decode().splitlines()[0]
                           .split(": ", 1)[1])
        assert man_f["options"]["temp"] == 0.9
        assert man_f["options"]["mu"] == 0.3
        assert man_g["options"]["mu"] == 0.7  # flag beats file

    def test_degree_entry(self, runner):
        assert runner.invoke(main, ["qfi", "--deg", "--phi", "90",
                                    "--axis", "phi_sq", "--axis-min", "0",
                                    "--axis-max", "360", "--axis-count", "3",
                                    "--out", "d.csv"]).exit_code == 0
        import json
        man = json.loads(read_bytes("d.csv").decode().splitlines()[0]
                         .split(": ", 1)[1])
        assert man["options"]["phi"] == pytest.approx(math.pi / 2)
        assert man["options"]["axis_max"] == pytest.approx(2 * math.pi)


class TestScan:
    def test_verify_pass_at_canonical_phase(self, runner):
        res = runner.invoke(main, ["scan", "--target", "f_phi_imp", "--mu",
                                   "0.01", "--phi", "1.5707963267948966",
                                   "--verify", "--out", "s.csv"])
        assert res.exit_code == 0
        assert "verify: pass" in res.output

    def test_verify_fail_exit_code(self, runner):
        res = runner.invoke(main, ["scan", "--target", "f_mu_imp", "--mu",
                                   "0.99", "--phi", "0", "--verify",
                                   "--out", "s.csv"])
        assert res.exit_code == 4
        assert "verify: FAIL" in res.output

    def test_fig12_preset_bounds(self, runner):
        res = runner.invoke(main, ["scan", "--fig12", "--mu", "0.1",
                                   "--axis-count", "25", "--axis2-count", "25",
                                   "--verify", "--out", "r.csv"])
        assert res.exit_code == 0, res.output
        data = read_csv("r.csv")
        assert data["ratio_r"].min() >= 1.0 - 1e-9
        assert data["ratio_r"].max() <= 2.0 + 1e-9

    def test_two_axis_csv_shape(self, runner):
        res = runner.invoke(main, ["scan", "--target", "f_phi_imp",
                                   "--axis-count", "13", "--axis2", "phi",
                                   "--axis2-count", "7", "--mu", "0.9",
                                   "--out", "t.csv"])
        assert res.exit_code == 0
        data = read_csv("t.csv")
        assert data.shape == (13 * 7,)


class TestFigure:
    def test_unknown_name(self, runner):
        assert runner.invoke(main, ["figure", "nosuch"]).exit_code == 2

    def test_fig9_positive_improvement(self, runner):
        res = runner.invoke(main, ["figure", "fig9"])
        assert res.exit_code == 0
        data = read_csv("fig9.csv")
        assert data["f_mu_imp"].min() >= 0.0
        assert data.shape == (101 * 101,)

    def test_fig2a_columns_decay(self, runner):
        res = runner.invoke(main, ["figure", "fig2a"])
        assert res.exit_code == 0
        data = read_csv("fig2a.csv")
        for name in data.dtype.names[1:]:
            col = data[name]
            assert col[0] == pytest.approx(1.0, abs=1e-10)
            assert np.all(np.diff(col) < 1e-12)

    def test_fig12a_ratio_range_and_matched_curve(self, runner):
        res = runner.invoke(main, ["figure", "fig12a"])
        assert res.exit_code == 0
        data = read_csv("fig12a.csv")
        assert data["ratio_r"].min() >= 1.0 - 1e-9
        assert data["ratio_r"].max() <= 2.0 + 1e-9
        matched = read_csv("fig12a_matched.csv")
        assert matched["ratio_r_phase_matched"].shape == (73,)

    def test_family_override(self, runner):
        res = runner.invoke(main, ["figure", "fig2c", "--family", "0,1.0"])
        assert res.exit_code == 0
        data = read_csv("fig2c.csv")
        assert len(data.dtype.names) == 3  # tau + 2 curves

    def test_reference_plane_column(self, runner):
        res = runner.invoke(main, ["figure", "fig3b"])
        assert res.exit_code == 0
        data = read_csv("fig3b.csv")
        ref = data["f_phi_r0"]
        assert np.unique(ref).size == 1  # constant reference plane
        atref = data["f_phi"][data["r"] == 0.0]
        np.testing.assert_allclose(atref, ref[0], atol=1e-12)


class TestReplay:
    def test_replay_byte_identical(self, runner):
        args = ["qfi", "--axis", "tau", "--axis-min", "0.5", "--axis-max",
                "2.5", "--axis-count", "9", "--mu", "0.4", "--out", "q.csv"]
        assert runner.invoke(main, args).exit_code == 0
        original = read_bytes("q.csv")
        res = runner.invoke(main, ["replay", "q.csv.manifest.json"])
        assert res.exit_code == 0
        assert read_bytes("q.csv") == original

    def test_replay_figure_from_csv_echo(self, runner):
        assert runner.invoke(main, ["figure", "fig2c"]).exit_code == 0
        original = read_bytes("fig2c.csv")
        res = runner.invoke(main, ["replay", "fig2c.csv"])
        assert res.exit_code == 0
        assert read_bytes("fig2c.csv") == original


class TestParallelism:
    def test_thread_env_does_not_change_bytes(self, runner, monkeypatch):
        args = ["scan", "--target", "inv_delta_sim", "--mu", "0.7",
                "--axis-count", "301", "--out", "p.csv"]
        monkeypatch.setenv("SQZMET_THREADS", "1")
        assert runner.invoke(main, args).exit_code == 0
        seq = read_bytes("p.csv")
        monkeypatch.setenv("SQZMET_THREADS", "2")
        assert runner.invoke(main, args).exit_code == 0
        assert read_bytes("p.csv") == seq


class TestTable1Command:
    def test_reports_and_exit_code_reflect_outcome(self, runner):
        res = runner.invoke(main, ["table1", "--grid-points", "361"])
        assert "f_phi_imp" in res.output
        assert "joint-vs-phase" in res.output
        passed = "table1: pass" in res.output
        assert res.exit_code == (0 if passed else 4)
