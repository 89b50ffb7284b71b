"""Command-line front end: subcommands, exit codes, CSV and figure outputs."""

import json
import math
import os

import pytest

from boselab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestEstimate:
    def test_benchmark_mode_count(self, capsys):
        rec = run_json(capsys, "estimate", "--rho", "2", "--a", "0.005",
                       "--R-trap", "35", "--L-box", "70")
        out = rec["outputs"]
        assert out["mode_count"] == pytest.approx(38.48, abs=0.01)
        assert out["mode_count_rounded"] == 38
        assert "~ 38" in out["mode_count_display"]

    def test_record_envelope(self, capsys):
        rec = run_json(capsys, "estimate", "--rho", "1", "--a", "1",
                       "--R-trap", "1", "--L-box", "1")
        assert rec["subcommand"] == "estimate"
        assert rec["provenance"]["package"] == "boselab"
        assert rec["inputs"]["rho"] == 1.0
        assert "timestamp" in rec


class TestAsymptote:
    def test_hardcore1d_tonks_value(self, capsys):
        rec = run_json(capsys, "asymptote", "--dim", "1", "--formula", "hardcore1d",
                       "--rho", "1", "--a", "0")
        assert rec["outputs"]["energy_density"] == pytest.approx(math.pi**2 / 3.0, rel=1e-12)

    def test_constants_note_flags_defaults(self, capsys):
        rec = run_json(capsys, "asymptote", "--formula", "wu", "--rho", "1e-6", "--a", "1")
        assert rec["outputs"]["constants"]["note"] == "constants not from paper"
        rec = run_json(capsys, "asymptote", "--formula", "wu", "--rho", "1e-6", "--a", "1",
                       "--constants", '{"C": 2.0}')
        assert rec["outputs"]["constants"]["note"] == "user-supplied constants"

    def test_csv_appends_with_single_header(self, tmp_path, capsys):
        path = str(tmp_path / "asym.csv")
        for rho in ("1", "2"):
            run_json(capsys, "asymptote", "--formula", "e1d", "--rho", rho, "--a", "0.01",
                     "--csv", path)
        lines = open(path).read().splitlines()
        assert lines[0] == "formula,dim,rho,a,energy_density"
        assert len(lines) == 3

    def test_wrong_dim_rejected(self, capsys):
        code, _, err = run_cli(capsys, "asymptote", "--formula", "lhy", "--dim", "2",
                               "--rho", "1", "--a", "0.1")
        assert code == 2
        assert "error" in err


class TestScatter:
    def test_hard_core(self, capsys):
        rec = run_json(capsys, "scatter", "--dim", "3", "--potential",
                       '{"kind":"hardcore","R":1}')
        assert rec["outputs"]["a"] == 1.0

    def test_csv_and_figure(self, tmp_path, capsys):
        csv_path = str(tmp_path / "u.csv")
        fig_path = str(tmp_path / "u.png")
        rec = run_json(capsys, "scatter", "--dim", "3", "--potential",
                       '{"kind":"softsphere","v0":10,"R":1}',
                       "--grid-points", "2000", "--csv", csv_path, "--figure", fig_path)
        assert open(csv_path).readline().strip() == "r,u"
        assert os.path.getsize(fig_path) > 0
        assert rec["outputs"]["residual"] <= 1e-8

    def test_free_1d_gas_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "scatter", "--dim", "1", "--potential",
                               '{"kind":"softsphere","v0":0,"R":1}')
        assert code == 2
        assert "free 1D gas" in err


class TestBogCommands:
    def test_bog_min_outputs(self, capsys):
        rec = run_json(capsys, "bog-min", "--rho", "1e-6", "--mode", "scattering-constant",
                       "--a", "1", "--grid-nodes", "200")
        out = rec["outputs"]
        ratio = out["energy"]["total"] / (4.0 * math.pi * 1e-12)
        assert 1.0 <= ratio <= 1.01
        assert out["diagnostics"]["converged"] is True
        assert 0.0 < out["depletion"]["fraction"] < 0.01

    def test_bog_min_requires_mode_parameters(self, capsys):
        code, _, err = run_cli(capsys, "bog-min", "--rho", "1e-6", "--mode",
                               "scattering-constant")
        assert code == 2

    def test_sweep_csv_schema_and_determinism(self, tmp_path, capsys):
        args = ("bog-sweep", "--mode", "scattering-constant", "--a", "1",
                "--rho-a3-min", "1e-8", "--rho-a3-max", "1e-6", "--count", "3",
                "--grid-nodes", "150", "--no-figures")
        p1, p2 = str(tmp_path / "s1.csv"), str(tmp_path / "s2.csv")
        run_json(capsys, *args, "--csv", p1)
        run_json(capsys, *args, "--csv", p2)
        data1, data2 = open(p1, "rb").read(), open(p2, "rb").read()
        assert data1 == data2
        header = data1.decode().splitlines()[0]
        assert header == "rho_a3,e_over_4pi_rho2_a,depletion_fraction,iterations"

    def test_sweep_figure_rendered_alongside_csv(self, tmp_path, capsys):
        csv_path = str(tmp_path / "sweep.csv")
        rec = run_json(capsys, "bog-sweep", "--mode", "scattering-constant", "--a", "1",
                       "--rho-a3-min", "1e-8", "--rho-a3-max", "1e-6", "--count", "3",
                       "--grid-nodes", "150", "--csv", csv_path)
        fig = rec["outputs"]["figure"]
        assert fig == str(tmp_path / "sweep.png")
        assert os.path.getsize(fig) > 0

    def test_sweep_count_validation(self, capsys):
        code, _, _ = run_cli(capsys, "bog-sweep", "--mode", "scattering-constant",
                             "--a", "1", "--rho-a3-min", "1e-8", "--rho-a3-max", "1e-6",
                             "--count", "1")
        assert code == 2

    def test_parallel_sweep_matches_serial(self, tmp_path, capsys):
        base = ("bog-sweep", "--mode", "scattering-constant", "--a", "1",
                "--rho-a3-min", "1e-8", "--rho-a3-max", "1e-6", "--count", "3",
                "--grid-nodes", "150", "--no-figures")
        serial = run_json(capsys, *base, "--jobs", "1")
        parallel = run_json(capsys, *base, "--jobs", "2")
        assert serial["outputs"]["points"] == parallel["outputs"]["points"]

    def test_jobs_default_comes_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("BDL_JOBS", "2")
        rec = run_json(capsys, "bog-sweep", "--mode", "scattering-constant", "--a", "1",
                       "--rho-a3-min", "1e-8", "--rho-a3-max", "1e-6", "--count", "2",
                       "--grid-nodes", "150", "--no-figures")
        assert rec["inputs"]["jobs"] == 2


class TestLiebLiniger:
    def test_gamma_interface(self, capsys):
        rec = run_json(capsys, "lieb-liniger", "--gamma", "100")
        out = rec["outputs"]
        closed = (math.pi**2 / 3.0) * (1.0 + 0.02) ** -2
        assert out["e_tilde"] == pytest.approx(closed, rel=1e-3)
        assert out["residual"] <= 1e-9

    def test_rho_c_interface_reports_energy_density(self, capsys):
        rec = run_json(capsys, "lieb-liniger", "--rho", "2", "--c", "200")
        out = rec["outputs"]
        assert out["gamma"] == pytest.approx(100.0)
        assert out["energy_density"] == pytest.approx(8.0 * out["e_tilde"], rel=1e-12)

    def test_requires_coupling(self, capsys):
        code, _, _ = run_cli(capsys, "lieb-liniger")
        assert code == 2

    def test_csv_output(self, tmp_path, capsys):
        path = str(tmp_path / "g.csv")
        run_json(capsys, "lieb-liniger", "--gamma", "10", "--nodes", "64", "--csv", path)
        lines = open(path).read().splitlines()
        assert lines[0] == "x,g"
        assert len(lines) == 65


class TestDispatch:
    def test_unknown_subcommand_is_64(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 64
        assert "usage" in err

    def test_no_arguments_is_64(self, capsys):
        assert run_cli(capsys)[0] == 64

    def test_help_is_clean_exit(self, capsys):
        assert run_cli(capsys, "--help")[0] == 0

    def test_config_file_supplies_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"rho": 2.0, "a": 0.005, "r_trap": 35.0, "l_box": 70.0}))
        rec = run_json(capsys, "estimate", "--config", str(cfg))
        assert rec["outputs"]["mode_count"] == pytest.approx(38.48, abs=0.01)

    def test_cli_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"rho": 2.0, "a": 0.005, "r_trap": 35.0, "l_box": 70.0}))
        rec = run_json(capsys, "estimate", "--config", str(cfg), "--rho", "4.0")
        assert rec["outputs"]["mode_count"] == pytest.approx(2 * 38.48, abs=0.02)

    def test_solver_failure_maps_to_exit_3(self, capsys):
        # coupling far outside the bracket window stalls the lambda matching
        code, _, err = run_cli(capsys, "lieb-liniger", "--gamma", "1e300")
        assert code == 3


class TestReproduce:
    def test_full_report(self, tmp_path, capsys):
        outdir = str(tmp_path / "rep")
        code, out, _ = run_cli(capsys, "reproduce", "--outdir", outdir)
        assert code == 0
        assert "criteria passed" in out
        assert "PASS" in out
        assert os.path.exists(os.path.join(outdir, "acceptance.csv"))
        assert os.path.exists(os.path.join(outdir, "acceptance.json"))
        assert os.path.exists(os.path.join(outdir, "lhy_slope.png"))
        assert os.path.exists(os.path.join(outdir, "lieb_liniger.png"))
        header = open(os.path.join(outdir, "acceptance.csv")).readline().strip()
        assert header == "criterion,status,measured,target,tolerance,notes"
