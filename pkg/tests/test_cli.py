import json
import math
import subprocess
import sys

import numpy as np
import pytest

from kickedspin import ModelParams, analytic_eigenvalues
from kickedspin.cli import main

CANON = ["--mu", "1.5707963267948966", "--theta", "1.5707963267948966", "--phi", "0"]


def run(args):
    return main(args)


class TestSpectrum:
    def test_row_count_and_summary(self, tmp_path, capsys):
        out = tmp_path / "spec.csv"
        assert run(["spectrum", *CANON, "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 1 + 1001  # header + samples+1 rows
        summary = capsys.readouterr().out
        assert "beta = 1.7627471740390859" in summary
        assert "lambda_plus" in summary

    def test_round_trip(self, tmp_path):
        out = tmp_path / "spec.csv"
        run(["spectrum", *CANON, "--samples", "40", "--out", str(out)])
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        p = ModelParams(mu=math.pi / 2, theta=math.pi / 2, phi=0.0)
        hint = None
        for row in lines[1:]:
            vals = dict(zip(header, map(float, row.split(","))))
            s = analytic_eigenvalues(p, vals["lambda"], hint)
            hint = s
            assert abs(complex(vals["re_z_plus"], vals["im_z_plus"]) - s.z_plus) < 1e-12
            assert abs(complex(vals["re_delta"], vals["im_delta"]) - s.gap) < 1e-12

    def test_degenerate_exit_code(self, tmp_path):
        assert run(["spectrum", "--mu", "1.0", "--theta", "0.0",
                    "--out", str(tmp_path / "x.csv")]) == 3

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["spectrum", *CANON, "--samples", "100", "--out", str(a)])
        run(["spectrum", *CANON, "--samples", "100", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestEps:
    def test_report(self, tmp_path):
        out = tmp_path / "eps.json"
        assert run(["eps", *CANON, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["beta"] == pytest.approx(1.762747174039086)
        assert doc["lambda_plus"]["im"] == pytest.approx(1.762747174039086)
        assert doc["closed_form_vs_newton"] < 1e-8
        assert doc["gap_at_plus"] < 1e-9


class TestHolonomy:
    @pytest.mark.parametrize("loops,expect", [
        (1, [[0.0, -1.0], [1.0, 0.0]]),
        (2, [[-1.0, 0.0], [0.0, -1.0]]),
        (4, [[1.0, 0.0], [0.0, 1.0]]),
    ])
    def test_loops(self, tmp_path, loops, expect):
        out = tmp_path / "hol.json"
        assert run(["holonomy", *CANON, "--loops", str(loops), "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        m = [[doc["matrix"][i][j]["re"] for j in range(2)] for i in range(2)]
        assert np.allclose(m, expect, atol=1e-6)

    def test_eta_value(self, tmp_path):
        out = tmp_path / "hol.json"
        run(["holonomy", *CANON, "--out", str(out)])
        doc = json.loads(out.read_text())
        assert doc["eta"] == pytest.approx(math.pi / 2, abs=1e-6)
        assert doc["permutation"] == [1, 0]
        assert doc["residual_transported_overlap"] < 1e-7

    def test_negative_mu_sign(self, tmp_path):
        out = tmp_path / "hol.json"
        run(["holonomy", "--mu", "-1.5707963267948966", "--theta", "1.5707963267948966",
             "--phi", "0", "--out", str(out)])
        doc = json.loads(out.read_text())
        assert doc["eta"] == pytest.approx(-math.pi / 2, abs=1e-6)


class TestRiemann:
    def test_grid_csv(self, tmp_path, capsys):
        out = tmp_path / "grid.csv"
        assert run(["riemann", *CANON, "--resolution", "128", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 1 + 128 * 128
        assert lines[0] == "lambda_r,lambda_i,radius,re_delta,im_delta,cut_flag"
        summary = capsys.readouterr().out
        assert "cut_components = 2" in summary

    def test_cut_endpoints_near_eps(self, tmp_path, capsys):
        run(["riemann", *CANON, "--resolution", "64", "--out", str(tmp_path / "g.csv")])
        summary = capsys.readouterr().out
        cells = []
        for line in summary.splitlines():
            if line.startswith("component_"):
                parts = dict(kv.split(" = ") for kv in line.split(": ")[1].split(", "))
                cells.append((float(parts["cells_to_lambda_plus"]),
                              float(parts["cells_to_lambda_minus"])))
        assert min(c[0] for c in cells) <= 2.0
        assert min(c[1] for c in cells) <= 2.0

    def test_continuation_report(self, tmp_path, capsys):
        run(["riemann", *CANON, "--resolution", "64", "--out", str(tmp_path / "g.csv")])
        summary = capsys.readouterr().out
        assert "unit_circle_cut_crossings = 1" in summary
        assert "unit_circle_pairing = swap" in summary
        assert "double_circle_pairing = identity" in summary


class TestSweep:
    def test_transfer(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert run(["sweep", *CANON, "--kicks", "10000", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 1 + 10_001
        final = lines[-1].split(",")
        assert float(final[3]) > 0.99  # p_minus
        summary = capsys.readouterr().out
        assert "transition_probability" in summary

    def test_loops_zero_identity(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert run(["sweep", *CANON, "--kicks", "500", "--loops", "0",
                    "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        fid = float(summary.split("holonomy_fidelity = ")[1].splitlines()[0])
        assert fid == pytest.approx(1.0, abs=1e-10)


class TestScan:
    def test_table(self, tmp_path):
        out = tmp_path / "scan.json"
        assert run(["scan", "--mu", "1.5707963267948966", "--theta", "1.0", "--phi", "0",
                    "--kicks-list", "100,1000", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert [row["kicks"] for row in doc["table"]] == [100, 1000]
        assert doc["table"][1]["fidelity"] > doc["table"][0]["fidelity"]


class TestConfig:
    def test_config_file_and_override(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"mu": 1.5707963267948966, "theta": 1.5707963267948966,
                                   "phi": 0.0, "samples": 50}))
        out = tmp_path / "spec.csv"
        assert run(["spectrum", "--config", str(cfg), "--out", str(out)]) == 0
        assert len(out.read_text().strip().splitlines()) == 51 + 1
        # flag overrides config
        assert run(["spectrum", "--config", str(cfg), "--samples", "10",
                    "--out", str(out)]) == 0
        assert len(out.read_text().strip().splitlines()) == 11 + 1

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"mu": 1.0, "wavelength": 5.0}))
        assert run(["spectrum", "--config", str(cfg)]) == 2

    def test_bad_tolerance_rejected(self, tmp_path):
        assert run(["spectrum", *CANON, "--tol", "-1",
                    "--out", str(tmp_path / "x.csv")]) == 2

    def test_bad_theta_rejected(self, tmp_path):
        assert run(["spectrum", "--mu", "1.0", "--theta", "7.0",
                    "--out", str(tmp_path / "x.csv")]) == 2

    def test_console_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "kickedspin.cli", "eps", *CANON],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["beta"] == pytest.approx(1.762747174039086)
