import json
import math
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from tgk.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def write_scenario(tmp_path: Path, name: str, doc: dict) -> Path:
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return p


def ks_scenario(tmp_path, out_name="ks.csv"):
    return write_scenario(tmp_path, "ks.json", {
        "command": "specfun-eval",
        "function": "kilbas_saigo",
        "params": {"alpha": 1.0, "m": 2.0, "n": 1.0},
        "z": [-2.0, 0.0, 1.0],
        "out": str(tmp_path / out_name),
    })


class TestSpecfunEval:
    def test_ks_closed_form_row(self, runner, tmp_path):
        cfg = ks_scenario(tmp_path)
        result = runner.invoke(main, ["specfun", "eval", "--config", str(cfg)])
        assert result.exit_code == 0, result.output
        lines = (tmp_path / "ks.csv").read_text().strip().splitlines()
        assert lines[0] == "z,value,abs_error_estimate,terms_used,cancellation_index"
        first = lines[1].split(",")
        assert float(first[0]) == -2.0
        assert float(first[1]) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_report_manifest(self, runner, tmp_path):
        cfg = ks_scenario(tmp_path)
        result = runner.invoke(main, ["specfun", "eval", "--config", str(cfg)])
        report = json.loads(result.output)
        assert report["outputs"][0]["path"].endswith("ks.csv")
        assert len(report["outputs"][0]["sha256"]) == 64

    def test_bad_json_exit_code(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        result = runner.invoke(main, ["specfun", "eval", "--config", str(bad)])
        assert result.exit_code == 1

    def test_missing_file_exit_code(self, runner, tmp_path):
        result = runner.invoke(main, ["specfun", "eval", "--config", str(tmp_path / "nope.json")])
        assert result.exit_code == 1

    def test_domain_error_exit_code(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "bad_ml.json", {
            "command": "specfun-eval",
            "function": "mittag_leffler",
            "params": {"alpha": -1.0, "beta": 1.0},
            "z": [0.5],
            "out": str(tmp_path / "x.csv"),
        })
        result = runner.invoke(main, ["specfun", "eval", "--config", str(cfg)])
        assert result.exit_code == 2

    def test_overflow_exit_code(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "ovf.json", {
            "command": "specfun-eval",
            "function": "mittag_leffler",
            "params": {"alpha": 1.0, "beta": 1.0},
            "z": [900.0],
            "out": str(tmp_path / "x.csv"),
        })
        result = runner.invoke(main, ["specfun", "eval", "--config", str(cfg)])
        assert result.exit_code == 3


class TestSolveSpectral:
    def test_halfstrip_field(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "strip.json", {
            "command": "solve-spectral",
            "alpha": 1.0, "beta": 0.0,
            "operator": {"kind": "dirichlet_interval", "length": 1.0},
            "data": {"kind": "sin_mode", "k": 1},
            "K": 8,
            "x": {"start": 0.0, "stop": 1.0, "count": 5},
            "y_count": 9,
            "out": str(tmp_path / "strip.csv"),
        })
        result = runner.invoke(main, ["solve", "spectral", "--config", str(cfg)])
        assert result.exit_code == 0, result.output
        rows = (tmp_path / "strip.csv").read_text().strip().splitlines()[1:]
        assert len(rows) == 5 * 9
        for row in rows:
            x, y, u = (float(v) for v in row.split(","))
            ref = math.exp(-math.pi * x) * math.sqrt(2) * math.sin(math.pi * y)
            assert u == pytest.approx(ref, abs=1e-10)

    def test_illposed_exit_code(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "illposed.json", {
            "command": "solve-spectral",
            "alpha": 1.0, "beta": 0.0,
            "operator": {"kind": "neumann_interval", "length": 1.0},
            "data": {"kind": "coefficients", "values": [0.1, 0.0, 0.5, 0.0]},
            "K": 4,
            "x": {"start": 0.0, "stop": 1.0, "count": 3},
            "infinity_condition": "decay_to_zero",
            "out": str(tmp_path / "x.csv"),
        })
        result = runner.invoke(main, ["solve", "spectral", "--config", str(cfg)])
        assert result.exit_code == 4

    def test_wrong_command_tag(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "wrong.json", {"command": "solve-fourier"})
        result = runner.invoke(main, ["solve", "spectral", "--config", str(cfg)])
        assert result.exit_code == 1


class TestSolveFourier:
    def test_gaussian_slices(self, runner, tmp_path):
        cfg = write_scenario(tmp_path, "fourier.json", {
            "command": "solve-fourier",
            "alpha": 1.0, "beta": 0.0,
            "symbol": {"kind": "laplacian", "dimension": 1},
            "L": 15.0, "M": 128,
            "data": {"kind": "gaussian", "sigma": 1.0, "center": 0.0},
            "x_slices": [0.0, 0.5],
            "pad_factor": 4,
            "out": str(tmp_path / "fourier.csv"),
        })
        result = runner.invoke(main, ["solve", "fourier", "--config", str(cfg)])
        assert result.exit_code == 0, result.output
        lines = (tmp_path / "fourier.csv").read_text().strip().splitlines()
        assert lines[0].startswith("y,u_x=0,u_x=0.5")
        assert len(lines) == 1 + 128
        # the x = 0 column reproduces the data
        for line in lines[1:]:
            y, u0, _ = (float(v) for v in line.split(","))
            assert u0 == pytest.approx(math.exp(-y * y / 2.0), abs=1e-12)


class TestVerifyCommand:
    def test_bounds_suite_files(self, runner, tmp_path):
        out = tmp_path / "ver"
        result = runner.invoke(main, ["verify", "--suite", "bounds", "--out", str(out)])
        assert result.exit_code == 0, result.output
        doc = json.loads((out / "ledger.json").read_text())
        assert len(doc["entries"]) > 10
        assert all(e["status"] in ("pass", "fail", "report") for e in doc["entries"])
        csv_lines = (out / "ledger.csv").read_text().strip().splitlines()
        assert csv_lines[0] == "claim_id,anchor,status,tolerance,measured"
        assert len(csv_lines) == 1 + len(doc["entries"])


class TestDemoIllposed:
    def test_stdout_json(self, runner):
        result = runner.invoke(main, ["demo", "illposed", "--alpha", "0.75", "--xi", "1.0"])
        assert result.exit_code == 0, result.output
        doc = json.loads(result.output)
        assert doc["result"]["x_star"] > 0.0
        assert doc["result"]["monotone"] is True

    def test_output_file(self, runner, tmp_path):
        out = tmp_path / "demo.json"
        result = runner.invoke(main, ["demo", "illposed", "--alpha", "0.9", "--xi", "2.0",
                                      "--out", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["result"]["x_star"] > 0.0

    def test_domain_exit_code(self, runner):
        result = runner.invoke(main, ["demo", "illposed", "--alpha", "1.5", "--xi", "1.0"])
        assert result.exit_code == 2


class TestDeterminism:
    @pytest.mark.parametrize("scenario_name", ["specfun_ks_exp.json", "halfstrip.json",
                                               "fourier_gaussian.json"])
    def test_canonical_scenarios_byte_identical(self, runner, tmp_path, scenario_name):
        src = Path(__file__).resolve().parents[1] / "scenarios" / scenario_name
        doc = json.loads(src.read_text())
        outname = Path(doc["out"]).name
        doc["out"] = str(tmp_path / outname)
        cfg = write_scenario(tmp_path, scenario_name, doc)
        cmd = {"specfun-eval": ["specfun", "eval"], "solve-spectral": ["solve", "spectral"],
               "solve-fourier": ["solve", "fourier"]}[doc["command"]]
        digests = []
        for _ in range(2):
            result = runner.invoke(main, cmd + ["--config", str(cfg)])
            assert result.exit_code == 0, result.output
            digests.append(json.loads(result.output)["outputs"][0]["sha256"])
            (tmp_path / outname).rename(tmp_path / f"copy_{len(digests)}.csv")
        assert digests[0] == digests[1]
        a = (tmp_path / "copy_1.csv").read_bytes()
        b = (tmp_path / "copy_2.csv").read_bytes()
        assert a == b
