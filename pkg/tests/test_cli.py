import json
import math
import subprocess
import sys

import numpy as np
import pytest

from turnloc import io
from turnloc.cli import main
from turnloc.analytic import build_exponential
from turnloc.model import NoiseModel
from turnloc.simulate import exponential_study_spec, sample_series, substream


@pytest.fixture
def exp_series_file(tmp_path):
    s = sample_series(build_exponential(exponential_study_spec()), NoiseModel(1.0), substream(5, 0, 0))
    p = tmp_path / "series.csv"
    io.write_series(s, p)
    return p


class TestBias:

    def test_value(self, capsys):
        assert main(["bias", "--a", "0.003333", "--b", "0.01", "--lambda", "1"]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(-25.07, abs=0.01)

    def test_invalid(self, capsys):
        assert main(["bias", "--a", "0", "--b", "0.01", "--lambda", "1"]) != 0
        assert "error" in capsys.readouterr().err


class TestDist:

    def test_constant_trend(self, tmp_path, capsys):
        p = tmp_path / "trend.txt"
        p.write_text("2\n2\n2\n2\n")
        out = tmp_path / "d.csv"
        assert main(["dist", "--trend-file", str(p), "--lambda", "1", "--out", str(out)]) == 0
        masses = [float(line.split(",")[2]) for line in out.read_text().splitlines()[1:]]
        assert masses == [0.25] * 4

    def test_two_point(self, tmp_path, capsys):
        p = tmp_path / "trend.txt"
        p.write_text(f"0\n{math.log(2)!r}\n")
        assert main(["dist", "--trend-file", str(p), "--lambda", "1"]) == 0
        lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith("P(tau=")]
        masses = [float(line.split("=")[-1]) for line in lines]
        np.testing.assert_allclose(masses, [0.75, 0.25], atol=1e-12)

    def test_parametric(self, capsys):
        args = ["dist", "--trend", "linear", "--a", str(1 / 300), "--b", "0.01", "--t0", "0",
                "--start", "-1500", "--n", "3001", "--lambda", "1"]
        assert main(args) == 0
        out = capsys.readouterr().out
        assert float(out.split("expectation = ")[1].split()[0]) == pytest.approx(-6.26, abs=0.05)

    def test_missing_params(self, capsys):
        assert main(["dist", "--trend", "linear", "--a", "1", "--n", "10", "--lambda", "1"]) != 0


class TestAnalyze:

    def test_single_bandwidth(self, exp_series_file, tmp_path, capsys):
        out = tmp_path / "out"
        out.mkdir()
        assert main(["analyze", str(exp_series_file), "--h", "20", "--out", str(out)]) == 0
        data = json.loads((out / "report_h20.json").read_text())
        assert data["bandwidth"] == 20
        assert (out / "report_h20.csv").exists()
        assert not (out / "endpoints.csv").exists()
        length = data["interval"]["right"] - data["interval"]["left"]
        assert 10 <= length <= 100

    def test_sweep(self, exp_series_file, tmp_path, capsys):
        out = tmp_path / "out"
        out.mkdir()
        argv = ["analyze", str(exp_series_file), "--h", "5,8,11,14,17,20", "--out", str(out), "--format", "json"]
        assert main(argv) == 0
        table = io.read_table(out / "endpoints.csv")
        assert table.bandwidths == [5, 8, 11, 14, 17, 20]
        assert len(list(out.glob("report_h*.json"))) == 6

    def test_missing_file(self, tmp_path, capsys):
        missing = tmp_path / "nothere.csv"
        assert main(["analyze", str(missing), "--h", "5", "--out", str(tmp_path)]) != 0
        assert "nothere.csv" in capsys.readouterr().err

    def test_bandwidth_too_large_writes_nothing(self, exp_series_file, tmp_path, capsys):
        out = tmp_path / "out"
        out.mkdir()
        assert main(["analyze", str(exp_series_file), "--h", "5,900", "--out", str(out)]) != 0
        assert list(out.iterdir()) == []


class TestSimulate:

    base = ["simulate", "--trend", "linear", "--a", "0.00333", "--b", "0.01", "--t0", "500", "--n", "1000"]

    def test_single_rep(self, tmp_path, capsys):
        out = tmp_path / "cov.csv"
        assert main(self.base + ["--reps", "1", "--h", "5,20", "--seed", "1", "--out", str(out)]) == 0
        table = io.read_table(out)
        assert all(row.coverage_rate in (0.0, 1.0) for _, row in table)

    def test_repeatable(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        flags = ["--reps", "4", "--h", "5,11", "--seed", "7"]
        assert main(self.base + flags + ["--out", str(a)]) == 0
        assert main(self.base + flags + ["--out", str(b), "--workers", "2"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_config(self, tmp_path, capsys):
        out = tmp_path / "cov.csv"
        assert main(self.base + ["--reps", "0", "--h", "5", "--out", str(out)]) != 0
        assert not out.exists()

    def test_exponential(self, capsys):
        argv = ["simulate", "--trend", "exponential", "--a", "0.002", "--b", "0.01", "--t0", "500",
                "--n", "1000", "--reps", "2", "--h", "8"]
        assert main(argv) == 0
        assert "coverage" in capsys.readouterr().out


@pytest.mark.parametrize("command", ["analyze", "simulate", "dist", "bias"])
def test_help_documents_units(command, capsys):
    with pytest.raises(SystemExit) as exc:
        main([command, "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    assert "beat number" in text and "inverse input units" in text


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "turnloc", "bias", "--a", "1", "--b", "1", "--lambda", "1"],
                            capture_output=True, text=True, check=True)
    assert float(result.stdout) == 0.0
