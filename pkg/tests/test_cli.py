import json

import pytest

from edgehost import __version__
from edgehost.cli import main


def write_model_config(tmp_path, **cost):
    doc = {"ladder": [[0.0, 1.0], [1.0, 0.0]],
           "cost": {"c": 1.0, "M": 2.0, "kappa": 5.0} | cost}
    path = tmp_path / "model.json"
    path.write_text(json.dumps(doc))
    return path


def test_version(capsys):
    assert main(["version"]) == 0
    assert capsys.readouterr().out.strip() == __version__


class TestRun:
    def test_happy_path(self, tmp_path, capsys):
        doc = {
            "name": "cli_smoke",
            "ladder": [[0.0, 1.0], [1.0, 0.0]],
            "cost": {"c": 0.45, "M": 5.0, "kappa": 1.0},
            "arrivals": {"kind": "iid-bernoulli", "mu": 0.4},
            "T": 40,
            "policies": [{"kind": "ftpl"}],
            "trials": 2,
            "base_seed": 7,
            "outdir": str(tmp_path / "out"),
        }
        config = tmp_path / "config.json"
        config.write_text(json.dumps(doc))
        assert main(["run", str(config)]) == 0
        out = capsys.readouterr().out
        assert "cli_smoke_trials.csv" in out
        assert (tmp_path / "out" / "cli_smoke_aggregate.csv").exists()

    def test_missing_config(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "nope.json")]) == 2

    def test_invalid_assumption(self, tmp_path, capsys):
        doc = {
            "name": "bad", "ladder": [[0.0, 1.0], [1.0, 0.0]],
            "cost": {"c": 2.0, "M": 5.0, "kappa": 1.0},
            "arrivals": {"kind": "iid-bernoulli", "mu": 0.4},
            "T": 10, "policies": [{"kind": "ftpl"}], "trials": 1, "base_seed": 1,
        }
        config = tmp_path / "config.json"
        config.write_text(json.dumps(doc))
        assert main(["run", str(config)]) == 2
        assert "Assumption 1" in capsys.readouterr().err


class TestOracle:
    def test_prints_schedule_and_cost(self, tmp_path, capsys):
        trace = tmp_path / "trace.txt"
        trace.write_text("3\n3\n0\n")
        config = write_model_config(tmp_path)
        assert main(["oracle", "--trace", str(trace), "--config", str(config)]) == 0
        out = capsys.readouterr().out
        assert "schedule: 1,1,0" in out
        assert "cost:     4" in out

    def test_all_zero_trace(self, tmp_path, capsys):
        trace = tmp_path / "trace.txt"
        trace.write_text("0\n0\n")
        config = write_model_config(tmp_path)
        assert main(["oracle", "--trace", str(trace), "--config", str(config)]) == 0
        assert "cost:     0" in capsys.readouterr().out

    def test_malformed_trace(self, tmp_path, capsys):
        trace = tmp_path / "trace.txt"
        trace.write_text("abc\n")
        config = write_model_config(tmp_path)
        assert main(["oracle", "--trace", str(trace), "--config", str(config)]) == 2

    def test_missing_trace_is_io_error(self, tmp_path):
        config = write_model_config(tmp_path)
        assert main(["oracle", "--trace", str(tmp_path / "nope.txt"),
                     "--config", str(config)]) == 3


class TestBounds:
    def test_fetch_lower_bound(self, capsys):
        assert main(["bounds", "adv-lower-ftpl", "--M", "50", "--K", "2",
                     "--alpha2", "1"]) == 0
        assert "adv-lower-ftpl = 25" in capsys.readouterr().out

    def test_degenerate_gap_rejected(self, capsys):
        assert main(["bounds", "ftpl-stoch", "--K", "2", "--alpha", "0.1",
                     "--kappa", "1", "--M", "5", "--delta-min", "0"]) == 2
        assert "delta_min" in capsys.readouterr().err

    def test_missing_symbol_rejected(self, capsys):
        assert main(["bounds", "ftpl-adv", "--T", "100"]) == 2
        assert "needs input" in capsys.readouterr().err

    def test_competitive_ratio_with_ladder(self, capsys):
        assert main(["bounds", "wftpl-cr", "--ladder", "0:1,0.5:0.45,1:0",
                     "--c", "0.45", "--M", "5", "--kappa", "1", "--alpha", "0.1"]) == 0
        out = capsys.readouterr().out
        assert "wftpl-cr = " in out

    def test_adversarial_reference_scale(self, capsys):
        assert main(["bounds", "ftpl-adv", "--T", "51100", "--K", "2",
                     "--alpha", "0.1", "--kappa", "5", "--M", "50", "--c", "0.1"]) == 0
        value = float(capsys.readouterr().out.splitlines()[-1].split("=")[1])
        assert value > 0 and value < 1e9
