"""Test the ``paranav`` command line interface."""
import json
import math

import gymnasium as gym
import pytest
from gymnasium.logger import ERROR

import paranav.sim.cli as cli
from paranav.common.exceptions import DomainError
from paranav.sim.cli import EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION, build_parser, main
from paranav.sim.trace import TRACE_COLUMNS

gym.logger.set_level(ERROR)

UNIT_MOTOR = {"la": 1.0, "ra": 1.0, "kb": 1.0, "ki": 1.0, "j": 1.0, "b": 0.0, "tl": 0.0}


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document to a temporary file and return its path."""

    def _write(document, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return _write


def _values(output):
    return dict(line.split(": ", 1) for line in output.strip().splitlines())


class TestClassify:
    def test_true(self, capsys):
        assert main(["classify", "--mu", "1", "--lambda", "0"]) == EXIT_OK
        values = _values(capsys.readouterr().out)
        assert float(values["gce"]) == 1.0
        assert float(values["gin"]) == 0.0
        assert values["state"] == "1 True"

    def test_percent(self, capsys):
        assert main(["classify", "--mu", "60", "--lambda", "30", "--percent"]) == 0
        values = _values(capsys.readouterr().out)
        assert values["state"] == "7 QuasiTrueTendingParacomplete"

    def test_custom_thresholds(self, capsys):
        argv = ["classify", "--mu", "0.7", "--lambda", "0.4", "--thresholds"]
        assert main(argv + ["0.6,-0.6,0.6,-0.6"]) == EXIT_OK
        assert _values(capsys.readouterr().out)["state"].startswith("5 ")

    @pytest.mark.parametrize(
        "argv",
        [
            ["classify", "--mu", "1.5", "--lambda", "0"],
            ["classify", "--mu", "0.5", "--lambda", "0", "--thresholds", "0.5"],
            ["classify", "--mu", "0.5", "--lambda", "0", "--thresholds", "2,-1,1,-1"],
        ],
    )
    def test_invalid_input(self, argv, capsys):
        assert main(argv) == EXIT_VALIDATION
        assert capsys.readouterr().err


class TestPwm:
    def test_measured_calibration(self, capsys):
        argv = ["pwm", "--angle", "180", "--calibration", "measured"]
        assert main(argv) == EXIT_OK
        values = _values(capsys.readouterr().out)
        assert float(values["pulse_width_ms"]) == pytest.approx(2.040)
        assert float(values["positive_duty"]) == pytest.approx(0.102)
        assert values["samples_per_period"] == "20000"
        assert values["high_samples"] == "2040"
        assert float(values["measured_pulse_ms"]) == pytest.approx(2.040, abs=1e-3)

    def test_dump(self, tmp_path, capsys):
        path = tmp_path / "waveform.csv"
        argv = ["pwm", "--angle", "90", "--periods", "2", "--dump", str(path)]
        assert main(argv) == EXIT_OK
        lines = path.read_text().splitlines()
        assert lines[0] == "sample_index,level"
        assert len(lines) == 1 + 40_000
        assert lines[1] == "0,1"
        assert lines[1501] == "1500,0"

    def test_invalid_signal(self, capsys):
        assert main(["pwm", "--angle", "90", "--sample-rate", "100"]) == EXIT_VALIDATION


class TestMotorStep:
    def test_analytic_comparison(self, write_json, capsys):
        path = write_json({"motor": UNIT_MOTOR}, "motor.json")
        argv = ["motor-step", "--params", path, "--voltage", "1", "--t", "1"]
        assert main(argv + ["--dt", "1e-3"]) == EXIT_OK
        values = _values(capsys.readouterr().out)
        wd = math.sqrt(3.0) / 2.0
        expected = 1.0 - math.exp(-0.5) * (math.cos(wd) + math.sin(wd) / math.sqrt(3.0))
        assert float(values["t"]) == pytest.approx(1.0)
        assert float(values["omega_analytic"]) == pytest.approx(expected, rel=1e-8)
        assert float(values["abs_error"]) < 1e-9

    def test_bare_section(self, write_json, capsys):
        path = write_json(UNIT_MOTOR, "motor.json")
        argv = ["motor-step", "--params", path, "--voltage", "1", "--t", "0.1"]
        assert main(argv) == EXIT_OK
        assert "abs_error" in capsys.readouterr().out

    def test_friction_has_no_analytic_response(self, capsys):
        assert main(["motor-step", "--voltage", "1", "--t", "0.01"]) == EXIT_OK
        assert "unavailable" in _values(capsys.readouterr().out)["omega_analytic"]

    def test_invalid_parameters(self, write_json, capsys):
        path = write_json({"motor": {"la": -1.0}}, "motor.json")
        argv = ["motor-step", "--params", path, "--voltage", "1", "--t", "1"]
        assert main(argv) == EXIT_VALIDATION
        assert "motor.la" in capsys.readouterr().err

    def test_negative_time(self, capsys):
        argv = ["motor-step", "--voltage", "1", "--t", "-1"]
        assert main(argv) == EXIT_VALIDATION

    def test_overflow_is_a_runtime_failure(self, capsys):
        argv = ["motor-step", "--voltage", "1e308", "--t", "0.01"]
        assert main(argv) == EXIT_RUNTIME
        assert "overflowed" in capsys.readouterr().err


class TestScenario:
    def test_validate(self, write_json, capsys):
        assert main(["validate", write_json({"max_ticks": 10})]) == EXIT_OK
        assert "is valid" in capsys.readouterr().out

    def test_validate_lists_violations(self, write_json, capsys):
        path = write_json({"max_ticks": 0, "dt": -1.0})
        assert main(["validate", path]) == EXIT_VALIDATION
        err = capsys.readouterr().err
        assert "max_ticks" in err and "dt" in err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_VALIDATION

    def test_simulate_timeout(self, write_json, tmp_path, capsys):
        trace, summary = tmp_path / "trace.csv", tmp_path / "summary.json"
        argv = ["simulate", write_json({"max_ticks": 3})]
        assert main(argv + ["--trace", str(trace), "--summary", str(summary)]) == 4
        lines = trace.read_text().splitlines()
        assert lines[0] == ",".join(TRACE_COLUMNS)
        assert len(lines) == 4
        document = json.loads(summary.read_text())
        assert document["result"] == "timeout"
        assert document["ticks_used"] == 3
        assert json.loads(capsys.readouterr().out) == document

    def test_simulate_completed(self, write_json, capsys):
        path = write_json({"start": {"x": 19.99}})
        assert main(["simulate", path]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["result"] == "completed"

    def test_simulate_collided(self, write_json, capsys):
        """A robot that keeps driving forward into a wall collides."""
        document = {
            "start": {"x": 1.0, "y": 0.45, "heading": math.pi / 2},
            "action_table": {"False": {"magnitude": 0.0, "drive": "forward"}},
            "max_ticks": 100,
        }
        assert main(["simulate", write_json(document)]) == 3
        assert json.loads(capsys.readouterr().out)["result"] == "collided"

    def test_simulate_failure_is_not_a_validation_error(
        self, write_json, monkeypatch, capsys
    ):
        def fail(cfg):
            raise DomainError("Steering angle must lie inside (-pi/2, pi/2).")

        monkeypatch.setattr(cli, "run_scenario", fail)
        assert main(["simulate", write_json({"max_ticks": 3})]) == EXIT_RUNTIME
        assert "Run failed" in capsys.readouterr().err


class TestParser:
    def test_requires_a_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_verbosity_flags_exclude_each_other(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["-v", "-q", "validate", "x.json"])

    def test_lambda_destination(self):
        args = build_parser().parse_args(["classify", "--mu", "1", "--lambda", "0.2"])
        assert args.lambda_ == 0.2
