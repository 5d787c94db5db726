"""Tests for main.py module."""

import json
import sys
from unittest.mock import patch

import pytest

from lanelab.config import dump_config
from lanelab.main import EXIT_CONFIG, EXIT_INPUT, EXIT_OK, _create_parser, main
from lanelab.pipeline.emit import LOG_NAME, REPORT_NAME, SUMMARY_NAME
from lanelab.synthgen.generator import GROUND_TRUTH_NAME, write_sequence
from tests.conftest import small_config, small_scene


@pytest.fixture
def small_run(temp_dir):
    """A 3-frame small sequence on disk plus a config that processes it at native size."""
    frames_dir = temp_dir / "frames"
    write_sequence(small_scene(frame_count=3), frames_dir)
    config_path = temp_dir / "small.yaml"
    config_path.write_text(dump_config(small_config()))
    return frames_dir, config_path


class TestParser:
    """Test argument parsing."""

    def test_version(self, capsys):
        """Test --version prints the program name and exits cleanly."""
        with patch.object(sys, "argv", ["lanelab", "--version"]):
            with pytest.raises(SystemExit) as exc_info:
                main()
        assert exc_info.value.code == 0
        assert "lanelab" in capsys.readouterr().out

    def test_command_required(self):
        """Test a subcommand is mandatory."""
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2

    def test_threshold_pairs_parsed(self):
        """Test UPPER:LOWER pairs become threshold models."""
        args = _create_parser().parse_args(["sweep", "--thresholds", "45:15", "30:10"])
        assert [(t.upper, t.lower) for t in args.thresholds] == [(45.0, 15.0), (30.0, 10.0)]

    def test_default_sweep(self):
        """Test the sweep compares the three reference pairs by default."""
        args = _create_parser().parse_args(["sweep"])
        assert [(t.upper, t.lower) for t in args.thresholds] == [(50.0, 10.0), (45.0, 15.0), (30.0, 10.0)]

    @pytest.mark.parametrize("value", ["10:30", "30", "a:b", "30:0"])
    def test_invalid_threshold_pair(self, value, capsys):
        """Test malformed or inverted pairs are rejected by the parser."""
        with pytest.raises(SystemExit) as exc_info:
            _create_parser().parse_args(["sweep", "--thresholds", value])
        assert exc_info.value.code == 2
        assert "UPPER:LOWER" in capsys.readouterr().err

    def test_unknown_suite(self):
        """Test synth rejects suite names outside the battery."""
        with pytest.raises(SystemExit):
            _create_parser().parse_args(["synth", "--suite", "snowy", "--output", "x"])


class TestSynthCommand:
    """Test the synth subcommand."""

    def test_writes_frames(self, temp_dir):
        """Test a short suite prefix is written with its ground truth."""
        out = temp_dir / "clean"
        with patch("sys.argv", ["lanelab", "synth", "--suite", "clean", "--output", str(out), "--frames", "2"]):
            assert main() == EXIT_OK
        assert sorted(p.name for p in out.glob("*.png")) == ["frame_00000.png", "frame_00001.png"]
        assert len((out / GROUND_TRUTH_NAME).read_text().splitlines()) == 2


class TestRunCommand:
    """Test the run subcommand."""

    def test_run_with_ground_truth(self, small_run, temp_dir):
        """Test a scored run writes the log, report and summary."""
        frames_dir, config_path = small_run
        out = temp_dir / "out"
        argv = [
            "lanelab",
            "--no-color",
            "run",
            "--input",
            str(frames_dir),
            "--config",
            str(config_path),
            "--output",
            str(out),
            "--ground-truth",
            str(frames_dir / GROUND_TRUTH_NAME),
            "--redact-timings",
            "--condition",
            "small",
        ]
        with patch("sys.argv", argv):
            assert main() == EXIT_OK

        records = [json.loads(line) for line in (out / LOG_NAME).read_text().splitlines()]
        assert [r["frame_index"] for r in records] == [0, 1, 2]
        assert all(r["incorrect"] is False for r in records)
        assert all(r["total_time_us"] is None for r in records)
        assert "small" in (out / REPORT_NAME).read_text()
        assert (out / SUMMARY_NAME).exists()
        assert not (out / "frames").exists()

    def test_redacted_logs_are_byte_identical(self, small_run, temp_dir):
        """Test two runs over the same input, config and seed write identical logs."""
        frames_dir, config_path = small_run
        logs = []
        for name in ("first", "second"):
            out = temp_dir / name
            argv = ["run", "--input", str(frames_dir), "--config", str(config_path), "--output", str(out)]
            assert main([*argv, "--seed", "3", "--redact-timings"]) == EXIT_OK
            logs.append((out / LOG_NAME).read_bytes())
        assert logs[0] == logs[1]
        assert len(logs[0].splitlines()) == 3

    def test_run_with_overlay(self, small_run, temp_dir):
        """Test --overlay writes one annotated frame per input frame."""
        frames_dir, config_path = small_run
        out = temp_dir / "out"
        code = main(["run", "--input", str(frames_dir), "--config", str(config_path), "--output", str(out), "--overlay"])
        assert code == EXIT_OK
        assert len(list((out / "frames").glob("*.png"))) == 3

    def test_missing_input_directory(self, temp_dir):
        """Test a missing frame directory is an input error."""
        code = main(["run", "--input", str(temp_dir / "nope"), "--output", str(temp_dir / "out")])
        assert code == EXIT_INPUT

    def test_missing_config(self, small_run, temp_dir):
        """Test a missing config file is a configuration error."""
        frames_dir, _ = small_run
        code = main(
            ["run", "--input", str(frames_dir), "--config", str(temp_dir / "nope.yaml"), "--output", str(temp_dir)]
        )
        assert code == EXIT_CONFIG

    def test_invalid_config(self, small_run, temp_dir, capsys):
        """Test an out-of-range value exits 2 and names the key."""
        frames_dir, _ = small_run
        bad = temp_dir / "bad.yaml"
        bad.write_text("halrr.z: 9\n")
        code = main(["run", "--input", str(frames_dir), "--config", str(bad), "--output", str(temp_dir / "out")])
        assert code == EXIT_CONFIG
        assert "halrr.z" in capsys.readouterr().err

    def test_bad_ground_truth(self, small_run, temp_dir):
        """Test a malformed ground-truth file is an input error."""
        frames_dir, config_path = small_run
        truth = temp_dir / "truth.jsonl"
        truth.write_text("not json\n")
        code = main(
            [
                "run",
                "--input",
                str(frames_dir),
                "--config",
                str(config_path),
                "--output",
                str(temp_dir / "out"),
                "--ground-truth",
                str(truth),
            ]
        )
        assert code == EXIT_INPUT

    def test_inverted_ground_truth_lane(self, small_run, temp_dir):
        """Test a lane with y1 above y2 is reported as an input error, not a crash."""
        frames_dir, config_path = small_run
        truth = temp_dir / "truth.jsonl"
        truth.write_text('{"frame_index": 0, "left": {"x1": 100, "y1": 100, "x2": 50, "y2": 200}}\n')
        argv = ["run", "--input", str(frames_dir), "--config", str(config_path), "--output", str(temp_dir / "out")]
        code = main([*argv, "--ground-truth", str(truth)])
        assert code == EXIT_INPUT


class TestReportCommand:
    """Test the report subcommand."""

    def test_report_from_run_log(self, small_run, temp_dir, capsys):
        """Test the report is rebuilt from a previous run's log."""
        frames_dir, config_path = small_run
        out = temp_dir / "out"
        main(
            [
                "run",
                "--input",
                str(frames_dir),
                "--config",
                str(config_path),
                "--output",
                str(out),
                "--ground-truth",
                str(frames_dir / GROUND_TRUTH_NAME),
            ]
        )
        capsys.readouterr()

        assert main(["--no-color", "report", "--log", str(out / LOG_NAME), "--json"]) == EXIT_OK
        output = capsys.readouterr().out
        assert '"summary"' in output
        assert '"detection_rate"' in output

    def test_missing_log(self, temp_dir):
        """Test a missing log is an input error."""
        assert main(["report", "--log", str(temp_dir / "missing.jsonl")]) == EXIT_INPUT


class TestBenchCommand:
    """Test the bench subcommand."""

    def test_bench_limit(self, small_run, capsys):
        """Test bench reports per-stage latencies for a limited number of frames."""
        frames_dir, config_path = small_run
        code = main(["--no-color", "bench", "--input", str(frames_dir), "--config", str(config_path), "--limit", "1"])
        assert code == EXIT_OK
        output = capsys.readouterr().out
        assert "smooth" in output
        assert "total" in output


class TestSweepCommand:
    """Test the sweep subcommand."""

    def test_sweep_json(self, capsys):
        """Test a one-frame sweep lists each threshold pair."""
        code = main(["--no-color", "sweep", "--suite", "colored-lane", "--frames", "1", "--thresholds", "30:10", "--json"])
        assert code == EXIT_OK
        assert '"recall"' in capsys.readouterr().out


@pytest.mark.integration
class TestBatteryCommand:
    """Test the battery subcommand."""

    def test_battery_short(self, temp_dir):
        """Test a one-frame-per-suite battery writes a combined log."""
        out = temp_dir / "battery"
        assert main(["battery", "--output", str(out), "--frames", "1"]) == EXIT_OK
        assert len((out / LOG_NAME).read_text().splitlines()) == 8
