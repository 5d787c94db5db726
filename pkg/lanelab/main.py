"""Command-line interface for lanelab."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel

from lanelab import __version__
from lanelab.config import PipelineConfig, load_config
from lanelab.exceptions import ConfigError, InputError, InvalidParameterError, OutputWriteError
from lanelab.imgcore.canny import OitrThresholds
from lanelab.pipeline.battery import run_battery
from lanelab.pipeline.bench import stage_latencies
from lanelab.pipeline.emit import emit_outputs
from lanelab.pipeline.evaluation import threshold_sweep
from lanelab.pipeline.frames import list_frames, read_frames
from lanelab.pipeline.groundtruth import read_ground_truth
from lanelab.pipeline.report import report_from_log
from lanelab.pipeline.reporter import report_detection, report_latency, report_sweep
from lanelab.pipeline.runner import process_sequence
from lanelab.synthgen.generator import generate_sequence, lane_edge_mask, write_sequence
from lanelab.synthgen.suites import SUITES_VERSION, standard_suites

logger = logging.getLogger("lanelab")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2

DEFAULT_SWEEP = ("50:10", "45:15", "30:10")


def _threshold_pair(value: str) -> OitrThresholds:
    try:
        upper, lower = (float(v) for v in value.split(":"))
        return OitrThresholds(upper=upper, lower=lower)
    except (ValueError, ValidationError) as e:
        raise argparse.ArgumentTypeError(f"expected UPPER:LOWER with 0 < LOWER < UPPER, got '{value}'") from e


def _create_parser() -> argparse.ArgumentParser:
    """Create and return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="lanelab",
        description="Lane detection and tracking on frame sequences, with synthetic ground truth.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
CONFIG FILE FORMAT (YAML, flat namespaced keys):
  oitr.upper: 30
  oitr.lower: 10
  bilateral.radius: 6
  halrr.z: 5
  hough_seed: 0

EXIT CODES:
  0  success
  1  input or output error (unreadable frame, bad ground truth, unwritable output)
  2  configuration error

EXAMPLES:
  lanelab synth --suite clean --output ./clean --frames 50
  lanelab run --input ./clean --output ./out --ground-truth ./clean/ground_truth.jsonl
  lanelab run --input ./frames --config lanes.yaml --output ./out --overlay --redact-timings
  lanelab report --log ./out/detections.jsonl
  lanelab bench --input ./clean --limit 20
  lanelab battery --output ./battery --frames 100
  lanelab sweep --suite colored-lane --thresholds 45:15 30:10
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log per-frame details")
    parser.add_argument("--no-color", action="store_true", help="Disable colored output (for CI/scripts)")

    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Detect and track lanes in a directory of frames")
    run.add_argument("--input", required=True, type=Path, help="Directory of numbered PNG/PPM/PGM frames")
    run.add_argument("--config", type=Path, help="Config file (default: packaged defaults)")
    run.add_argument("--output", required=True, type=Path, help="Directory for the log, report and summary")
    run.add_argument("--overlay", action="store_true", help="Also write annotated frames")
    run.add_argument("--ground-truth", type=Path, help="Ground-truth JSON Lines file to score against")
    run.add_argument("--seed", type=int, help="Override hough_seed")
    run.add_argument("--redact-timings", action="store_true", help="Write null timings so logs are reproducible")
    run.add_argument("--condition", default="default", help="Condition name for the report row")

    report = sub.add_parser("report", help="Recompute the detection report from a log")
    report.add_argument("--log", required=True, type=Path, help="detections.jsonl from a previous run")
    report.add_argument("--json", action="store_true", help="Output the report as JSON")

    bench = sub.add_parser("bench", help="Per-stage latency percentiles")
    bench.add_argument("--input", required=True, type=Path, help="Directory of frames")
    bench.add_argument("--config", type=Path, help="Config file (default: packaged defaults)")
    bench.add_argument("--limit", type=int, help="Process at most this many frames")
    bench.add_argument("--json", action="store_true", help="Output latencies as JSON")

    synth = sub.add_parser("synth", help="Write a synthetic suite as PNG frames plus ground truth")
    synth.add_argument("--suite", required=True, choices=sorted(standard_suites()), help="Suite name")
    synth.add_argument("--output", required=True, type=Path, help="Output directory")
    synth.add_argument("--frames", type=int, help="Write only the first N frames")

    battery = sub.add_parser("battery", help="Run the pipeline over every synthetic suite")
    battery.add_argument("--output", required=True, type=Path, help="Directory for the combined log and report")
    battery.add_argument("--config", type=Path, help="Config file (default: packaged defaults)")
    battery.add_argument("--frames", type=int, help="Frames per suite (default: the full suite)")

    sweep = sub.add_parser("sweep", help="Compare Canny threshold pairs by lane-edge recall")
    sweep.add_argument("--suite", default="colored-lane", choices=sorted(standard_suites()), help="Suite name")
    sweep.add_argument("--config", type=Path, help="Config file for the smoothing stage")
    sweep.add_argument("--frames", type=int, default=5, help="Frames to evaluate (default: 5)")
    sweep.add_argument(
        "--thresholds",
        nargs="+",
        type=_threshold_pair,
        default=[_threshold_pair(v) for v in DEFAULT_SWEEP],
        help="Threshold pairs as UPPER:LOWER (default: 50:10 45:15 30:10)",
    )
    sweep.add_argument("--json", action="store_true", help="Output results as JSON")

    return parser


def _setup_logging(verbose: bool, console: Console) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False, rich_tracebacks=verbose)],
        force=True,
    )
    # compiled-kernel chatter is never useful here
    logging.getLogger("numba").setLevel(logging.WARNING)


def _cmd_run(args: argparse.Namespace, config: PipelineConfig, console: Console) -> int:
    config = config.with_seed(args.seed)
    paths = list_frames(args.input)
    truth = read_ground_truth(args.ground_truth) if args.ground_truth else None
    with console.status(f"Processing {len(paths)} frames..."):
        results, report = process_sequence(read_frames(paths), config, truth, condition=args.condition)
    with console.status("Writing outputs..."):
        emit_outputs(
            results,
            report,
            args.output,
            frames=read_frames(paths) if args.overlay else None,
            config=config,
            redact_timings=args.redact_timings,
        )
    report_detection(report, console)
    console.print(f"[green]✓[/green] Wrote results for {len(results)} frames to {args.output}")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace, console: Console) -> int:
    report = report_from_log(args.log)
    report_detection(report, console, format="json" if args.json else "text")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace, config: PipelineConfig, console: Console) -> int:
    paths = list_frames(args.input)
    if args.limit is not None:
        paths = paths[: max(1, args.limit)]
    with console.status(f"Timing {len(paths)} frames..."):
        results, _ = process_sequence(read_frames(paths), config)
    report_latency(stage_latencies(results), console, format="json" if args.json else "text")
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace, console: Console) -> int:
    spec = standard_suites()[args.suite]
    with console.status(f"Rendering suite {args.suite}..."):
        count = write_sequence(spec, args.output, args.frames)
    console.print(f"[green]✓[/green] Wrote {count} frames of '{args.suite}' (suites v{SUITES_VERSION}) to {args.output}")
    return EXIT_OK


def _cmd_battery(args: argparse.Namespace, config: PipelineConfig, console: Console) -> int:
    suites = standard_suites()
    with console.status("Running battery...") as status:

        def done(name: str, results: list) -> None:
            status.update(f"Finished {name} ({len(results)} frames)...")

        by_suite, report = run_battery(config, args.frames, suites, on_suite_done=done)
    all_results = [r for results in by_suite.values() for r in results]
    emit_outputs(all_results, report, args.output, config=config)
    report_detection(report, console)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, config: PipelineConfig, console: Console) -> int:
    spec = standard_suites()[args.suite]
    count = max(1, min(args.frames, spec.frame_count))
    spec = spec.model_copy(update={"frame_count": count})
    with console.status(f"Sweeping {len(args.thresholds)} threshold pairs..."):
        frames, _ = generate_sequence(spec)
        truth = [lane_edge_mask(spec, i, config.roi) for i in range(count)]
        results = threshold_sweep(frames, truth, args.thresholds, config.bilateral, config.smoothing, config.canny)
    report_sweep(results, console, format="json" if args.json else "text")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    """
    Main entry point for the lanelab CLI.

    Returns:
        0 on success, 1 on input/output errors, 2 on configuration errors
    """
    parser = _create_parser()
    args = parser.parse_args(argv)

    console = Console(no_color=args.no_color, highlight=False)
    err_console = Console(stderr=True, no_color=args.no_color, highlight=False)
    _setup_logging(args.verbose, err_console)

    try:
        if args.command == "report":
            return _cmd_report(args, console)
        if args.command == "synth":
            return _cmd_synth(args, console)

        config = load_config(args.config)
        if args.command == "run":
            return _cmd_run(args, config, console)
        if args.command == "bench":
            return _cmd_bench(args, config, console)
        if args.command == "battery":
            return _cmd_battery(args, config, console)
        return _cmd_sweep(args, config, console)
    except (ConfigError, ValidationError, InvalidParameterError) as e:
        err_console.print(Panel(str(e), title="Configuration error", style="red", expand=False))
        return EXIT_CONFIG
    except (InputError, OutputWriteError) as e:
        err_console.print(Panel(str(e), title="Input/output error", style="red", expand=False))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
