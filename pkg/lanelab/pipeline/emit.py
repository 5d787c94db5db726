"""Run artefacts: detection log, CSV report, Markdown summary, overlay frames."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

from jinja2 import Environment, FileSystemLoader

from lanelab import __version__
from lanelab.config import PipelineConfig
from lanelab.detect.candidates import Side
from lanelab.exceptions import OutputWriteError
from lanelab.imgcore.images import RgbImage, write_image
from lanelab.pipeline.constants import REFERENCE_FRAME_MS, REFERENCE_TRACKER_MS
from lanelab.pipeline.overlay import render_overlay
from lanelab.pipeline.report import DetectionReport, format_rate
from lanelab.pipeline.runner import FrameResult

logger = logging.getLogger(__name__)

LOG_NAME = "detections.jsonl"
REPORT_NAME = "report.csv"
SUMMARY_NAME = "summary.md"
FRAMES_DIR = "frames"

CSV_COLUMNS = ["condition", "f_t", "f_i", "rate", "mean_ms", "median_ms"]

TEMPLATES_DIR = Path(__file__).parent / "templates"
JINJA_ENV = Environment(loader=FileSystemLoader(TEMPLATES_DIR), keep_trailing_newline=True)


def _round(value: Optional[float], digits: int = 3) -> Optional[float]:
    return None if value is None else round(float(value), digits)


def log_record(result: FrameResult, redact_timings: bool = False) -> dict[str, Any]:
    """One JSON Lines object; timings are nulled when redacted."""
    record: dict[str, Any] = {"frame_index": result.frame_index, "condition": result.condition}
    for side in (Side.LEFT, Side.RIGHT):
        lane = result.lanes.get(side)
        status = result.status.get(side)
        record[side.value] = {
            "status": status.value if status is not None else None,
            "position": [_round(v) for v in lane.as_tuple()] if lane is not None else None,
        }
    record["incorrect"] = result.incorrect
    record["lateral_error"] = {
        "left": _round(result.lateral_error.left),
        "right": _round(result.lateral_error.right),
    }
    if redact_timings:
        record["stage_timings_us"] = None
        record["total_time_us"] = None
    else:
        record["stage_timings_us"] = {k: _round(v, 1) for k, v in result.stage_timings_us.items()}
        record["total_time_us"] = _round(result.total_time_us, 1)
    return record


def _csv_row(row: Any) -> list[str]:
    return [
        row.condition,
        str(row.total_frames),
        "" if row.incorrect_frames is None else str(row.incorrect_frames),
        format_rate(row.detection_rate),
        "" if row.mean_latency_ms is None else f"{row.mean_latency_ms:.2f}",
        "" if row.median_latency_ms is None else f"{row.median_latency_ms:.2f}",
    ]


def write_log(results: Iterable[FrameResult], path: Path, redact_timings: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for result in results:
            f.write(json.dumps(log_record(result, redact_timings)) + "\n")


def write_report_csv(report: DetectionReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(_csv_row(row))
        writer.writerow(_csv_row(report.summary))


def render_summary(report: DetectionReport, config: Optional[PipelineConfig] = None) -> str:
    template = JINJA_ENV.get_template("summary.md.j2")
    return template.render(
        version=__version__,
        rows=[_csv_row(r) for r in report.rows],
        summary=_csv_row(report.summary),
        config=config,
        reference_frame_ms=REFERENCE_FRAME_MS,
        reference_tracker_ms=REFERENCE_TRACKER_MS,
    )


def emit_outputs(
    results: Sequence[FrameResult],
    report: DetectionReport,
    output_dir: Union[str, Path],
    frames: Optional[Iterable[RgbImage]] = None,
    config: Optional[PipelineConfig] = None,
    redact_timings: bool = False,
) -> None:
    """Write the log, CSV report and summary to ``output_dir``.

    When ``frames`` is given (the overlay flag), each frame is annotated with
    its result and written as ``frames/frame_NNNNN.png``.

    Raises:
        OutputWriteError: any artefact cannot be written
    """
    output_dir = Path(output_dir)
    current = output_dir
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        current = output_dir / LOG_NAME
        write_log(results, current, redact_timings)
        current = output_dir / REPORT_NAME
        write_report_csv(report, current)
        current = output_dir / SUMMARY_NAME
        current.write_text(render_summary(report, config), encoding="utf-8")

        if frames is not None:
            frames_dir = output_dir / FRAMES_DIR
            frames_dir.mkdir(exist_ok=True)
            overlay = config.overlay if config is not None else None
            roi = config.roi if config is not None else None
            for result, frame in zip(results, frames):
                current = frames_dir / f"frame_{result.frame_index:05d}.png"
                write_image(render_overlay(frame, result, overlay, roi), current)
    except OSError as e:
        raise OutputWriteError(current, e.strerror or str(e)) from e
    logger.info("Wrote %d records to %s", len(results), output_dir)
