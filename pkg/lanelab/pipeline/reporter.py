"""Console rendering of reports, latency tables and threshold sweeps."""

import json
from typing import Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from lanelab.pipeline.bench import StageLatency
from lanelab.pipeline.constants import (
    LATENCY_BUDGET_MS,
    REFERENCE_FRAME_MS,
    REFERENCE_LEFT_BAND_DEG,
    REFERENCE_RIGHT_BAND_DEG,
    REFERENCE_TRACKER_MS,
)
from lanelab.pipeline.evaluation import SweepResult
from lanelab.pipeline.report import ConditionRow, DetectionReport, format_rate


def _ms(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _add_row(table: Table, row: ConditionRow, style: Optional[str] = None) -> None:
    table.add_row(
        row.condition,
        str(row.total_frames),
        "-" if row.incorrect_frames is None else str(row.incorrect_frames),
        format_rate(row.detection_rate),
        _ms(row.mean_latency_ms),
        _ms(row.median_latency_ms),
        style=style,
    )


def report_detection(report: DetectionReport, console: Console, format: str = "text") -> None:
    """Print the per-condition table and the total row."""
    if format == "json":
        console.print_json(report.model_dump_json())
        return

    table = Table(title="Detection rate")
    table.add_column("Condition", style="cyan")
    table.add_column("Frames", justify="right")
    table.add_column("Incorrect", justify="right")
    table.add_column("Rate (%)", justify="right", style="green")
    table.add_column("Mean ms", justify="right", style="dim")
    table.add_column("Median ms", justify="right", style="dim")
    for row in report.rows:
        _add_row(table, row)
    if len(report.rows) > 1:
        table.add_section()
        _add_row(table, report.summary, style="bold")
    console.print(table)


def report_latency(rows: Sequence[StageLatency], console: Console, format: str = "text") -> None:
    """Per-stage percentiles next to the published reference times."""
    if format == "json":
        console.print_json(
            json.dumps(
                {
                    "stages": list(rows),
                    "reference_frame_ms": REFERENCE_FRAME_MS,
                    "reference_tracker_ms": REFERENCE_TRACKER_MS,
                }
            )
        )
        return

    table = Table(title="Per-stage latency")
    table.add_column("Stage", style="cyan")
    table.add_column("Mean ms", justify="right")
    table.add_column("p50 ms", justify="right")
    table.add_column("p90 ms", justify="right")
    table.add_column("p99 ms", justify="right")
    for row in rows:
        table.add_row(
            row["stage"],
            _ms(row["mean_ms"]),
            _ms(row["p50_ms"]),
            _ms(row["p90_ms"]),
            _ms(row["p99_ms"]),
            style="bold" if row["stage"] == "total" else None,
        )
    console.print(table)

    total = next((r for r in rows if r["stage"] == "total"), None)
    track = next((r for r in rows if r["stage"] == "track"), None)
    lines = [f"Reference frame time: {REFERENCE_FRAME_MS} ms; desktop budget: {LATENCY_BUDGET_MS:g} ms"]
    if total is not None:
        verdict = "[green]within[/green]" if total["p50_ms"] <= LATENCY_BUDGET_MS else "[red]over[/red]"
        lines.append(f"Median frame time: {total['p50_ms']:.2f} ms ({verdict} budget)")
    if track is not None:
        lines.append(f"Tracking: {track['p50_ms']:.3f} ms median (reference {REFERENCE_TRACKER_MS} ms)")
    lines.append(
        "Reference angle bands: left {}-{} deg, right {}-{} deg".format(
            *(f"{v:g}" for v in REFERENCE_LEFT_BAND_DEG + REFERENCE_RIGHT_BAND_DEG)
        )
    )
    console.print(Panel("\n".join(lines), title="Reference", expand=False))


def report_sweep(results: Sequence[SweepResult], console: Console, format: str = "text") -> None:
    if format == "json":
        console.print_json(
            json.dumps(
                [
                    {
                        "upper": r.thresholds.upper,
                        "lower": r.thresholds.lower,
                        "recall": r.recall,
                        "edge_pixels": r.edge_pixels,
                    }
                    for r in results
                ]
            )
        )
        return

    table = Table(title="Lane-edge recall by threshold pair")
    table.add_column("Thresholds", style="cyan")
    table.add_column("Recall", justify="right", style="green")
    table.add_column("Edge pixels / frame", justify="right", style="dim")
    for r in results:
        table.add_row(f"[{r.thresholds.upper:g}, {r.thresholds.lower:g}]", f"{r.recall:.1%}", f"{r.edge_pixels:.0f}")
    console.print(table)
