"""Detection-rate reports: (f_t - f_i) / f_t per condition and overall."""

import json
from collections import defaultdict
from pathlib import Path
from typing import Mapping, Optional, Protocol, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field, computed_field, model_validator

from lanelab.exceptions import InputError, InvalidParameterError

TOTAL_CONDITION = "total"


class _Scored(Protocol):
    @property
    def incorrect(self) -> Optional[bool]: ...

    @property
    def total_time_us(self) -> float: ...


def detection_rate(total_frames: int, incorrect_frames: int) -> float:
    """Percentage of correctly detected frames.

    Raises:
        InvalidParameterError: no frames, or more incorrect frames than frames
    """
    if total_frames <= 0:
        raise InvalidParameterError("Detection rate needs at least one frame")
    if not 0 <= incorrect_frames <= total_frames:
        raise InvalidParameterError(f"Incorrect frames ({incorrect_frames}) must lie in [0, {total_frames}]")
    return (total_frames - incorrect_frames) / total_frames * 100.0


def format_rate(rate: Optional[float]) -> str:
    return "n/a" if rate is None else f"{rate:.2f}"


class ConditionRow(BaseModel):
    """One row of the report. ``incorrect_frames`` is None when nothing was scored."""

    model_config = {"frozen": True}

    condition: str
    total_frames: int = Field(ge=0)
    incorrect_frames: Optional[int] = Field(default=None, ge=0)
    mean_latency_ms: Optional[float] = None
    median_latency_ms: Optional[float] = None

    @model_validator(mode="after")
    def _incorrect_within_total(self) -> "ConditionRow":
        if self.incorrect_frames is not None and self.incorrect_frames > self.total_frames:
            raise ValueError(
                f"incorrect_frames ({self.incorrect_frames}) exceeds total_frames ({self.total_frames})"
            )
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def detection_rate(self) -> Optional[float]:
        if self.incorrect_frames is None or self.total_frames == 0:
            return None
        return detection_rate(self.total_frames, self.incorrect_frames)


class DetectionReport(BaseModel):
    """Per-condition rows plus the overall summary row."""

    model_config = {"frozen": True}

    rows: list[ConditionRow]
    summary: ConditionRow

    @property
    def total_frames(self) -> int:
        return self.summary.total_frames

    @property
    def incorrect_frames(self) -> Optional[int]:
        return self.summary.incorrect_frames

    @property
    def detection_rate(self) -> Optional[float]:
        return self.summary.detection_rate

    @property
    def mean_latency_ms(self) -> Optional[float]:
        return self.summary.mean_latency_ms

    @property
    def median_latency_ms(self) -> Optional[float]:
        return self.summary.median_latency_ms


def _latency_stats(latencies_ms: list[float]) -> tuple[Optional[float], Optional[float]]:
    if not latencies_ms:
        return None, None
    values = np.asarray(latencies_ms, dtype=np.float64)
    return float(values.mean()), float(np.median(values))


def _row(condition: str, incorrect: list[Optional[bool]], latencies_ms: list[float]) -> ConditionRow:
    scored = [flag for flag in incorrect if flag is not None]
    # a partly scored condition cannot yield a rate
    incorrect_frames = sum(scored) if scored and len(scored) == len(incorrect) else None
    mean, median = _latency_stats(latencies_ms)
    return ConditionRow(
        condition=condition,
        total_frames=len(incorrect),
        incorrect_frames=incorrect_frames,
        mean_latency_ms=mean,
        median_latency_ms=median,
    )


def _assemble(groups: Mapping[str, tuple[list[Optional[bool]], list[float]]]) -> DetectionReport:
    rows = [_row(name, flags, lat) for name, (flags, lat) in groups.items()]
    all_flags = [f for flags, _ in groups.values() for f in flags]
    all_lat = [v for _, lat in groups.values() for v in lat]
    return DetectionReport(rows=rows, summary=_row(TOTAL_CONDITION, all_flags, all_lat))


def build_report(results_by_condition: Mapping[str, Sequence[_Scored]]) -> DetectionReport:
    """Aggregate per-frame results; each mapping key becomes one row."""
    groups = {}
    for condition, results in results_by_condition.items():
        flags = [r.incorrect for r in results]
        latencies = [r.total_time_us / 1000.0 for r in results]
        groups[condition] = (flags, latencies)
    return _assemble(groups)


def report_from_log(path: Union[str, Path]) -> DetectionReport:
    """Rebuild the report from a detection log written by ``emit_outputs``.

    Raises:
        InputError: the log is missing, empty, or has malformed records
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputError(f"Cannot read detection log {path}: {e.strerror or e}") from e

    groups: dict[str, tuple[list[Optional[bool]], list[float]]] = defaultdict(lambda: ([], []))
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            condition = str(record["condition"])
            incorrect = record["incorrect"]
            total_us = record["total_time_us"]
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise InputError(f"{path}:{line_no}: malformed detection record ({e})") from e
        flags, latencies = groups[condition]
        flags.append(None if incorrect is None else bool(incorrect))
        if total_us is not None:
            latencies.append(float(total_us) / 1000.0)
    if not groups:
        raise InputError(f"Detection log {path} holds no records")
    return _assemble(dict(groups))
