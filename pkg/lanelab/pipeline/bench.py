"""Per-stage latency statistics."""

from typing import Sequence, TypedDict

import numpy as np

from lanelab.pipeline.constants import STAGES
from lanelab.pipeline.runner import FrameResult

PERCENTILES = (50, 90, 99)


class StageLatency(TypedDict):
    """Latency of one stage over a run, in milliseconds."""

    stage: str
    mean_ms: float
    p50_ms: float
    p90_ms: float
    p99_ms: float


def _summarize(stage: str, values_us: list[float]) -> StageLatency:
    values = np.asarray(values_us, dtype=np.float64) / 1000.0
    p50, p90, p99 = np.percentile(values, PERCENTILES)
    return StageLatency(stage=stage, mean_ms=float(values.mean()), p50_ms=float(p50), p90_ms=float(p90), p99_ms=float(p99))


def stage_latencies(results: Sequence[FrameResult]) -> list[StageLatency]:
    """Stage rows in pipeline order, then a ``total`` row for the whole frame."""
    if not results:
        return []
    rows = []
    for stage in STAGES:
        values = [r.stage_timings_us[stage] for r in results if stage in r.stage_timings_us]
        if values:
            rows.append(_summarize(stage, values))
    rows.append(_summarize("total", [r.total_time_us for r in results]))
    return rows
