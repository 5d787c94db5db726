"""Run the pipeline over the synthetic suites and tabulate one row per suite."""

import logging
from typing import Callable, Mapping, Optional

from lanelab.config import PipelineConfig
from lanelab.pipeline.report import DetectionReport, build_report
from lanelab.pipeline.runner import FrameResult, process_sequence
from lanelab.synthgen.generator import iter_sequence
from lanelab.synthgen.scene import SceneSpec
from lanelab.synthgen.suites import standard_suites

logger = logging.getLogger(__name__)


def run_suite(
    name: str, spec: SceneSpec, config: PipelineConfig, frame_count: Optional[int] = None
) -> list[FrameResult]:
    """Generate the suite lazily and score every frame against its ground truth."""
    truth = {}

    def frames():
        for frame, record in iter_sequence(spec, frame_count):
            truth[record.frame_index] = record
            yield frame

    results, _ = process_sequence(frames(), config, ground_truth=truth, condition=name)
    return results


def run_battery(
    config: PipelineConfig,
    frame_count: Optional[int] = None,
    suites: Optional[Mapping[str, SceneSpec]] = None,
    on_suite_done: Optional[Callable[[str, list[FrameResult]], None]] = None,
) -> tuple[dict[str, list[FrameResult]], DetectionReport]:
    """Every suite in order; ``frame_count`` truncates each one."""
    suites = suites if suites is not None else standard_suites()
    results: dict[str, list[FrameResult]] = {}
    for name, spec in suites.items():
        logger.info("Running suite %s", name)
        results[name] = run_suite(name, spec, config, frame_count)
        if on_suite_done is not None:
            on_suite_done(name, results[name])
    return results, build_report(results)
