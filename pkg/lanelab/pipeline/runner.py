"""Per-frame pipeline and sequence driver."""

import logging
import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

from lanelab.config import PipelineConfig
from lanelab.detect.verify import LanePair, detect_lanes
from lanelab.exceptions import DimensionMismatchError, InputError
from lanelab.imgcore.canny import GRADIENT_REACH, canny_oitr
from lanelab.imgcore.filters import resize_rgb, smooth, to_grayscale
from lanelab.imgcore.images import RgbImage
from lanelab.imgcore.roi import apply_roi_mask
from lanelab.pipeline.evaluation import score_frame
from lanelab.pipeline.groundtruth import GroundTruthRecord
from lanelab.pipeline.report import DetectionReport, build_report
from lanelab.track.halrr import LanePosition, LaneState, Status, normalize_to_scan_rows, track_update

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameResult:
    """Outcome of one frame: tracked lanes, their status, and stage timings in microseconds."""

    frame_index: int
    lanes: LanePair[LanePosition]
    status: LanePair[Status]
    stage_timings_us: dict[str, float]
    total_time_us: float
    # working resolution the lane coordinates refer to
    frame_size: tuple[int, int]
    condition: str = "default"
    incorrect: Optional[bool] = None
    lateral_error: LanePair[float] = field(default_factory=LanePair)


class _StageClock:
    def __init__(self) -> None:
        self.timings: dict[str, float] = {}
        self.start = time.perf_counter_ns()
        self._last = self.start

    def lap(self, stage: str) -> None:
        now = time.perf_counter_ns()
        self.timings[stage] = (now - self._last) / 1000.0
        self._last = now

    def total_us(self) -> float:
        return (time.perf_counter_ns() - self.start) / 1000.0


def process_frame(
    frame: RgbImage, config: PipelineConfig, state: LaneState, condition: str = "default"
) -> tuple[FrameResult, LaneState]:
    """Run one frame through every stage and advance the tracker.

    The returned state remembers the input frame size; later frames of the
    same sequence must match it.

    Raises:
        DimensionMismatchError: the frame size differs from earlier frames of the sequence
    """
    input_size = frame.size
    if state.frame_size is not None and state.frame_size != input_size:
        raise DimensionMismatchError(state.frames_seen, state.frame_size, input_size)
    frame_index = state.frames_seen

    clock = _StageClock()
    if config.frame.resize:
        frame = resize_rgb(frame, config.frame.width, config.frame.height)
    clock.lap("resize")
    gray = to_grayscale(frame)
    clock.lap("grayscale")
    # only pixels the ROI can see are smoothed and searched for edges
    support = config.roi.support(frame.width, frame.height, GRADIENT_REACH)
    smoothed = smooth(gray, config.smoothing, config.bilateral, support)
    clock.lap("smooth")
    edges = canny_oitr(smoothed, config.oitr, config.canny, config.roi.mask(frame.width, frame.height))
    clock.lap("canny")
    masked = apply_roi_mask(edges, config.roi)
    clock.lap("roi")
    segments = detect_lanes(masked, config.hough, config.angle, seed=config.hough_seed)
    clock.lap("detect")
    y_bottom, y_top = config.roi.scan_rows(frame.height)
    detected = LanePair(
        left=normalize_to_scan_rows(segments.left, y_bottom, y_top, frame.width) if segments.left else None,
        right=normalize_to_scan_rows(segments.right, y_bottom, y_top, frame.width) if segments.right else None,
    )
    clock.lap("normalize")
    new_state, lanes = track_update(state, detected, frame.width, config.halrr)
    clock.lap("track")
    new_state = replace(new_state, frame_size=input_size)

    result = FrameResult(
        frame_index=frame_index,
        lanes=lanes,
        status=LanePair(left=new_state.left.status, right=new_state.right.status),
        stage_timings_us=clock.timings,
        total_time_us=clock.total_us(),
        frame_size=frame.size,
        condition=condition,
    )
    logger.debug(
        "Frame %d: left=%s right=%s (%.1f ms)",
        frame_index,
        result.status.left.value if result.status.left else "-",
        result.status.right.value if result.status.right else "-",
        result.total_time_us / 1000.0,
    )
    return result, new_state


def process_sequence(
    frames: Iterable[RgbImage],
    config: PipelineConfig,
    ground_truth: Optional[Mapping[int, GroundTruthRecord]] = None,
    condition: str = "default",
) -> tuple[list[FrameResult], DetectionReport]:
    """Track lanes through frames in order and score them when ground truth is given.

    Ground truth is in input-frame coordinates and is scaled to the working
    resolution before scoring.

    Raises:
        InputError: no frames, a frame without ground truth, or any frame read / size error
    """
    state = LaneState()
    results: list[FrameResult] = []
    for frame in frames:
        result, state = process_frame(frame, config, state, condition)
        if ground_truth is not None:
            truth = ground_truth.get(result.frame_index)
            if truth is None:
                raise InputError(f"No ground truth for frame {result.frame_index}")
            assert state.frame_size is not None
            sx = result.frame_size[0] / state.frame_size[0]
            sy = result.frame_size[1] / state.frame_size[1]
            if (sx, sy) != (1.0, 1.0):
                truth = truth.scaled(sx, sy)
            y_bottom, _ = config.roi.scan_rows(result.frame_size[1])
            score = score_frame(result.lanes, result.status, truth, y_bottom, config.evaluation.tolerance_px)
            result = replace(result, incorrect=score.incorrect, lateral_error=score.lateral_error)
        results.append(result)

    if not results:
        raise InputError("Sequence holds no frames")
    report = build_report({condition: results})
    logger.info("Processed %d frames (%s)", len(results), condition)
    return results, report
