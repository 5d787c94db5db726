"""Scoring against ground truth, and edge recall for threshold comparisons."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import ndimage

from lanelab.detect.candidates import Side
from lanelab.detect.verify import LanePair
from lanelab.exceptions import InvalidParameterError
from lanelab.imgcore.canny import CannyParams, OitrThresholds, canny_oitr
from lanelab.imgcore.filters import BilateralParams, SmoothingParams, smooth, to_grayscale
from lanelab.imgcore.images import EdgeMap, RgbImage
from lanelab.pipeline.groundtruth import GroundTruthRecord
from lanelab.track.halrr import LanePosition, Status

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameScore:
    incorrect: bool
    lateral_error: LanePair[float]


def lateral_error(reported: LanePosition, truth: LanePosition, y: float) -> float:
    """Horizontal distance between the two lines at row ``y``."""
    return abs(reported.x_at(y) - truth.x_at(y))


def score_frame(
    lanes: LanePair[LanePosition],
    status: LanePair[Status],
    truth: GroundTruthRecord,
    y_bottom: float,
    tolerance: float,
) -> FrameScore:
    """A frame is incorrect when a lane in the scene is reported lost, when a
    reported lane is off by more than ``tolerance`` at the bottom scan row,
    or when a lane is reported where the scene has none.
    """
    incorrect = False
    errors: dict[str, Optional[float]] = {"left": None, "right": None}
    for side in (Side.LEFT, Side.RIGHT):
        gt = truth.lane(side)
        reported = lanes.get(side)
        if gt is None:
            incorrect |= reported is not None
            continue
        if reported is None or status.get(side) is Status.LOST:
            incorrect = True
            continue
        err = lateral_error(reported, gt.position(), y_bottom)
        errors[side.value] = err
        incorrect |= err > tolerance
    return FrameScore(incorrect=incorrect, lateral_error=LanePair(left=errors["left"], right=errors["right"]))


def lane_edge_recall(edges: EdgeMap, truth_edges: np.ndarray, tolerance: int = 2) -> float:
    """Fraction of ground-truth edge pixels with a detected edge within ``tolerance`` pixels (chessboard distance).

    Raises:
        InvalidParameterError: shapes differ or the truth mask is empty
    """
    if truth_edges.shape != edges.mask.shape:
        raise InvalidParameterError(f"Truth mask shape {truth_edges.shape} differs from edge map {edges.mask.shape}")
    total = int(truth_edges.sum())
    if total == 0:
        raise InvalidParameterError("Truth mask holds no edge pixels")
    reach = edges.mask
    if tolerance > 0:
        reach = ndimage.binary_dilation(edges.mask, structure=np.ones((2 * tolerance + 1, 2 * tolerance + 1), bool))
    return float((reach & truth_edges).sum()) / total


@dataclass(frozen=True)
class SweepResult:
    thresholds: OitrThresholds
    recall: float
    edge_pixels: float


def threshold_sweep(
    frames: Sequence[RgbImage],
    truth_masks: Sequence[np.ndarray],
    pairs: Iterable[OitrThresholds],
    bilateral: BilateralParams,
    smoothing: Optional[SmoothingParams] = None,
    canny: Optional[CannyParams] = None,
    tolerance: int = 2,
) -> list[SweepResult]:
    """Mean lane-edge recall and mean edge count per threshold pair.

    Frames are smoothed once and reused for every pair.
    """
    smoothing = smoothing or SmoothingParams()
    smoothed = [smooth(to_grayscale(f), smoothing, bilateral) for f in frames]
    results = []
    for pair in pairs:
        recalls = []
        counts = []
        for img, truth in zip(smoothed, truth_masks):
            edges = canny_oitr(img, pair, canny)
            recalls.append(lane_edge_recall(edges, truth, tolerance))
            counts.append(edges.count())
        result = SweepResult(thresholds=pair, recall=float(np.mean(recalls)), edge_pixels=float(np.mean(counts)))
        logger.info("Thresholds [%g, %g]: recall %.3f", pair.upper, pair.lower, result.recall)
        results.append(result)
    return results
