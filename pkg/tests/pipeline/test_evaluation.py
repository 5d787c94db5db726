"""Tests for pipeline/evaluation.py module."""

import numpy as np
import pytest

from lanelab.detect.verify import LanePair
from lanelab.exceptions import InvalidParameterError
from lanelab.imgcore.canny import OitrThresholds
from lanelab.imgcore.filters import BilateralParams
from lanelab.imgcore.images import EdgeMap, RgbImage
from lanelab.pipeline.evaluation import lane_edge_recall, lateral_error, score_frame, threshold_sweep
from lanelab.pipeline.groundtruth import GroundTruthLane, GroundTruthRecord
from lanelab.track.halrr import LanePosition, Status

Y_BOTTOM = 535.0


def _truth(left=(300.0, 400.0), right=(800.0, 700.0), left_visible=True) -> GroundTruthRecord:
    def lane(xs, visible=True):
        if xs is None:
            return None
        return GroundTruthLane(x1=xs[0], y1=Y_BOTTOM, x2=xs[1], y2=368.0, visible=visible)

    return GroundTruthRecord(frame_index=0, left=lane(left, left_visible), right=lane(right))


def _lanes(left=(300.0, 400.0), right=(800.0, 700.0)) -> LanePair[LanePosition]:
    return LanePair(
        left=LanePosition(left[0], Y_BOTTOM, left[1], 368.0) if left else None,
        right=LanePosition(right[0], Y_BOTTOM, right[1], 368.0) if right else None,
    )


TRACKED = LanePair(left=Status.TRACKED, right=Status.TRACKED)


class TestScoreFrame:
    """Test per-frame correctness."""

    def test_exact_match(self):
        """Test matching lanes are correct with zero error."""
        score = score_frame(_lanes(), TRACKED, _truth(), Y_BOTTOM, 10.0)
        assert score.incorrect is False
        assert score.lateral_error == LanePair(left=0.0, right=0.0)

    def test_error_at_tolerance(self):
        """Test an error of exactly the tolerance is still correct, beyond it is not."""
        assert not score_frame(_lanes(left=(310.0, 400.0)), TRACKED, _truth(), Y_BOTTOM, 10.0).incorrect
        assert score_frame(_lanes(left=(310.5, 400.0)), TRACKED, _truth(), Y_BOTTOM, 10.0).incorrect

    def test_lost_lane_incorrect(self):
        """Test a missing lane with ground truth present is incorrect."""
        status = LanePair(left=Status.LOST, right=Status.TRACKED)
        assert score_frame(_lanes(left=None), status, _truth(), Y_BOTTOM, 10.0).incorrect

    def test_held_invisible_lane_scored_by_position(self):
        """Test a held lane over an erased marking is judged by its position."""
        status = LanePair(left=Status.HELD, right=Status.TRACKED)
        score = score_frame(_lanes(left=(303.0, 400.0)), status, _truth(left_visible=False), Y_BOTTOM, 10.0)
        assert score.incorrect is False
        assert score.lateral_error.left == pytest.approx(3.0)

    def test_spurious_lane_incorrect(self):
        """Test reporting a lane where the scene has none is incorrect."""
        assert score_frame(_lanes(), TRACKED, _truth(right=None), Y_BOTTOM, 10.0).incorrect

    def test_lateral_error_at_row(self):
        """Test the distance is measured at the given row."""
        reported = LanePosition(100, 500, 200, 400)
        truth = LanePosition(110, 500, 200, 400)
        assert lateral_error(reported, truth, 500) == 10.0
        assert lateral_error(reported, truth, 400) == 0.0


class TestLaneEdgeRecall:
    """Test the edge recall measure."""

    def test_within_tolerance(self):
        """Test detections up to two pixels away count."""
        truth = np.zeros((20, 20), dtype=bool)
        truth[5:15, 10] = True
        detected = np.zeros_like(truth)
        detected[5:12, 12] = True
        assert lane_edge_recall(EdgeMap(detected), truth, tolerance=2) == pytest.approx(0.9)
        assert lane_edge_recall(EdgeMap(detected), truth, tolerance=1) == 0.0

    def test_invalid_masks(self):
        """Test shape mismatches and empty truth are rejected."""
        with pytest.raises(InvalidParameterError):
            lane_edge_recall(EdgeMap.empty(10, 10), np.ones((5, 5), dtype=bool))
        with pytest.raises(InvalidParameterError):
            lane_edge_recall(EdgeMap.empty(10, 10), np.zeros((10, 10), dtype=bool))


class TestThresholdSweep:
    """Test threshold comparisons on a synthetic step."""

    def test_recall_falls_with_higher_thresholds(self):
        """Test a 0/40 vertical step is found at [30, 10] and missed at [200, 100]."""
        pixels = np.zeros((32, 32, 3), dtype=np.uint8)
        pixels[:, 16:] = 40
        truth = np.zeros((32, 32), dtype=bool)
        truth[4:28, 15:17] = True
        results = threshold_sweep(
            [RgbImage(pixels)],
            [truth],
            [OitrThresholds(upper=30, lower=10), OitrThresholds(upper=200, lower=100)],
            BilateralParams(radius=3),
        )
        assert [r.thresholds.upper for r in results] == [30, 200]
        assert results[0].recall == 1.0
        assert results[1].recall == 0.0
        assert results[1].edge_pixels == 0.0
