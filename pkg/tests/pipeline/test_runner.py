"""Tests for pipeline/runner.py module."""

import numpy as np
import pytest

from lanelab.config import FrameParams, PipelineConfig
from lanelab.detect.verify import LanePair, detect_lanes
from lanelab.exceptions import DimensionMismatchError, InputError
from lanelab.imgcore.canny import GRADIENT_REACH, canny_oitr
from lanelab.imgcore.filters import smooth, to_grayscale
from lanelab.imgcore.roi import apply_roi_mask
from lanelab.pipeline.constants import STAGES
from lanelab.pipeline.runner import process_frame, process_sequence
from lanelab.synthgen.generator import generate_sequence, ground_truth_record, render_frame
from lanelab.synthgen.scene import EraseLane
from lanelab.synthgen.suites import standard_suites
from lanelab.track.halrr import HalrrParams, LaneState, Status, normalize_to_scan_rows, track_update
from tests.conftest import SMALL_HEIGHT, SMALL_WIDTH, small_config, small_scene, solid_rgb


class TestProcessFrame:
    """Test single-frame processing."""

    def test_synthetic_frame_tracks_both_lanes(self, scene, config):
        """Test an ideal two-lane frame gives tracked lanes within 5 px of ground truth."""
        result, state = process_frame(render_frame(scene, 0), config, LaneState())
        truth = ground_truth_record(scene, 0)
        assert result.status == LanePair(left=Status.TRACKED, right=Status.TRACKED)
        for lane, gt in ((result.lanes.left, truth.left), (result.lanes.right, truth.right)):
            assert lane is not None
            assert abs(lane.x1 - gt.x1) <= 5
            assert abs(lane.x2 - gt.x2) <= 5
            assert lane.y1 == gt.y1 and lane.y2 == gt.y2
        assert state.frames_seen == 1
        assert state.frame_size == (SMALL_WIDTH, SMALL_HEIGHT)

    def test_black_frame_fresh_state_is_lost(self, config):
        """Test a frame with no edges leaves both sides lost."""
        result, _ = process_frame(solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, 0), config, LaneState())
        assert result.status == LanePair(left=Status.LOST, right=Status.LOST)
        assert result.lanes == LanePair()

    def test_black_frame_holds_previous_lanes(self, scene, config):
        """Test a blank frame after a detection reports the previous lanes as held."""
        first, state = process_frame(render_frame(scene, 0), config, LaneState())
        second, state = process_frame(solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, 0), config, state)
        assert second.status == LanePair(left=Status.HELD, right=Status.HELD)
        assert second.lanes == first.lanes
        assert second.frame_index == 1
        assert state.left.hold_count == 1

    def test_dimension_mismatch(self, config):
        """Test a frame of a different size than its predecessors is rejected."""
        _, state = process_frame(solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, 0), config, LaneState())
        with pytest.raises(DimensionMismatchError) as exc_info:
            process_frame(solid_rgb(SMALL_WIDTH, SMALL_HEIGHT + 2, 0), config, state)
        assert exc_info.value.frame_index == 1
        assert exc_info.value.expected == (SMALL_WIDTH, SMALL_HEIGHT)

    def test_stage_timings(self, scene, config):
        """Test every stage is timed and the stages sum to at most the total."""
        result, _ = process_frame(render_frame(scene, 0), config, LaneState())
        assert tuple(result.stage_timings_us) == STAGES
        assert all(v >= 0 for v in result.stage_timings_us.values())
        assert sum(result.stage_timings_us.values()) <= result.total_time_us

    def test_matches_manual_stage_chain(self, scene, config):
        """Test process_frame equals running the stages by hand."""
        frame = render_frame(scene, 0)
        result, _ = process_frame(frame, config, LaneState())

        width, height = frame.size
        support = config.roi.support(width, height, GRADIENT_REACH)
        smoothed = smooth(to_grayscale(frame), config.smoothing, config.bilateral, support)
        edges = canny_oitr(smoothed, config.oitr, config.canny, config.roi.mask(width, height))
        segments = detect_lanes(apply_roi_mask(edges, config.roi), config.hough, config.angle, seed=config.hough_seed)
        y_bottom, y_top = config.roi.scan_rows(frame.height)
        detected = LanePair(
            left=normalize_to_scan_rows(segments.left, y_bottom, y_top, frame.width),
            right=normalize_to_scan_rows(segments.right, y_bottom, y_top, frame.width),
        )
        _, lanes = track_update(LaneState(), detected, frame.width, config.halrr)
        assert result.lanes == lanes

    def test_resize_to_working_resolution(self, scene):
        """Test frames are brought to the configured size before processing."""
        config = small_config(frame=FrameParams(width=480, height=360, resize=True))
        result, state = process_frame(render_frame(scene, 0), config, LaneState())
        assert result.frame_size == (480, 360)
        assert state.frame_size == (SMALL_WIDTH, SMALL_HEIGHT)
        assert result.status.left is Status.TRACKED


class TestProcessSequence:
    """Test sequence processing and scoring."""

    def test_scored_clean_sequence(self):
        """Test a short clean sequence is detected on every frame."""
        spec = small_scene(frame_count=4)
        frames, truth = generate_sequence(spec)
        results, report = process_sequence(frames, small_config(), {r.frame_index: r for r in truth}, "clean")
        assert [r.frame_index for r in results] == [0, 1, 2, 3]
        assert all(r.incorrect is False for r in results)
        assert report.rows[0].condition == "clean"
        assert report.detection_rate == 100.0

    def test_ground_truth_scaled_to_working_resolution(self):
        """Test input-resolution ground truth is compared at the working resolution."""
        spec = small_scene(frame_count=2)
        frames, truth = generate_sequence(spec)
        config = small_config(frame=FrameParams(width=480, height=360, resize=True))
        results, _ = process_sequence(frames, config, {r.frame_index: r for r in truth})
        assert all(r.incorrect is False for r in results)
        assert all(r.lateral_error.left < 10 for r in results)

    def test_unscored_sequence(self, config):
        """Test without ground truth the report has no rate."""
        results, report = process_sequence([solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, 0)] * 2, config)
        assert all(r.incorrect is None for r in results)
        assert report.detection_rate is None
        assert report.total_frames == 2

    def test_lost_lanes_are_incorrect(self, config):
        """Test frames with scene lanes but no detection count as incorrect."""
        spec = small_scene(frame_count=2)
        truth = {i: ground_truth_record(spec, i) for i in range(2)}
        _, report = process_sequence([solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, 0)] * 2, config, truth)
        assert report.incorrect_frames == 2
        assert report.detection_rate == 0.0

    def test_missing_ground_truth(self, scene, config):
        """Test a frame without a ground-truth record raises InputError."""
        truth = {0: ground_truth_record(scene, 0)}
        frames = [render_frame(scene, 0), render_frame(scene, 1)]
        with pytest.raises(InputError, match="No ground truth for frame 1"):
            process_sequence(frames, config, truth)

    def test_empty_sequence(self, config):
        """Test an empty frame source raises InputError."""
        with pytest.raises(InputError, match="no frames"):
            process_sequence([], config)

    def test_frames_consumed_lazily(self, config):
        """Test the frame source is iterated once, in order."""
        seen = []

        def frames():
            for value in (0, 10, 20):
                seen.append(value)
                yield solid_rgb(SMALL_WIDTH, SMALL_HEIGHT, value)

        results, _ = process_sequence(frames(), config)
        assert seen == [0, 10, 20]
        assert len(results) == 3
        assert np.all([r.status.left is Status.LOST for r in results])


class TestTemporalBehaviour:
    """Test holding, losing and following lanes over a sequence."""

    def test_erasure_within_hold_period_is_bridged(self):
        """Test a lane erased for max_hold_frames frames is held and never lost."""
        spec = small_scene(frame_count=12, perturbations=[EraseLane(side="left", start_frame=3, end_frame=8)])
        frames, truth = generate_sequence(spec)
        config = small_config(halrr=HalrrParams(max_hold_frames=5))
        results, report = process_sequence(frames, config, {r.frame_index: r for r in truth})
        statuses = [r.status.left for r in results]
        assert Status.LOST not in statuses
        assert statuses[3:8] == [Status.HELD] * 5
        assert statuses[8] is Status.TRACKED
        assert report.detection_rate == 100.0

    def test_erasure_longer_than_hold_period_is_lost(self):
        """Test the side goes lost on the first missed frame past the hold period and re-acquires."""
        spec = small_scene(frame_count=16, perturbations=[EraseLane(side="left", start_frame=3, end_frame=13)])
        frames, _ = generate_sequence(spec)
        results, _ = process_sequence(frames, small_config(halrr=HalrrParams(max_hold_frames=5)))
        statuses = [r.status.left for r in results]
        assert statuses[3:8] == [Status.HELD] * 5
        assert statuses[8:13] == [Status.LOST] * 5
        assert statuses[13:] == [Status.TRACKED] * 3
        assert all(r.status.right is Status.TRACKED for r in results)

    @pytest.mark.integration
    def test_occluded_suite_prefix_stays_correct(self):
        """Test the occluded suite's first erasure and wipers are bridged within tolerance."""
        spec = standard_suites()["occluded"].model_copy(update={"frame_count": 70})
        frames, truth = generate_sequence(spec)
        results, _ = process_sequence(frames, PipelineConfig(), {r.frame_index: r for r in truth})
        assert all(Status.LOST not in (r.status.left, r.status.right) for r in results)
        assert all(r.incorrect is False for r in results)

    @pytest.mark.integration
    def test_lane_change_suite_stays_tracked(self):
        """Test drifting lanes stay tracked through two direction reversals."""
        spec = standard_suites()["lane-change"].model_copy(update={"frame_count": 70})
        frames, _ = generate_sequence(spec)
        results, _ = process_sequence(frames, PipelineConfig())
        tracked = sum(r.status.left is Status.TRACKED and r.status.right is Status.TRACKED for r in results)
        assert tracked / len(results) >= 0.99

    @pytest.mark.integration
    def test_occluded_suite_long_erasure_goes_lost_on_schedule(self):
        """Test an erasure of max_hold_frames + 5 frames is held, then lost on gap frame max_hold_frames + 1."""
        config = PipelineConfig()
        hold = config.halrr.max_hold_frames
        start, span = 10, hold + 5
        spec = standard_suites()["occluded"].model_copy(
            update={
                "frame_count": start + span + 5,
                "perturbations": [EraseLane(side="left", start_frame=start, end_frame=start + span)],
            }
        )
        frames, _ = generate_sequence(spec)
        results, _ = process_sequence(frames, config)
        statuses = [r.status.left for r in results]
        assert statuses[:start] == [Status.TRACKED] * start
        assert statuses[start : start + hold] == [Status.HELD] * hold
        # gap frames are counted from 1
        first_lost = next(i for i, s in enumerate(statuses) if s is Status.LOST)
        assert first_lost - start + 1 == hold + 1 == 25
        assert statuses[start + hold : start + span] == [Status.LOST] * 5
        assert statuses[start + span :] == [Status.TRACKED] * 5
        assert all(r.status.right is Status.TRACKED for r in results)
