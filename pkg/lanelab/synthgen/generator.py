"""Render synthetic frames and their lane ground truth."""

import logging
import math
from pathlib import Path
from typing import Iterator, Optional, Union

import numpy as np
from PIL import Image, ImageDraw
from scipy import ndimage

from lanelab.exceptions import OutputWriteError
from lanelab.imgcore.images import RgbImage, write_image
from lanelab.imgcore.roi import TrapezoidRoi
from lanelab.pipeline.groundtruth import GroundTruthLane, GroundTruthRecord, write_ground_truth
from lanelab.synthgen.scene import (
    BrightnessShift,
    DistractorLine,
    EraseLane,
    GaussianBlur,
    LaneSpec,
    OcclusionBand,
    SceneSpec,
)

logger = logging.getLogger(__name__)

SIDES = ("left", "right")
GROUND_TRUTH_NAME = "ground_truth.jsonl"


def lateral_offset(spec: SceneSpec, frame_index: int) -> float:
    """Horizontal shift of both lanes at this frame.

    With ``drift_period`` set the shift rises for that many frames, then falls
    back for as many, and repeats.
    """
    if spec.drift_period is None:
        return spec.lateral_drift_per_frame * frame_index
    m = frame_index % (2 * spec.drift_period)
    leg = m if m <= spec.drift_period else 2 * spec.drift_period - m
    return spec.lateral_drift_per_frame * leg


def lane_center_x(lane: LaneSpec, y: Union[float, np.ndarray], height: int, offset: float = 0.0):
    """x of the lane's centre line at row(s) ``y``."""
    cot = math.cos(math.radians(lane.angle_deg)) / math.sin(math.radians(lane.angle_deg))
    return lane.bottom_x + offset + (height - 1 - y) * cot


def erased_sides(spec: SceneSpec, frame_index: int) -> set[str]:
    return {p.side for p in spec.perturbations if isinstance(p, EraseLane) and p.active(frame_index)}


def lane_mask(spec: SceneSpec, side: str, frame_index: int) -> np.ndarray:
    """Pixels covered by the painted lane (ignoring erasure), boolean H x W."""
    lane = spec.lane(side)
    ys = np.arange(spec.height, dtype=np.float64)[:, None]
    xs = np.arange(spec.width, dtype=np.float64)[None, :]
    centers = lane_center_x(lane, ys, spec.height, lateral_offset(spec, frame_index))
    mask = (np.abs(xs - centers) <= lane.width / 2.0) & (ys >= spec.horizon_y)
    if lane.style == "dashed":
        # distance along the line from the bottom row, shifted as the road scrolls
        along = (spec.height - 1 - ys) / math.sin(math.radians(lane.angle_deg)) + spec.dash_speed * frame_index
        mask &= np.mod(along, lane.dash_len + lane.gap_len) < lane.dash_len
    return mask


def _distractor_endpoints(d: DistractorLine) -> list[tuple[float, float]]:
    ux = math.cos(math.radians(d.angle_deg)) * d.length / 2.0
    uy = -math.sin(math.radians(d.angle_deg)) * d.length / 2.0
    return [(d.x - ux, d.y - uy), (d.x + ux, d.y + uy)]


def render_frame(spec: SceneSpec, frame_index: int) -> RgbImage:
    """Road, distractors, lanes, occlusions, then brightness, blur and noise."""
    height, width = spec.height, spec.width
    canvas = np.empty((height, width, 3), dtype=np.uint8)
    horizon = int(math.ceil(spec.horizon_y))
    canvas[:horizon] = spec.sky_color
    canvas[horizon:] = spec.road_color

    active = [p for p in spec.perturbations if p.active(frame_index)]
    distractors = [p for p in active if isinstance(p, DistractorLine)]
    if distractors:
        image = Image.fromarray(canvas)
        draw = ImageDraw.Draw(image)
        for d in distractors:
            draw.line(_distractor_endpoints(d), fill=d.color, width=d.width)
        canvas = np.asarray(image, dtype=np.uint8).copy()

    hidden = erased_sides(spec, frame_index)
    for side in SIDES:
        if side not in hidden:
            canvas[lane_mask(spec, side, frame_index)] = spec.lane(side).color

    occlusions = [p for p in active if isinstance(p, OcclusionBand)]
    if occlusions:
        image = Image.fromarray(canvas)
        draw = ImageDraw.Draw(image)
        for band in occlusions:
            draw.polygon(band.polygon, fill=(band.intensity,) * 3)
        canvas = np.asarray(image, dtype=np.uint8).copy()

    pixels = canvas.astype(np.float64)
    for p in active:
        if isinstance(p, BrightnessShift):
            pixels += p.delta
    for p in active:
        if isinstance(p, GaussianBlur):
            pixels = ndimage.gaussian_filter(pixels, sigma=(p.sigma, p.sigma, 0), mode="nearest")
    if spec.noise_sigma > 0:
        rng = np.random.default_rng([spec.seed, frame_index])
        pixels += rng.normal(0.0, spec.noise_sigma, size=pixels.shape)

    return RgbImage(np.clip(np.floor(pixels + 0.5), 0, 255).astype(np.uint8))


def ground_truth_record(spec: SceneSpec, frame_index: int, roi: Optional[TrapezoidRoi] = None) -> GroundTruthRecord:
    """Lane centre lines at the scan rows of ``roi`` (the scene's ROI by default)."""
    roi = roi or spec.roi
    y_bottom, y_top = roi.scan_rows(spec.height)
    offset = lateral_offset(spec, frame_index)
    hidden = erased_sides(spec, frame_index)
    lanes = {}
    for side in SIDES:
        lane = spec.lane(side)
        lanes[side] = GroundTruthLane(
            x1=float(lane_center_x(lane, y_bottom, spec.height, offset)),
            y1=float(y_bottom),
            x2=float(lane_center_x(lane, y_top, spec.height, offset)),
            y2=float(y_top),
            visible=side not in hidden,
        )
    return GroundTruthRecord(frame_index=frame_index, left=lanes["left"], right=lanes["right"])


def iter_sequence(spec: SceneSpec, frame_count: Optional[int] = None) -> Iterator[tuple[RgbImage, GroundTruthRecord]]:
    """Frames and ground truth one at a time; ``frame_count`` truncates the sequence."""
    count = spec.frame_count if frame_count is None else min(frame_count, spec.frame_count)
    for index in range(count):
        yield render_frame(spec, index), ground_truth_record(spec, index)


def generate_sequence(spec: SceneSpec) -> tuple[list[RgbImage], list[GroundTruthRecord]]:
    """Render the whole sequence in memory. Same spec, same bytes."""
    frames: list[RgbImage] = []
    truth: list[GroundTruthRecord] = []
    for frame, record in iter_sequence(spec):
        frames.append(frame)
        truth.append(record)
    return frames, truth


def lane_edge_mask(spec: SceneSpec, frame_index: int, roi: Optional[TrapezoidRoi] = None, margin: int = 2) -> np.ndarray:
    """Boundary pixels of the painted lanes inside the ROI.

    Pixels within ``margin`` of the ROI border are left out, as are lanes
    erased on this frame.
    """
    roi = roi or spec.roi
    hidden = erased_sides(spec, frame_index)
    painted = np.zeros((spec.height, spec.width), dtype=bool)
    for side in SIDES:
        if side not in hidden:
            painted |= lane_mask(spec, side, frame_index)
    boundary = painted & ~ndimage.binary_erosion(painted, structure=ndimage.generate_binary_structure(2, 1))
    inside = roi.mask(spec.width, spec.height)
    if margin > 0:
        inside = ndimage.binary_erosion(inside, structure=np.ones((2 * margin + 1, 2 * margin + 1), dtype=bool))
    return boundary & inside


def write_sequence(spec: SceneSpec, output_dir: Union[str, Path], frame_count: Optional[int] = None) -> int:
    """Write ``frame_NNNNN.png`` files and the ground-truth JSON Lines file.

    Returns:
        Number of frames written

    Raises:
        OutputWriteError: the directory or a file cannot be written
    """
    output_dir = Path(output_dir)
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputWriteError(output_dir, e.strerror or str(e)) from e

    records = []
    for frame, record in iter_sequence(spec, frame_count):
        path = output_dir / f"frame_{record.frame_index:05d}.png"
        try:
            write_image(frame, path)
        except OSError as e:
            raise OutputWriteError(path, e.strerror or str(e)) from e
        records.append(record)
    write_ground_truth(records, output_dir / GROUND_TRUTH_NAME)
    logger.info("Wrote %d frames to %s", len(records), output_dir)
    return len(records)
