"""Horizontally adjustable repositioning ranges and the per-side tracking automaton."""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from lanelab.detect.candidates import Side
from lanelab.detect.verify import LanePair
from lanelab.exceptions import InvalidParameterError
from lanelab.hough.segment import LineSegment

logger = logging.getLogger(__name__)

Z_LIMIT = 6.0


class Status(str, Enum):
    TRACKED = "tracked"
    HELD = "held"
    LOST = "lost"


@dataclass(frozen=True)
class LanePosition:
    """A lane line as two points, the lower one first."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        if not self.y1 > self.y2:
            raise ValueError(f"Lower endpoint must come first (y1 > y2), got y1={self.y1}, y2={self.y2}")

    def x_at(self, y: float) -> float:
        return self.x1 + (y - self.y1) * (self.x2 - self.x1) / (self.y2 - self.y1)

    def scaled(self, sx: float, sy: float) -> "LanePosition":
        return LanePosition(self.x1 * sx, self.y1 * sy, self.x2 * sx, self.y2 * sy)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.x1, self.y1, self.x2, self.y2


class HalrrParams(BaseModel):
    """Range half-width as a percentage of image width, and how long a lane may be held."""

    model_config = {"extra": "forbid", "frozen": True}

    z: float = Field(default=5.0, gt=0, lt=Z_LIMIT)
    max_hold_frames: int = Field(default=24, ge=0)


@dataclass(frozen=True)
class RepositionRange:
    """Closed intervals the next frame's x-coordinates must fall in."""

    r1_lo: float
    r1_hi: float
    r2_lo: float
    r2_hi: float

    def contains(self, pos: LanePosition) -> bool:
        return self.r1_lo <= pos.x1 <= self.r1_hi and self.r2_lo <= pos.x2 <= self.r2_hi


def halrr_ranges(prev: LanePosition, image_width: int, params: HalrrParams) -> RepositionRange:
    """R1 = [x_p1 - d, x_p1 + d] and R2 = [x_p2 - d, x_p2 + d], d = w * z / 100.

    Both ranges are clamped to [0, image_width - 1].

    Raises:
        InvalidParameterError: z outside (0, 6)
    """
    if not 0 < params.z < Z_LIMIT:
        raise InvalidParameterError(f"z must satisfy 0 < z < {Z_LIMIT:g}, got {params.z}")
    d = image_width * params.z / 100
    hi = float(image_width - 1)
    return RepositionRange(
        r1_lo=max(0.0, prev.x1 - d),
        r1_hi=min(hi, prev.x1 + d),
        r2_lo=max(0.0, prev.x2 - d),
        r2_hi=min(hi, prev.x2 + d),
    )


@dataclass(frozen=True)
class SideState:
    status: Status = Status.LOST
    position: Optional[LanePosition] = None
    hold_count: int = 0

    def __post_init__(self) -> None:
        if self.status is Status.TRACKED and (self.hold_count != 0 or self.position is None):
            raise ValueError("A tracked side needs a position and a zero hold count")
        if self.status is Status.LOST and self.position is not None:
            raise ValueError("A lost side carries no position")
        if self.status is Status.HELD and (self.hold_count <= 0 or self.position is None):
            raise ValueError("A held side needs a position and a positive hold count")


@dataclass(frozen=True)
class LaneState:
    """Tracker memory carried from frame to frame."""

    left: SideState = field(default_factory=SideState)
    right: SideState = field(default_factory=SideState)
    frames_seen: int = 0
    frame_size: Optional[tuple[int, int]] = None

    def side(self, side: Side) -> SideState:
        return self.left if side is Side.LEFT else self.right

    def positions(self) -> LanePair[LanePosition]:
        return LanePair(left=self.left.position, right=self.right.position)


def _update_side(
    name: str, current: SideState, detection: Optional[LanePosition], image_width: int, params: HalrrParams
) -> SideState:
    if current.position is None:
        if detection is None:
            return SideState()
        logger.debug("%s lane acquired at x=%.1f", name, detection.x1)
        return SideState(Status.TRACKED, detection, 0)

    if detection is not None and halrr_ranges(current.position, image_width, params).contains(detection):
        return SideState(Status.TRACKED, detection, 0)

    hold = current.hold_count + 1
    if hold > params.max_hold_frames:
        logger.debug("%s lane lost after %d held frames", name, current.hold_count)
        return SideState()
    if detection is not None:
        logger.debug("%s detection at x=%.1f outside repositioning range", name, detection.x1)
    return SideState(Status.HELD, current.position, hold)


def track_update(
    state: LaneState,
    detected: LanePair[LanePosition],
    image_width: int,
    params: HalrrParams,
) -> tuple[LaneState, LanePair[LanePosition]]:
    """Advance both sides one frame.

    A side with a position accepts a detection only when both x-coordinates
    fall inside the repositioning ranges; otherwise the previous position is
    held, and after ``max_hold_frames`` held frames the side is lost. A lost
    side adopts the next detection as is.
    """
    new_state = replace(
        state,
        left=_update_side("left", state.left, detected.left, image_width, params),
        right=_update_side("right", state.right, detected.right, image_width, params),
        frames_seen=state.frames_seen + 1,
    )
    return new_state, new_state.positions()


def normalize_to_scan_rows(
    seg: LineSegment, y_bottom: int, y_top: int, image_width: Optional[int] = None
) -> LanePosition:
    """Extend a segment's line to the two scan rows.

    x values are clamped to [0, image_width - 1] when a width is given.

    Raises:
        InvalidParameterError: horizontal segment, or y_top not above y_bottom
    """
    if seg.dy == 0:
        raise InvalidParameterError(f"Cannot normalize horizontal segment {seg.as_tuple()}")
    if not y_top < y_bottom:
        raise InvalidParameterError(f"Scan rows must satisfy y_top < y_bottom, got {y_top} and {y_bottom}")
    inv_slope = seg.dx / seg.dy
    xb = seg.x1 + (y_bottom - seg.y1) * inv_slope
    xt = seg.x1 + (y_top - seg.y1) * inv_slope
    if image_width is not None:
        hi = float(image_width - 1)
        xb = min(max(xb, 0.0), hi)
        xt = min(max(xt, 0.0), hi)
    return LanePosition(float(xb), float(y_bottom), float(xt), float(y_top))
