"""Left/right candidate lines split by slope sign."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from lanelab.hough.segment import LineSegment

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    REJECTED = "rejected"


def segment_slope(seg: LineSegment) -> Optional[float]:
    """dy/dx in image coordinates; None for vertical segments."""
    if seg.dx == 0:
        return None
    return seg.dy / seg.dx


def segment_angle(seg: LineSegment) -> float:
    """Direction in radians, [0, pi), anticlockwise from +x with y pointing up."""
    angle = math.atan2(-seg.dy, seg.dx)
    if angle < 0:
        angle += math.pi
    if angle >= math.pi:
        angle -= math.pi
    return angle


def side_of(slope: Optional[float]) -> Side:
    # in image coordinates a left lane line falls to the right: negative slope
    if slope is None or slope == 0:
        return Side.REJECTED
    return Side.LEFT if slope < 0 else Side.RIGHT


@dataclass(frozen=True)
class CandidateLine:
    """A Hough segment with the quantities lane verification looks at."""

    segment: LineSegment
    slope: Optional[float]
    angle: float
    length: float
    side: Side

    @classmethod
    def from_segment(cls, seg: LineSegment) -> "CandidateLine":
        slope = segment_slope(seg)
        return cls(segment=seg, slope=slope, angle=segment_angle(seg), length=seg.length, side=side_of(slope))


def classify_side(segments: Iterable[LineSegment]) -> tuple[list[CandidateLine], list[CandidateLine]]:
    """Split segments into (left, right) candidates.

    Horizontal and vertical segments are dropped.
    """
    left: list[CandidateLine] = []
    right: list[CandidateLine] = []
    dropped = 0
    for seg in segments:
        candidate = CandidateLine.from_segment(seg)
        if candidate.side is Side.LEFT:
            left.append(candidate)
        elif candidate.side is Side.RIGHT:
            right.append(candidate)
        else:
            dropped += 1
    logger.debug("Classified %d left, %d right, dropped %d", len(left), len(right), dropped)
    return left, right
