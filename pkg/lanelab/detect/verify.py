"""Angle- and length-based lane verification."""

import logging
import math
from dataclasses import dataclass
from typing import Generic, Iterable, Optional, TypeVar

from pydantic import BaseModel, Field

from lanelab.detect.candidates import CandidateLine, Side, classify_side
from lanelab.hough.segment import LineSegment
from lanelab.hough.transform import HoughParams, hough_segments
from lanelab.imgcore.images import EdgeMap

logger = logging.getLogger(__name__)

T = TypeVar("T")

LEFT_MIDPOINT = math.pi / 4
RIGHT_MIDPOINT = 3 * math.pi / 4

# absorbs float error on the band endpoints
_BAND_EPS = 1e-9


@dataclass(frozen=True)
class LanePair(Generic[T]):
    """The ego-lane boundaries; either side may be absent."""

    left: Optional[T] = None
    right: Optional[T] = None

    def get(self, side: Side) -> Optional[T]:
        if side is Side.LEFT:
            return self.left
        if side is Side.RIGHT:
            return self.right
        raise ValueError(f"No lane on side {side.value}")


class AngleConstraint(BaseModel):
    """Half-width ``c`` of the acceptance bands around 45 and 135 degrees."""

    model_config = {"extra": "forbid", "frozen": True}

    c: float = Field(default=math.pi / 12, gt=0, lt=math.pi / 4)

    def band(self, side: Side) -> tuple[float, float]:
        mid = midpoint(side)
        return mid - self.c, mid + self.c

    def accepts(self, candidate: CandidateLine) -> bool:
        if candidate.side is Side.REJECTED:
            return False
        lo, hi = self.band(candidate.side)
        return lo - _BAND_EPS <= candidate.angle <= hi + _BAND_EPS


def midpoint(side: Side) -> float:
    if side is Side.LEFT:
        return LEFT_MIDPOINT
    if side is Side.RIGHT:
        return RIGHT_MIDPOINT
    raise ValueError("Rejected candidates have no angle band")


def filter_by_angle(candidates: Iterable[CandidateLine], constraint: AngleConstraint) -> list[CandidateLine]:
    """Keep candidates whose angle lies in their side's band (endpoints inclusive)."""
    return [c for c in candidates if constraint.accepts(c)]


def _selection_key(candidate: CandidateLine) -> tuple[float, float, int]:
    return (-candidate.length, abs(candidate.angle - midpoint(candidate.side)), candidate.segment.x1)


def _longest(candidates: list[CandidateLine]) -> Optional[LineSegment]:
    if not candidates:
        return None
    return min(candidates, key=_selection_key).segment


def select_longest(fcll: Iterable[CandidateLine], fcrl: Iterable[CandidateLine]) -> LanePair[LineSegment]:
    """Pick the longest filtered candidate per side.

    Ties go to the angle closer to the band midpoint, then to the smaller
    x of the lower endpoint.
    """
    return LanePair(left=_longest(list(fcll)), right=_longest(list(fcrl)))


def detect_lanes(
    edges: EdgeMap,
    hough: HoughParams,
    constraint: AngleConstraint,
    seed: int = 0,
) -> LanePair[LineSegment]:
    """Hough segments, slope split, angle bands and longest-line selection."""
    cll, crl = classify_side(hough_segments(edges, hough, seed=seed))
    fcll = filter_by_angle(cll, constraint)
    fcrl = filter_by_angle(crl, constraint)
    lanes = select_longest(fcll, fcrl)
    logger.debug(
        "Lane candidates after angle filter: %d left, %d right (left=%s, right=%s)",
        len(fcll),
        len(fcrl),
        lanes.left is not None,
        lanes.right is not None,
    )
    return lanes
