"""Lane verification from Hough segments."""

from .candidates import CandidateLine, Side, classify_side
from .verify import AngleConstraint, LanePair, detect_lanes, filter_by_angle, select_longest

__all__ = [
    "AngleConstraint",
    "CandidateLine",
    "LanePair",
    "Side",
    "classify_side",
    "detect_lanes",
    "filter_by_angle",
    "select_longest",
]
