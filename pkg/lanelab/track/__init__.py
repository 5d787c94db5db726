"""Temporal lane tracking."""

from .halrr import (
    HalrrParams,
    LanePosition,
    LaneState,
    RepositionRange,
    SideState,
    Status,
    halrr_ranges,
    normalize_to_scan_rows,
    track_update,
)

__all__ = [
    "HalrrParams",
    "LanePosition",
    "LaneState",
    "RepositionRange",
    "SideState",
    "Status",
    "halrr_ranges",
    "normalize_to_scan_rows",
    "track_update",
]
