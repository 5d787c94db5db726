"""Line-segment extraction from edge maps."""

import logging
import math

import numpy as np
from pydantic import BaseModel, Field

from lanelab.hough._ppht import ppht
from lanelab.hough.segment import LineSegment
from lanelab.imgcore.images import EdgeMap

logger = logging.getLogger(__name__)


class HoughParams(BaseModel):
    """Accumulator resolution and segment acceptance rules."""

    model_config = {"extra": "forbid", "frozen": True}

    rho_resolution: float = Field(default=1.0, gt=0)
    theta_resolution: float = Field(default=math.pi / 180, gt=0, le=math.pi / 2)
    vote_threshold: int = Field(default=30, ge=1)
    min_line_length: float = Field(default=20.0, gt=0)
    max_line_gap: int = Field(default=20, ge=1)
    max_lines: int = Field(default=1000, ge=1)

    @property
    def theta_bins(self) -> int:
        return max(1, int(round(math.pi / self.theta_resolution)))


def hough_segments(edges: EdgeMap, params: HoughParams, seed: int = 0) -> list[LineSegment]:
    """Progressive probabilistic Hough transform.

    Edge pixels vote in a random order drawn from ``seed``. When a pixel's
    vote lifts a (rho, theta) cell to ``vote_threshold``, the line through it
    is traced across gaps of at most ``max_line_gap`` pixels, refitted, and
    its pixels are removed from further voting. Segments shorter than
    ``min_line_length`` are dropped. Output order is detection order.
    """
    segments, _ = _run_ppht(edges, params, seed, with_support=False)
    return segments


def hough_segments_with_support(
    edges: EdgeMap, params: HoughParams, seed: int = 0
) -> list[tuple[LineSegment, np.ndarray]]:
    """:func:`hough_segments` plus each segment's supporting pixels.

    Support is given as an ``(n, 2)`` array of ``(x, y)`` rows: the traced
    pixels within ``rho_resolution`` of the segment's line.
    """
    segments, labels = _run_ppht(edges, params, seed, with_support=True)
    result = []
    for k, seg in enumerate(segments, start=1):
        ys, xs = np.nonzero(labels == k)
        result.append((seg, np.column_stack([xs, ys])))
    return result


def _run_ppht(
    edges: EdgeMap, params: HoughParams, seed: int, with_support: bool
) -> tuple[list[LineSegment], np.ndarray]:
    support_shape = edges.mask.shape if with_support else (0, 0)
    support = np.zeros(support_shape, dtype=np.int32)
    ys, xs = np.nonzero(edges.mask)
    if xs.size == 0:
        return [], support
    order = np.random.default_rng(seed).permutation(xs.size)
    raw = ppht(
        np.ascontiguousarray(edges.mask),
        xs.astype(np.int64),
        ys.astype(np.int64),
        order.astype(np.int64),
        float(params.rho_resolution),
        params.theta_bins,
        float(params.theta_resolution),
        int(params.vote_threshold),
        float(params.min_line_length),
        int(params.max_line_gap),
        int(params.max_lines),
        support,
    )
    segments = [LineSegment(*map(int, row)) for row in raw]
    logger.debug("Hough found %d segments from %d edge pixels", len(segments), xs.size)
    return segments, support
