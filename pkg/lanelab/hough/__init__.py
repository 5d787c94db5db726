"""Hough line-segment extraction."""

from .segment import LineSegment
from .transform import HoughParams, hough_segments, hough_segments_with_support

__all__ = ["HoughParams", "LineSegment", "hough_segments", "hough_segments_with_support"]
