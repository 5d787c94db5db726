"""Lane detection and tracking: edge extraction, Hough lines, geometric verification, range-based tracking."""

__version__ = "0.1.0"
