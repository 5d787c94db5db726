"""Pixel-level preprocessing and edge extraction."""

from .canny import CannyParams, OitrThresholds, canny_oitr, hysteresis
from .filters import BilateralParams, SmoothingParams, bilateral_filter, resize_rgb, smooth, to_grayscale
from .images import EdgeMap, GrayImage, RgbImage, read_gray, read_rgb, write_edges, write_image
from .roi import TrapezoidRoi, apply_roi_mask

__all__ = [
    "BilateralParams",
    "CannyParams",
    "EdgeMap",
    "GrayImage",
    "OitrThresholds",
    "RgbImage",
    "SmoothingParams",
    "TrapezoidRoi",
    "apply_roi_mask",
    "bilateral_filter",
    "canny_oitr",
    "hysteresis",
    "read_gray",
    "read_rgb",
    "resize_rgb",
    "smooth",
    "to_grayscale",
    "write_edges",
    "write_image",
]
