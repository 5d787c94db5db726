"""Preprocessing: grayscale conversion, edge-preserving smoothing, resizing."""

import logging
from typing import Literal, Optional

import numpy as np
from PIL import Image
from pydantic import BaseModel, Field
from scipy import ndimage

from lanelab.exceptions import InvalidParameterError
from lanelab.imgcore._kernels import bilateral_rows
from lanelab.imgcore.images import GrayImage, RgbImage

logger = logging.getLogger(__name__)

# luma weights in hundredths, so rounding stays in integers
_LUMA = np.array([30, 59, 11], dtype=np.int32)


class BilateralParams(BaseModel):
    """Spatial and range widths of the bilateral filter, and its window radius."""

    model_config = {"extra": "forbid", "frozen": True}

    sigma_spatial: float = Field(default=3.0, gt=0)
    sigma_range: float = Field(default=30.0, gt=0)
    radius: int = Field(default=6, ge=1)


class SmoothingParams(BaseModel):
    """Which smoother feeds the edge detector."""

    model_config = {"extra": "forbid", "frozen": True}

    method: Literal["bilateral", "gaussian", "median"] = "bilateral"


def to_grayscale(img: RgbImage) -> GrayImage:
    """Weighted-average luma: round(0.3 R + 0.59 G + 0.11 B), halves rounded up."""
    weighted = img.pixels.astype(np.int32) @ _LUMA
    gray = (weighted + 50) // 100
    return GrayImage(np.clip(gray, 0, 255).astype(np.uint8))


def spatial_kernel(params: BilateralParams) -> np.ndarray:
    """Unnormalized Gaussian of the offset distance over the (2r+1)^2 window."""
    r = params.radius
    offsets = np.arange(-r, r + 1, dtype=np.float64)
    dist_sq = offsets[:, None] ** 2 + offsets[None, :] ** 2
    return np.exp(-dist_sq / (2.0 * params.sigma_spatial**2))


def range_table(params: BilateralParams) -> np.ndarray:
    """Unnormalized Gaussian of every possible absolute intensity difference 0..255."""
    diffs = np.arange(256, dtype=np.float64)
    return np.exp(-(diffs**2) / (2.0 * params.sigma_range**2))


def _check_radius(img: GrayImage, radius: int) -> None:
    if radius > min(img.width, img.height) / 2:
        raise InvalidParameterError(
            f"Filter radius {radius} exceeds half the smaller image side ({img.width}x{img.height})"
        )


def row_spans(region: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-row ``[lo, hi)`` column span covering the True pixels; empty rows get ``lo == hi == 0``."""
    width = region.shape[1]
    filled = region.any(axis=1)
    lo = np.where(filled, np.argmax(region, axis=1), 0)
    hi = np.where(filled, width - np.argmax(region[:, ::-1], axis=1), 0)
    return lo.astype(np.int64), hi.astype(np.int64)


def bilateral_filter(img: GrayImage, params: BilateralParams, region: Optional[np.ndarray] = None) -> GrayImage:
    """Edge-preserving weighted average of each pixel's square neighbourhood.

    Each neighbour q of p is weighted by G_s(|p - q|) * G_r(|I_p - I_q|) and the
    sum is divided by the total weight. Neighbours outside the image do not
    contribute. Results are rounded half up.

    With ``region``, only pixels in each row's span of the region are
    filtered and the rest keep their input value. Filtered pixels still see
    their whole window, so they match the unrestricted result.

    Raises:
        InvalidParameterError: radius larger than min(width, height) / 2, or a
            region whose shape differs from the image
    """
    _check_radius(img, params.radius)
    if region is None:
        x_lo = np.zeros(img.height, dtype=np.int64)
        x_hi = np.full(img.height, img.width, dtype=np.int64)
    else:
        if region.shape != img.pixels.shape:
            raise InvalidParameterError(f"Region shape {region.shape} does not match image {img.pixels.shape}")
        x_lo, x_hi = row_spans(region)
    weights = spatial_kernel(params).reshape(-1, 1) * range_table(params)[None, :]
    out = bilateral_rows(np.ascontiguousarray(img.pixels), weights, params.radius, x_lo, x_hi)
    return GrayImage(out)


def gaussian_smooth(img: GrayImage, sigma: float, radius: int) -> GrayImage:
    """Gaussian smoothing with the window clipped to the image and renormalized."""
    _check_radius(img, radius)
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel_1d = np.exp(-(offsets**2) / (2.0 * sigma**2))
    kernel = np.outer(kernel_1d, kernel_1d)
    src = img.pixels.astype(np.float64)
    num = ndimage.correlate(src, kernel, mode="constant", cval=0.0)
    den = ndimage.correlate(np.ones_like(src), kernel, mode="constant", cval=0.0)
    out = np.floor(num / den + 0.5)
    return GrayImage(np.clip(out, 0, 255).astype(np.uint8))


def median_smooth(img: GrayImage, radius: int) -> GrayImage:
    _check_radius(img, radius)
    return GrayImage(ndimage.median_filter(img.pixels, size=2 * radius + 1, mode="nearest"))


def smooth(
    img: GrayImage, smoothing: SmoothingParams, bilateral: BilateralParams, region: Optional[np.ndarray] = None
) -> GrayImage:
    """Apply the configured smoother; gaussian and median reuse the bilateral window.

    ``region`` limits the bilateral filter (see :func:`bilateral_filter`); the
    gaussian and median smoothers always cover the whole image.
    """
    if smoothing.method == "bilateral":
        return bilateral_filter(img, bilateral, region)
    if smoothing.method == "gaussian":
        return gaussian_smooth(img, bilateral.sigma_spatial, bilateral.radius)
    return median_smooth(img, bilateral.radius)


def resize_rgb(img: RgbImage, width: int, height: int) -> RgbImage:
    """Bilinear resize; returns the input unchanged when already at size."""
    if img.size == (width, height):
        return img
    logger.debug("Resizing frame from %dx%d to %dx%d", img.width, img.height, width, height)
    pil = Image.fromarray(img.pixels).resize((width, height), Image.Resampling.BILINEAR)
    return RgbImage(np.asarray(pil, dtype=np.uint8).copy())
