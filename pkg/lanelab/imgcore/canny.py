"""Canny edge detection with the fixed dual-threshold range [30, 10]."""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import ndimage

from lanelab.exceptions import InvalidParameterError
from lanelab.imgcore.filters import gaussian_smooth
from lanelab.imgcore.images import EdgeMap, GrayImage

logger = logging.getLogger(__name__)

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)

# neighbour step along each quantized gradient axis (row, col), y pointing down
_AXIS_STEPS = ((0, 1), (1, 1), (1, 0), (1, -1))

PRESMOOTH_SIGMA = 1.4
PRESMOOTH_RADIUS = 2

# how far from a pixel the Sobel and suppression steps read: 3x3 Sobel of each 3x3 neighbour
GRADIENT_REACH = 2


class OitrThresholds(BaseModel):
    """Upper and lower gradient-magnitude thresholds of the hysteresis stage."""

    model_config = {"extra": "forbid", "frozen": True}

    upper: float = Field(default=30.0, gt=0)
    lower: float = Field(default=10.0, gt=0)

    @model_validator(mode="after")
    def _lower_below_upper(self) -> "OitrThresholds":
        if not self.lower < self.upper:
            raise ValueError(f"lower threshold ({self.lower}) must be below upper ({self.upper})")
        return self


class CannyParams(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}

    # off in the pipeline: the bilateral stage already smooths
    presmooth: bool = False


def sobel_gradients(img: GrayImage) -> tuple[np.ndarray, np.ndarray]:
    """3x3 Sobel derivatives (unnormalized); the one-pixel border is left at zero."""
    p = img.pixels.astype(np.float64)
    gx = np.zeros_like(p)
    gy = np.zeros_like(p)
    if p.shape[0] < 3 or p.shape[1] < 3:
        return gx, gy
    gx[1:-1, 1:-1] = (p[:-2, 2:] + 2.0 * p[1:-1, 2:] + p[2:, 2:]) - (p[:-2, :-2] + 2.0 * p[1:-1, :-2] + p[2:, :-2])
    gy[1:-1, 1:-1] = (p[2:, :-2] + 2.0 * p[2:, 1:-1] + p[2:, 2:]) - (p[:-2, :-2] + 2.0 * p[:-2, 1:-1] + p[:-2, 2:])
    return gx, gy


def quantize_direction(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Map gradient directions to bins 0..3 for 0, 45, 90 and 135 degrees."""
    angle = np.degrees(np.arctan2(gy, gx)) % 180.0
    return (np.floor((angle + 22.5) / 45.0).astype(np.int64)) % 4


def non_maximum_suppression(magnitude: np.ndarray, bins: np.ndarray) -> np.ndarray:
    """Zero every pixel that is not a maximum along its gradient axis.

    Ties are broken toward the pixel behind: a pixel must be strictly larger
    than the neighbour behind it and at least as large as the one ahead.
    """
    height, width = magnitude.shape
    padded = np.pad(magnitude, 1)
    keep = np.zeros(magnitude.shape, dtype=bool)
    for b, (dr, dc) in enumerate(_AXIS_STEPS):
        ahead = padded[1 + dr : 1 + dr + height, 1 + dc : 1 + dc + width]
        behind = padded[1 - dr : 1 - dr + height, 1 - dc : 1 - dc + width]
        keep |= (bins == b) & (magnitude > behind) & (magnitude >= ahead)
    keep &= magnitude > 0
    return np.where(keep, magnitude, 0.0)


def hysteresis(magnitude: np.ndarray, lower: float, upper: float) -> np.ndarray:
    """Keep 8-connected components of ``magnitude >= lower`` holding a pixel ``>= upper``."""
    candidates = magnitude >= lower
    strong = magnitude >= upper
    labels, count = ndimage.label(candidates, structure=EIGHT_CONNECTED)
    if count == 0:
        return np.zeros(magnitude.shape, dtype=bool)
    seeded = np.unique(labels[strong])
    seeded = seeded[seeded > 0]
    return np.isin(labels, seeded)


def _thinned_magnitude(img: GrayImage) -> np.ndarray:
    gx, gy = sobel_gradients(img)
    magnitude = np.hypot(gx, gy)
    return non_maximum_suppression(magnitude, quantize_direction(gx, gy))


def canny_oitr(
    img: GrayImage,
    thresholds: OitrThresholds,
    canny: Optional[CannyParams] = None,
    region: Optional[np.ndarray] = None,
) -> EdgeMap:
    """Sobel gradients, non-maximum suppression and dual-threshold hysteresis.

    No smoothing happens here unless ``canny.presmooth`` is set.

    With ``region``, gradients are only computed over the region's bounding
    box grown by :data:`GRADIENT_REACH`, and hysteresis only links pixels
    inside the region. Edges outside it are never reported. Every pixel in
    the region keeps the suppressed magnitude it has on the full image.

    Raises:
        InvalidParameterError: a region whose shape differs from the image
    """
    if canny is not None and canny.presmooth:
        img = gaussian_smooth(img, PRESMOOTH_SIGMA, PRESMOOTH_RADIUS)
    if region is None:
        mask = hysteresis(_thinned_magnitude(img), thresholds.lower, thresholds.upper)
        logger.debug("Canny kept %d edge pixels", int(mask.sum()))
        return EdgeMap(mask)

    if region.shape != img.pixels.shape:
        raise InvalidParameterError(f"Region shape {region.shape} does not match image {img.pixels.shape}")
    rows = np.flatnonzero(region.any(axis=1))
    cols = np.flatnonzero(region.any(axis=0))
    if rows.size == 0:
        return EdgeMap.empty(img.width, img.height)
    y0 = max(int(rows[0]) - GRADIENT_REACH, 0)
    y1 = min(int(rows[-1]) + GRADIENT_REACH + 1, img.height)
    x0 = max(int(cols[0]) - GRADIENT_REACH, 0)
    x1 = min(int(cols[-1]) + GRADIENT_REACH + 1, img.width)

    thinned = _thinned_magnitude(GrayImage(img.pixels[y0:y1, x0:x1]))
    thinned[~region[y0:y1, x0:x1]] = 0.0
    mask = np.zeros(img.pixels.shape, dtype=bool)
    mask[y0:y1, x0:x1] = hysteresis(thinned, thresholds.lower, thresholds.upper)
    logger.debug("Canny kept %d edge pixels inside the region", int(mask.sum()))
    return EdgeMap(mask)
