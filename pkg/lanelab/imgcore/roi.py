"""Isosceles-trapezoid region of interest centred on the vertical midline."""

from functools import lru_cache

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import ndimage

from lanelab.exceptions import DegenerateRoiError
from lanelab.imgcore.images import EdgeMap


class TrapezoidRoi(BaseModel):
    """Trapezoid described by fractions of the image height and width.

    ``top_y_frac`` / ``bottom_y_frac`` place the two parallel edges;
    ``top_width_frac`` / ``bottom_width_frac`` give their lengths. Both edges
    are centred on x = width / 2.
    """

    model_config = {"extra": "forbid", "frozen": True}

    top_y_frac: float = Field(default=0.62, gt=0, lt=1)
    bottom_y_frac: float = Field(default=0.90, gt=0, lt=1)
    top_width_frac: float = Field(default=0.25, gt=0, le=1)
    bottom_width_frac: float = Field(default=0.95, gt=0, le=1)

    @model_validator(mode="after")
    def _check_shape(self) -> "TrapezoidRoi":
        if not self.top_y_frac < self.bottom_y_frac:
            raise ValueError("top_y_frac must be above (smaller than) bottom_y_frac")
        if self.top_width_frac > self.bottom_width_frac:
            raise ValueError("top_width_frac must not exceed bottom_width_frac")
        return self

    def vertices(self, width: int, height: int) -> np.ndarray:
        """Corners (x, y) clockwise on screen: top-left, top-right, bottom-right, bottom-left."""
        cx = width / 2.0
        top_y = self.top_y_frac * height
        bottom_y = self.bottom_y_frac * height
        top_half = self.top_width_frac * width / 2.0
        bottom_half = self.bottom_width_frac * width / 2.0
        return np.array(
            [
                [cx - top_half, top_y],
                [cx + top_half, top_y],
                [cx + bottom_half, bottom_y],
                [cx - bottom_half, bottom_y],
            ]
        )

    def area(self, width: int, height: int) -> float:
        top = self.top_width_frac * width
        bottom = self.bottom_width_frac * width
        return 0.5 * (top + bottom) * (self.bottom_y_frac - self.top_y_frac) * height

    def scan_rows(self, height: int) -> tuple[int, int]:
        """(y_bottom, y_top): the rows every lane position is normalized to."""
        y_bottom = int(np.floor(self.bottom_y_frac * height + 0.5))
        y_top = int(np.floor(self.top_y_frac * height + 0.5))
        return min(max(y_bottom, 0), height - 1), min(max(y_top, 0), height - 1)

    def contains(self, xs: np.ndarray, ys: np.ndarray, width: int, height: int) -> np.ndarray:
        """Boundary-inclusive point-in-trapezoid test for arrays of coordinates."""
        corners = self.vertices(width, height)
        inside = np.ones(np.broadcast(xs, ys).shape, dtype=bool)
        for i in range(4):
            ax, ay = corners[i]
            bx, by = corners[(i + 1) % 4]
            # clockwise on screen (y down): interior lies where the cross product is >= 0
            cross = (bx - ax) * (ys - ay) - (by - ay) * (xs - ax)
            inside &= cross >= 0
        return inside

    def mask(self, width: int, height: int) -> np.ndarray:
        """Read-only boolean mask of the trapezoid, cached per image size."""
        return _trapezoid_mask(self, width, height)

    def support(self, width: int, height: int, reach: int) -> np.ndarray:
        """Read-only mask of the trapezoid grown by ``reach`` pixels (chessboard distance)."""
        return _support_mask(self, width, height, reach)


@lru_cache(maxsize=8)
def _trapezoid_mask(roi: TrapezoidRoi, width: int, height: int) -> np.ndarray:
    xs = np.arange(width, dtype=np.float64)[None, :]
    ys = np.arange(height, dtype=np.float64)[:, None]
    mask = roi.contains(xs, ys, width, height)
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=8)
def _support_mask(roi: TrapezoidRoi, width: int, height: int, reach: int) -> np.ndarray:
    mask = _trapezoid_mask(roi, width, height)
    if reach > 0:
        mask = ndimage.binary_dilation(mask, structure=np.ones((3, 3), dtype=bool), iterations=reach)
    else:
        mask = mask.copy()
    mask.setflags(write=False)
    return mask


def apply_roi_mask(edges: EdgeMap, roi: TrapezoidRoi) -> EdgeMap:
    """Clear every edge pixel outside the trapezoid.

    Validated models always have positive area; a zero-area trapezoid only
    arrives through ``TrapezoidRoi.model_construct``, which skips validation.

    Raises:
        DegenerateRoiError: the trapezoid has zero area at this image size
    """
    width, height = edges.size
    if roi.area(width, height) <= 0.0:
        raise DegenerateRoiError(width, height)
    return EdgeMap(edges.mask & roi.mask(width, height))
