"""Tests for imgcore/roi.py module."""

import numpy as np
import pytest
from pydantic import ValidationError

from lanelab.exceptions import DegenerateRoiError
from lanelab.imgcore.images import EdgeMap
from lanelab.imgcore.roi import TrapezoidRoi, apply_roi_mask


def _interpolated_margin(roi: TrapezoidRoi, x: float, y: float, width: int, height: int) -> float:
    """Signed distance-like margin: positive inside, negative outside."""
    top_y = roi.top_y_frac * height
    bottom_y = roi.bottom_y_frac * height
    t = (y - top_y) / (bottom_y - top_y)
    half = (roi.top_width_frac + t * (roi.bottom_width_frac - roi.top_width_frac)) * width / 2.0
    return min(y - top_y, bottom_y - y, half - abs(x - width / 2.0))


class TestTrapezoidRoi:
    """Test geometry of the trapezoid."""

    def test_defaults(self):
        """Test default fractions."""
        roi = TrapezoidRoi()
        assert (roi.top_y_frac, roi.bottom_y_frac) == (0.62, 0.90)
        assert (roi.top_width_frac, roi.bottom_width_frac) == (0.25, 0.95)

    def test_vertices(self):
        """Test corner placement on a 200x100 image."""
        corners = TrapezoidRoi().vertices(200, 100)
        np.testing.assert_allclose(corners, [[75, 62], [125, 62], [195, 90], [5, 90]])

    def test_scan_rows(self):
        """Test the normalization rows at full resolution."""
        assert TrapezoidRoi().scan_rows(594) == (535, 368)

    def test_invalid_shapes(self):
        """Test inverted heights or widths are rejected."""
        with pytest.raises(ValidationError):
            TrapezoidRoi(top_y_frac=0.9, bottom_y_frac=0.6)
        with pytest.raises(ValidationError):
            TrapezoidRoi(top_width_frac=0.8, bottom_width_frac=0.5)
        with pytest.raises(ValidationError):
            TrapezoidRoi(top_y_frac=1.2)

    def test_contains_matches_interpolated_bounds(self):
        """Test random points against bounds interpolated between the parallel edges."""
        roi = TrapezoidRoi()
        width, height = 203, 151
        rng = np.random.default_rng(12)
        xs = rng.integers(0, width, size=50)
        ys = rng.integers(0, height, size=50)
        inside = roi.contains(xs.astype(float), ys.astype(float), width, height)
        for x, y, got in zip(xs, ys, inside):
            margin = _interpolated_margin(roi, float(x), float(y), width, height)
            if abs(margin) > 1e-9:
                assert got == (margin > 0), (x, y)

    def test_mask_matches_contains_and_is_read_only(self):
        """Test the cached mask equals the point test over the pixel grid and cannot be altered."""
        roi = TrapezoidRoi()
        ys, xs = np.mgrid[0:90, 0:120]
        mask = roi.mask(120, 90)
        np.testing.assert_array_equal(mask, roi.contains(xs.astype(float), ys.astype(float), 120, 90))
        assert roi.mask(120, 90) is mask
        assert not mask.flags.writeable

    def test_support_grows_by_reach(self):
        """Test the support is the mask grown by a chessboard distance."""
        roi = TrapezoidRoi()
        mask = roi.mask(120, 90)
        support = roi.support(120, 90, 2)
        assert np.all(support[mask])
        ys, xs = np.nonzero(mask)
        for y, x in ((10, 60), (int(ys.max()) + 2, 60), (int(ys.max()) + 3, 60)):
            nearest = bool((np.maximum(np.abs(ys - y), np.abs(xs - x)) <= 2).any())
            assert support[y, x] == nearest
        np.testing.assert_array_equal(roi.support(120, 90, 0), mask)


class TestApplyRoiMask:
    """Test edge masking."""

    def test_empty_stays_empty(self):
        """Test an empty edge map remains empty."""
        assert apply_roi_mask(EdgeMap.empty(100, 100), TrapezoidRoi()).count() == 0

    def test_centroid_pixel_retained(self):
        """Test a pixel on the midline halfway between the edges survives."""
        edges = EdgeMap.empty(100, 100)
        mask = edges.mask.copy()
        mask[76, 50] = True
        assert apply_roi_mask(EdgeMap(mask), TrapezoidRoi()).mask[76, 50]

    def test_sky_and_corner_pixels_removed(self):
        """Test pixels above the trapezoid and in its bottom corners are cleared."""
        mask = np.zeros((100, 100), dtype=bool)
        mask[10, 50] = True
        mask[89, 0] = True
        mask[95, 50] = True
        assert apply_roi_mask(EdgeMap(mask), TrapezoidRoi()).count() == 0

    def test_idempotent_and_never_adds(self):
        """Test masking twice equals masking once and is a subset of the input."""
        rng = np.random.default_rng(6)
        edges = EdgeMap(rng.random((120, 160)) < 0.3)
        roi = TrapezoidRoi()
        once = apply_roi_mask(edges, roi)
        assert apply_roi_mask(once, roi) == once
        assert not np.any(once.mask & ~edges.mask)

    def test_degenerate_trapezoid(self):
        """Test a zero-height trapezoid raises DegenerateRoiError."""
        roi = TrapezoidRoi.model_construct(
            top_y_frac=0.5, bottom_y_frac=0.5, top_width_frac=0.25, bottom_width_frac=0.95
        )
        with pytest.raises(DegenerateRoiError):
            apply_roi_mask(EdgeMap.empty(50, 50), roi)
