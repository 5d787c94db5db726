"""Published reference figures printed next to measured results."""

# per-frame processing time of the full method on a 2.3 GHz Core i5, milliseconds
REFERENCE_FRAME_MS = 29.06
# tracker-only time per frame, milliseconds
REFERENCE_TRACKER_MS = 0.99

# angle bands of an earlier angle-filtering method, degrees, y-up frame
REFERENCE_LEFT_BAND_DEG = (25.0, 75.0)
REFERENCE_RIGHT_BAND_DEG = (105.0, 155.0)

# latency bar for a commodity desktop at the working resolution
LATENCY_BUDGET_MS = 100.0

STAGES = ("resize", "grayscale", "smooth", "canny", "roi", "detect", "normalize", "track")
