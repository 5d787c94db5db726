"""Compiled per-pixel loops. Callers validate shapes and dtypes."""

import numpy as np
from numba import njit


@njit(cache=True)
def bilateral_rows(
    src: np.ndarray, weights: np.ndarray, radius: int, x_lo: np.ndarray, x_hi: np.ndarray
) -> np.ndarray:
    """Filter ``x_lo[y] <= x < x_hi[y]`` on every row; other pixels are copied through.

    ``weights[k, d]`` is the spatial weight of window offset ``k`` (row-major)
    times the range weight of intensity difference ``d``.
    """
    height, width = src.shape
    side = 2 * radius + 1
    out = src.copy()
    levels = src.astype(np.int64)
    values = src.astype(np.float64)
    num = np.zeros(width, dtype=np.float64)
    den = np.zeros(width, dtype=np.float64)
    for y in range(height):
        lo = x_lo[y]
        hi = x_hi[y]
        if lo >= hi:
            continue
        num[lo:hi] = 0.0
        den[lo:hi] = 0.0
        center = levels[y]
        # one shifted row pair per window offset; each pixel still sums its window in row-major order
        for dy in range(-radius, radius + 1):
            yy = y + dy
            if yy < 0 or yy >= height:
                continue
            row_levels = levels[yy]
            row_values = values[yy]
            for dx in range(-radius, radius + 1):
                offset_weights = weights[(dy + radius) * side + dx + radius]
                start = max(lo, -dx)
                stop = min(hi, width - dx)
                for x in range(start, stop):
                    w = offset_weights[abs(center[x] - row_levels[x + dx])]
                    num[x] += w * row_values[x + dx]
                    den[x] += w
        for x in range(lo, hi):
            v = np.floor(num[x] / den[x] + 0.5)
            if v < 0.0:
                v = 0.0
            elif v > 255.0:
                v = 255.0
            out[y, x] = np.uint8(v)
    return out
