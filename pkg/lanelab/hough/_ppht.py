"""Compiled progressive probabilistic Hough transform."""

import numpy as np
from numba import njit


@njit(cache=True)
def _walk(mask, x0, y0, dirx, diry, max_gap, out_x, out_y):
    """Trace unconsumed pixels both ways from (x0, y0) in a one-pixel corridor.

    Steps are unit along the dominant axis. A direction stops when it leaves
    the image or after more than ``max_gap`` consecutive empty steps.
    Returns the number of pixels written to ``out_x`` / ``out_y``.
    """
    height, width = mask.shape
    count = 0
    x_major = abs(dirx) >= abs(diry)
    if x_major:
        step_major = 1.0 if dirx >= 0 else -1.0
        step_minor = diry / abs(dirx)
    else:
        step_major = 1.0 if diry >= 0 else -1.0
        step_minor = dirx / abs(diry)
    for sense in (1.0, -1.0):
        k = 0 if sense > 0 else 1
        gap = 0
        while True:
            if x_major:
                fx = x0 + sense * k * step_major
                fy = y0 + sense * k * step_minor
            else:
                fx = x0 + sense * k * step_minor
                fy = y0 + sense * k * step_major
            xi = int(np.floor(fx + 0.5))
            yi = int(np.floor(fy + 0.5))
            if xi < 0 or xi >= width or yi < 0 or yi >= height:
                break
            found = False
            for o in range(-1, 2):
                px = xi
                py = yi
                if x_major:
                    py = yi + o
                else:
                    px = xi + o
                if 0 <= px < width and 0 <= py < height and mask[py, px]:
                    out_x[count] = px
                    out_y[count] = py
                    count += 1
                    found = True
            if found:
                gap = 0
            else:
                gap += 1
                if gap > max_gap:
                    break
            k += 1
    return count


@njit(cache=True)
def _principal_axis(xs, ys, n, fallback_x, fallback_y):
    """Centroid and unit direction of the least-squares line through n points."""
    if n == 0:
        return 0.0, 0.0, fallback_x, fallback_y
    cx = 0.0
    cy = 0.0
    for i in range(n):
        cx += xs[i]
        cy += ys[i]
    cx /= n
    cy /= n
    sxx = 0.0
    syy = 0.0
    sxy = 0.0
    for i in range(n):
        ddx = xs[i] - cx
        ddy = ys[i] - cy
        sxx += ddx * ddx
        syy += ddy * ddy
        sxy += ddx * ddy
    if n < 2 or sxx + syy == 0.0:
        return cx, cy, fallback_x, fallback_y
    a = 0.5 * np.arctan2(2.0 * sxy, sxx - syy)
    return cx, cy, np.cos(a), np.sin(a)


@njit(cache=True)
def _clamp_round(v, hi):
    r = int(np.floor(v + 0.5))
    if r < 0:
        return 0
    if r > hi:
        return hi
    return r


@njit(cache=True)
def _vote(acc, x, y, cos_t, sin_t, rho_res, offset, delta):
    best_val = 0
    best_t = 0
    for t in range(acc.shape[0]):
        r = int(np.floor((x * cos_t[t] + y * sin_t[t]) / rho_res + 0.5)) + offset
        acc[t, r] += delta
        if acc[t, r] > best_val:
            best_val = acc[t, r]
            best_t = t
    return best_val, best_t


@njit(cache=True)
def _consume(mask, voted, acc, xs, ys, n, unvote, cos_t, sin_t, rho_res, offset):
    for i in range(n):
        px = xs[i]
        py = ys[i]
        if not mask[py, px]:
            continue
        if unvote and voted[py, px]:
            _vote(acc, px, py, cos_t, sin_t, rho_res, offset, -1)
        voted[py, px] = False
        mask[py, px] = False


@njit(cache=True)
def _label_support(support, xs, ys, n, x1, y1, x2, y2, rho_res, label):
    lx = x2 - x1
    ly = y2 - y1
    norm = np.hypot(lx, ly)
    for i in range(n):
        if abs((xs[i] - x1) * ly - (ys[i] - y1) * lx) / norm <= rho_res:
            support[ys[i], xs[i]] = label


@njit(cache=True)
def ppht(mask_in, xs, ys, order, rho_res, n_theta, theta_res, threshold, min_length, max_gap, max_lines, support):
    """Return an (n, 4) int64 array of segments (x1, y1, x2, y2) in detection order.

    ``xs`` / ``ys`` list the edge pixels and ``order`` is the sampling
    permutation over them. When ``support`` has the mask's shape, each
    accepted segment k labels its traced pixels lying within ``rho_res`` of
    its endpoint line with k + 1; pass a (0, 0) array to skip labelling.
    """
    height, width = mask_in.shape
    mask = mask_in.copy()
    voted = np.zeros(mask.shape, dtype=np.bool_)
    thetas = np.arange(n_theta) * theta_res
    cos_t = np.cos(thetas)
    sin_t = np.sin(thetas)
    n_rho = 2 * int(np.ceil((width + height) / rho_res)) + 3
    offset = n_rho // 2
    acc = np.zeros((n_theta, n_rho), dtype=np.int32)

    buf_size = 6 * (max(width, height) + 2)
    wx1 = np.empty(buf_size, dtype=np.int64)
    wy1 = np.empty(buf_size, dtype=np.int64)
    wx2 = np.empty(buf_size, dtype=np.int64)
    wy2 = np.empty(buf_size, dtype=np.int64)
    out = np.zeros((max_lines, 4), dtype=np.int64)
    n_out = 0

    for idx in order:
        x = xs[idx]
        y = ys[idx]
        if not mask[y, x]:
            continue
        best_val, best_t = _vote(acc, x, y, cos_t, sin_t, rho_res, offset, 1)
        voted[y, x] = True
        if best_val < threshold:
            continue

        # the peak's normal is (cos, sin); the line runs along (-sin, cos)
        dirx = -sin_t[best_t]
        diry = cos_t[best_t]
        n1 = _walk(mask, float(x), float(y), dirx, diry, max_gap, wx1, wy1)
        cx, cy, fx, fy = _principal_axis(wx1, wy1, n1, dirx, diry)
        n2 = _walk(mask, cx, cy, fx, fy, max_gap, wx2, wy2)
        if n2 == 0:
            _consume(mask, voted, acc, wx1, wy1, n1, False, cos_t, sin_t, rho_res, offset)
            continue
        cx, cy, fx, fy = _principal_axis(wx2, wy2, n2, fx, fy)

        t_min = np.inf
        t_max = -np.inf
        for i in range(n2):
            t = (wx2[i] - cx) * fx + (wy2[i] - cy) * fy
            if t < t_min:
                t_min = t
            if t > t_max:
                t_max = t
        ex1 = _clamp_round(cx + t_min * fx, width - 1)
        ey1 = _clamp_round(cy + t_min * fy, height - 1)
        ex2 = _clamp_round(cx + t_max * fx, width - 1)
        ey2 = _clamp_round(cy + t_max * fy, height - 1)
        good = np.hypot(ex2 - ex1, ey2 - ey1) >= min_length

        _consume(mask, voted, acc, wx2, wy2, n2, good, cos_t, sin_t, rho_res, offset)
        _consume(mask, voted, acc, wx1, wy1, n1, good, cos_t, sin_t, rho_res, offset)
        if good:
            if support.shape[0] > 0:
                _label_support(support, wx2, wy2, n2, ex1, ey1, ex2, ey2, rho_res, n_out + 1)
            out[n_out, 0] = ex1
            out[n_out, 1] = ey1
            out[n_out, 2] = ex2
            out[n_out, 3] = ey2
            n_out += 1
            if n_out >= max_lines:
                break
    return out[:n_out]
