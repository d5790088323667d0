"""Response-map peak utilities: argmax, circular signed shifts, and
centroid sub-cell refinement."""

from __future__ import annotations

import numpy as np


def peak_location(resp: np.ndarray):
    """Row-major first-occurrence argmax of a 2D response map."""
    r = np.asarray(resp)
    idx = int(np.argmax(r))
    return idx // r.shape[1], idx % r.shape[1]


def signed_shift(index: float, n: int) -> float:
    """Interpret a circular index as a signed shift; values above n/2
    wrap negative (exactly n/2 stays positive)."""
    return index - n if index > n / 2.0 else float(index)


def centroid_refine(resp: np.ndarray, peak, radius: int = 1):
    """Sub-cell peak offset from the intensity centroid of the
    (2*radius+1)^2 neighbourhood, wrap-aware. The neighbourhood minimum
    is subtracted first (an additive baseline carries no location
    information) and values are clamped at >= 0.

    Returns (dy, dx) in cells relative to the integer peak.
    """
    r = np.asarray(resp, dtype=float)
    h, w = r.shape
    offs = np.arange(-radius, radius + 1)
    rows = (peak[0] + offs) % h
    cols = (peak[1] + offs) % w
    win = r[np.ix_(rows, cols)]
    win = np.maximum(win - win.min(), 0.0)
    total = win.sum()
    if total <= 0.0:
        return 0.0, 0.0
    dy = float((win.sum(axis=1) * offs).sum() / total)
    dx = float((win.sum(axis=0) * offs).sum() / total)
    return dy, dx


def refined_peak_shift(resp: np.ndarray, radius: int = 1):
    """Signed (dy, dx) circular shift of the response peak with
    centroid refinement applied."""
    py, px = peak_location(resp)
    dy, dx = centroid_refine(resp, (py, px), radius)
    h, w = resp.shape
    return signed_shift(py, h) + dy, signed_shift(px, w) + dx
