"""Frame representation, similarity-warp sampling, windowing, resizing.

Frames are numpy arrays with values in [0, 1]: shape (H, W) for grayscale
or (H, W, 3) for RGB. Sampling uses inverse mapping (iterate output
pixels, read the input) with bilinear interpolation; reads outside the
frame replicate the nearest border pixel.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import SimilarityState


def validate_frame(frame: np.ndarray) -> np.ndarray:
    f = np.asarray(frame, dtype=float)
    if f.ndim == 3 and f.shape[2] == 1:
        f = f[:, :, 0]
    if f.ndim not in (2, 3) or (f.ndim == 3 and f.shape[2] != 3):
        raise ValueError(f"frame must be (H, W) or (H, W, 3), got {f.shape}")
    if f.shape[0] < 1 or f.shape[1] < 1:
        raise ValueError("empty frame")
    if not np.all(np.isfinite(f)):
        raise ValueError("frame contains non-finite values")
    if f.min() < -1e-9 or f.max() > 1.0 + 1e-9:
        raise ValueError("frame values must lie in [0, 1]")
    return f


def sample_bilinear(img: np.ndarray, ys: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Bilinear lookup at float coordinates; out-of-bounds reads clamp
    to the border (replication)."""
    h, w = img.shape[:2]
    xs = np.clip(xs, 0.0, w - 1.0)
    ys = np.clip(ys, 0.0, h - 1.0)
    x0 = np.floor(xs).astype(np.intp)
    y0 = np.floor(ys).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = xs - x0
    fy = ys - y0
    if img.ndim == 3:
        fx = fx[..., None]
        fy = fy[..., None]
    top = img[y0, x0] * (1.0 - fx) + img[y0, x1] * fx
    bot = img[y1, x0] * (1.0 - fx) + img[y1, x1] * fx
    return top * (1.0 - fy) + bot * fy


def warp_similarity(frame: np.ndarray, state: SimilarityState, out_h: int, out_w: int) -> np.ndarray:
    """Sample a patch under a similarity transform.

    Output pixel (i, j) reads the frame at
    (tx, ty) + s * R(theta) @ (j - (out_w-1)/2, i - (out_h-1)/2),
    so the patch covers an s-times-larger, theta-rotated region centred
    on (tx, ty). With theta=0, s=1 this is an exact crop.
    """
    if out_h < 2 or out_w < 2:
        raise ValueError("output dims must be at least 2x2")
    if not (state.s > 0.0):
        raise ValueError("scale must be positive")
    f = np.asarray(frame, dtype=float)
    dy = np.arange(out_h, dtype=float) - (out_h - 1) / 2.0
    dx = np.arange(out_w, dtype=float) - (out_w - 1) / 2.0
    gx, gy = np.meshgrid(dx, dy)
    c, s = math.cos(state.theta), math.sin(state.theta)
    xs = state.tx + state.s * (c * gx - s * gy)
    ys = state.ty + state.s * (s * gx + c * gy)
    out = sample_bilinear(f, ys, xs)
    return np.clip(out, 0.0, 1.0)


def hann_window(h: int, w: int) -> np.ndarray:
    """Separable 2D Hann window: zero at the borders, peak one at the
    centre of odd-sized axes."""
    if h < 2 or w < 2:
        raise ValueError("window dims must be at least 2")
    return np.outer(np.hanning(h), np.hanning(w))


def resize_bilinear(patch: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resampling with corner alignment (same-size is identity)."""
    if out_h < 2 or out_w < 2:
        raise ValueError("output dims must be at least 2x2")
    p = np.asarray(patch, dtype=float)
    in_h, in_w = p.shape[:2]
    if in_h < 2 or in_w < 2:
        raise ValueError("input dims must be at least 2x2")
    ys = np.linspace(0.0, in_h - 1.0, out_h)
    xs = np.linspace(0.0, in_w - 1.0, out_w)
    gx, gy = np.meshgrid(xs, ys)
    return sample_bilinear(p, gy, gx)


def to_gray(frame: np.ndarray) -> np.ndarray:
    """Luma projection of an RGB frame; grayscale passes through."""
    f = np.asarray(frame, dtype=float)
    if f.ndim == 2:
        return f
    return f[:, :, 0] * 0.299 + f[:, :, 1] * 0.587 + f[:, :, 2] * 0.114
