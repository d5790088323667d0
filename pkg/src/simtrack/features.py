"""Feature extraction: oriented-gradient cell features and a global
color-histogram foreground model.

Feature maps are arrays of shape (K, Hc, Wc): K channels over a grid of
cells. The gradient features follow the 31-channel layout used across
the correlation-filter tracking line: 18 contrast-sensitive orientation
channels, 9 contrast-insensitive ones, and 4 gradient-energy
(normalization) channels, with block normalization truncated at 0.2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .geometry import SimilarityState
from .imgproc import to_gray, warp_similarity

HOG_ORIENTATIONS = 9
HOG_CHANNELS = 31
HOG_TRUNCATION = 0.2
_TEX_COEF = 0.2357  # ~1/sqrt(18), weight of the gradient-energy channels
_NORM_EPS = 1e-12


def _pick_strongest_channel(gx, gy):
    """Per pixel, keep the gradient of the color channel with the
    largest magnitude."""
    if gx.ndim == 2:
        return gx, gy
    mag2 = gx * gx + gy * gy
    idx = np.argmax(mag2, axis=2)[..., None]
    gx = np.take_along_axis(gx, idx, axis=2)[..., 0]
    gy = np.take_along_axis(gy, idx, axis=2)[..., 0]
    return gx, gy


def _bin_votes(bins: np.ndarray, mag: np.ndarray, cell: int, h_cells: int, w_cells: int) -> np.ndarray:
    """Accumulate per-pixel magnitudes into (2*9, h_cells, w_cells)
    orientation histograms, each pixel voting bilinearly into the two
    nearest cells per axis (cell centers at i*cell + (cell-1)/2); votes
    falling outside the grid are dropped."""
    hh, ww = mag.shape
    cy = (np.arange(hh) - (cell - 1) / 2.0) / cell
    cx = (np.arange(ww) - (cell - 1) / 2.0) / cell
    iy0 = np.floor(cy).astype(np.intp)
    ix0 = np.floor(cx).astype(np.intp)
    wy1, wx1 = cy - iy0, cx - ix0
    # one-cell padding absorbs the out-of-grid votes, cropped afterwards
    gw = w_cells + 2
    gs = (h_cells + 2) * gw
    base = bins * gs
    row0 = (iy0 + 1)[:, None] * gw
    row1 = row0 + gw
    col0 = (ix0 + 1)[None, :]
    idx = [base + r + col0 + c for r in (row0, row1) for c in (0, 1)]
    wy = (1.0 - wy1, wy1)
    wx = (1.0 - wx1, wx1)
    wts = [mag * wy[i][:, None] * wx[j][None, :] for i in (0, 1) for j in (0, 1)]
    hist = np.bincount(
        np.concatenate([ix_.ravel() for ix_ in idx]),
        weights=np.concatenate([w.ravel() for w in wts]),
        minlength=2 * HOG_ORIENTATIONS * gs,
    ).reshape(2 * HOG_ORIENTATIONS, h_cells + 2, gw)
    return hist[:, 1 : h_cells + 1, 1 : w_cells + 1]


def extract_hog(patch: np.ndarray, cell_size: int = 4) -> np.ndarray:
    """31-channel oriented-gradient cell features of a [0,1] patch.

    Gradients come from centered differences (replicated borders), each
    pixel votes its magnitude into one of 18 signed orientation bins and
    bilinearly into the 4 surrounding cells. Cells are normalized by the
    four neighbouring block energies with truncation at 0.2. Input dims
    that are not multiples of cell_size are cropped at the bottom/right.
    """
    p = np.asarray(patch, dtype=float)
    if p.ndim not in (2, 3):
        raise ValueError(f"patch must be 2D or 3D, got shape {p.shape}")
    if cell_size < 1:
        raise ValueError("cell_size must be >= 1")
    h_cells = p.shape[0] // cell_size
    w_cells = p.shape[1] // cell_size
    if h_cells < 1 or w_cells < 1:
        raise ValueError(f"patch {p.shape} smaller than one {cell_size}px cell")
    p = p[: h_cells * cell_size, : w_cells * cell_size]

    padded = np.pad(p, ((1, 1), (1, 1)) + ((0, 0),) * (p.ndim - 2), mode="edge")
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    gx, gy = _pick_strongest_channel(gx, gy)
    mag = np.sqrt(gx * gx + gy * gy)

    # snap each pixel to the closest of 18 signed orientations
    bins = np.round(np.arctan2(gy, gx) * (HOG_ORIENTATIONS / np.pi)).astype(np.intp)
    bins %= 2 * HOG_ORIENTATIONS

    hist = _bin_votes(bins, mag, cell_size, h_cells, w_cells)

    unsigned = hist[:HOG_ORIENTATIONS] + hist[HOG_ORIENTATIONS:]
    energy = np.sum(unsigned**2, axis=0)

    # block energies over the four diagonal 2x2 neighbourhoods (edges clamped)
    epad = np.pad(energy, 1, mode="edge")
    e = energy
    up, down = epad[:-2, 1:-1], epad[2:, 1:-1]
    left, right = epad[1:-1, :-2], epad[1:-1, 2:]
    ul, ur = epad[:-2, :-2], epad[:-2, 2:]
    dl, dr = epad[2:, :-2], epad[2:, 2:]
    norms = np.stack(
        [
            1.0 / np.sqrt(e + up + left + ul + _NORM_EPS),
            1.0 / np.sqrt(e + up + right + ur + _NORM_EPS),
            1.0 / np.sqrt(e + down + left + dl + _NORM_EPS),
            1.0 / np.sqrt(e + down + right + dr + _NORM_EPS),
        ]
    )

    signed_n = np.minimum(hist[:, None] * norms[None], HOG_TRUNCATION)
    unsigned_n = np.minimum(unsigned[:, None] * norms[None], HOG_TRUNCATION)

    out = np.empty((HOG_CHANNELS, h_cells, w_cells))
    out[:18] = 0.5 * signed_n.sum(axis=1)
    out[18:27] = 0.5 * unsigned_n.sum(axis=1)
    out[27:] = _TEX_COEF * signed_n.sum(axis=0)
    return out


def apply_cosine_window(feats: np.ndarray, window: np.ndarray) -> np.ndarray:
    """Multiply every feature channel by a spatial window."""
    f = np.asarray(feats, dtype=float)
    w = np.asarray(window, dtype=float)
    if f.shape[-2:] != w.shape:
        raise ValueError(f"window {w.shape} does not match feature dims {f.shape[-2:]}")
    return f * w[None]


def gray_features(patch: np.ndarray, cell_size: int = 1) -> np.ndarray:
    """Zero-mean grayscale intensity as a single-channel feature map,
    mean-pooled to the cell grid when cell_size > 1."""
    g = to_gray(patch) - 0.5
    if cell_size > 1:
        g = mean_pool(g, cell_size)
    return g[None]


def patch_features(patch: np.ndarray, mode: str = "hog", cell_size: int = 4) -> np.ndarray:
    if mode == "hog":
        return extract_hog(patch, cell_size)
    if mode == "gray":
        return gray_features(patch, cell_size)
    raise ValueError(f"unknown feature mode {mode!r}")


def mean_pool(grid: np.ndarray, cell: int) -> np.ndarray:
    """Average-pool a 2D grid into cell x cell blocks (remainder cropped)."""
    g = np.asarray(grid, dtype=float)
    hc, wc = g.shape[0] // cell, g.shape[1] // cell
    g = g[: hc * cell, : wc * cell]
    return g.reshape(hc, cell, wc, cell).mean(axis=(1, 3))


# --- color histogram model -------------------------------------------------


@dataclass(frozen=True)
class ColorHistModel:
    """Foreground/background joint RGB histograms (bins per channel),
    plus the target box dims (template-scale pixels) they were built for."""

    fg_hist: np.ndarray
    bg_hist: np.ndarray
    box_w: float
    box_h: float
    learn_rate: float = 0.04
    bins: int = 32


def _joint_histogram(pixels: np.ndarray, bins: int) -> np.ndarray:
    px = pixels.reshape(-1, 3)
    if px.shape[0] == 0:
        raise ValueError("empty pixel region for color histogram")
    q = np.minimum((px * bins).astype(np.intp), bins - 1)
    flat = (q[:, 0] * bins + q[:, 1]) * bins + q[:, 2]
    hist = np.bincount(flat, minlength=bins**3).astype(float)
    return (hist / hist.sum()).reshape(bins, bins, bins)


def _fg_bg_pixels(frame, state, box_w, box_h):
    bw, bh = int(round(box_w)), int(round(box_h))
    fg = warp_similarity(frame, state, max(bh, 2), max(bw, 2))
    ring = warp_similarity(frame, state, max(2 * bh, 4), max(2 * bw, 4))
    mask = np.ones(ring.shape[:2], dtype=bool)
    y0 = (ring.shape[0] - fg.shape[0]) // 2
    x0 = (ring.shape[1] - fg.shape[1]) // 2
    mask[y0 : y0 + fg.shape[0], x0 : x0 + fg.shape[1]] = False
    return fg, ring[mask]


def init_color_model(
    frame: np.ndarray,
    state: SimilarityState,
    box_w: float,
    box_h: float,
    learn_rate: float = 0.04,
    bins: int = 32,
) -> ColorHistModel:
    fg, bg = _fg_bg_pixels(frame, state, box_w, box_h)
    return ColorHistModel(
        fg_hist=_joint_histogram(fg, bins),
        bg_hist=_joint_histogram(bg, bins),
        box_w=float(box_w),
        box_h=float(box_h),
        learn_rate=learn_rate,
        bins=bins,
    )


def update_color_model(model: ColorHistModel, frame: np.ndarray, state: SimilarityState) -> ColorHistModel:
    """Exponential averaging of both histograms towards the current frame."""
    fg, bg = _fg_bg_pixels(frame, state, model.box_w, model.box_h)
    lr = model.learn_rate
    return replace(
        model,
        fg_hist=(1.0 - lr) * model.fg_hist + lr * _joint_histogram(fg, model.bins),
        bg_hist=(1.0 - lr) * model.bg_hist + lr * _joint_histogram(bg, model.bins),
    )


def color_response(model: ColorHistModel, image: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Dense translation score over an RGB image region.

    Per pixel: P(fg) = fg/(fg+bg+eps) from the joint histograms, then a
    target-sized box filter (normalized by the in-bounds window area),
    so values stay in [0, 1].
    """
    img = np.asarray(image, dtype=float)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("color response needs an RGB image")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("empty region")
    bins = model.bins
    q = np.minimum((img * bins).astype(np.intp), bins - 1)
    flat = (q[..., 0] * bins + q[..., 1]) * bins + q[..., 2]
    fg = model.fg_hist.ravel()[flat]
    bg = model.bg_hist.ravel()[flat]
    prob = fg / (fg + bg + eps)
    out = box_filter_mean(prob, int(round(model.box_h)), int(round(model.box_w)))
    return np.clip(out, 0.0, 1.0)


def box_filter_mean(grid: np.ndarray, box_h: int, box_w: int) -> np.ndarray:
    """Mean of grid values in a box_h x box_w window centred per pixel;
    windows are clipped at the borders and normalized by their area."""
    g = np.asarray(grid, dtype=float)
    h, w = g.shape
    box_h = max(1, min(box_h, h))
    box_w = max(1, min(box_w, w))
    integral = np.zeros((h + 1, w + 1))
    integral[1:, 1:] = np.cumsum(np.cumsum(g, axis=0), axis=1)
    ys = np.arange(h)
    xs = np.arange(w)
    y0 = np.clip(ys - (box_h - 1) // 2, 0, h)
    y1 = np.clip(ys + box_h // 2 + 1, 0, h)
    x0 = np.clip(xs - (box_w - 1) // 2, 0, w)
    x1 = np.clip(xs + box_w // 2 + 1, 0, w)
    total = (
        integral[y1[:, None], x1[None, :]]
        - integral[y0[:, None], x1[None, :]]
        - integral[y1[:, None], x0[None, :]]
        + integral[y0[:, None], x0[None, :]]
    )
    area = (y1 - y0)[:, None] * (x1 - x0)[None, :]
    return total / area
