"""Log-polar resampling and phase-correlation scale/rotation estimation.

Rows of the log-polar grid sweep the angle (row t maps to 2*pi*t/out_h),
columns sweep the log radius (column c maps to exp(c*log(out_w/2)/out_w)
pixels from the pole), so a rotation of the source patch becomes a
circular row shift and a scale change a column shift. Phase correlation
between the accumulated model and the current features then measures
both at once from a single peak; no candidate scales or angles are ever
enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .features import apply_cosine_window, patch_features
from .geometry import wrap_angle
from .imgproc import sample_bilinear
from .response import refined_peak_shift

PHASE_EPS_REL = 1e-6


@dataclass(frozen=True)
class LogPolarConfig:
    out_h: int  # angular axis (rows)
    out_w: int  # log-radial axis (columns)
    patch_h: int
    patch_w: int
    cell_size: int = 4  # feature cell size on the log-polar grid
    feature_mode: str = "hog"  # or "gray"
    scale_min: float = 0.6  # per-estimate relative scale clamp
    scale_max: float = 1.6

    def __post_init__(self):
        if self.out_h < 8 or self.out_w < 8:
            raise ValueError("log-polar grid must be at least 8x8")

    @property
    def pole(self):
        return ((self.patch_w - 1) / 2.0, (self.patch_h - 1) / 2.0)

    @property
    def log_base(self) -> float:
        # radius at column c is exp(c * log_base)
        return math.log(self.out_w / 2.0) / self.out_w

    def grid_dims(self):
        return self.out_h // self.cell_size, self.out_w // self.cell_size


@dataclass(frozen=True)
class ScaleRotation:
    s: float
    theta: float


@dataclass(frozen=True)
class ScaleRotationModel:
    upsilon: np.ndarray  # (K, Hc, Wc) accumulated log-polar features
    config: LogPolarConfig
    upsilon_hat: np.ndarray = None  # cached half-spectrum (rfft2) of upsilon

    def __post_init__(self):
        if self.upsilon_hat is None:
            object.__setattr__(self, "upsilon_hat", np.fft.rfft2(self.upsilon, axes=(-2, -1)))


@lru_cache(maxsize=8)
def _lp_sample_grid(cfg: LogPolarConfig):
    angles = 2.0 * np.pi * np.arange(cfg.out_h) / cfg.out_h
    radii = np.exp(np.arange(cfg.out_w) * cfg.log_base)
    px, py = cfg.pole
    xs = px + radii[None, :] * np.cos(angles)[:, None]
    ys = py + radii[None, :] * np.sin(angles)[:, None]
    return ys, xs


def to_log_polar(patch: np.ndarray, cfg: LogPolarConfig) -> np.ndarray:
    """Resample a patch onto the log-polar grid (bilinear, border
    replication). Content concentric with the patch centre becomes
    constant along the angular (row) axis."""
    p = np.asarray(patch, dtype=float)
    if p.shape[0] != cfg.patch_h or p.shape[1] != cfg.patch_w:
        raise ValueError(f"patch {p.shape[:2]} does not match config "
                         f"({cfg.patch_h}, {cfg.patch_w})")
    if min(cfg.patch_h, cfg.patch_w) < 4:
        raise ValueError("patch too small for log-polar resampling")
    ys, xs = _lp_sample_grid(cfg)
    return sample_bilinear(p, ys, xs)


@lru_cache(maxsize=8)
def _radial_window(wc: int, ramp_frac: float = 0.5, taper_frac: float = 0.08) -> np.ndarray:
    """Window over the log-radial axis: cosine ramp across the inner
    half, flat middle, short taper at the outer edge.

    The log mapping crams the smallest radii into half the columns;
    those cells decohere under sub-pixel translation jitter (a shift t
    moves content at radius r by ~t/r radians of angle), so the inner
    region is faded in slowly while the translation-robust outer radii
    keep full weight until the corner-clipping edge.
    """
    w = np.ones(wc)
    r = max(2, int(ramp_frac * wc))
    t = max(2, int(taper_frac * wc))
    w[:r] = 0.5 * (1.0 - np.cos(np.pi * np.arange(r) / r))
    w[wc - t :] = np.minimum(w[wc - t :], 0.5 * (1.0 + np.cos(np.pi * np.arange(t) / t)))
    return w


def log_polar_features(patch: np.ndarray, cfg: LogPolarConfig) -> np.ndarray:
    """Full feature pipeline for one patch: log-polar resample, feature
    extraction, then a window over the log-radial feature axis.

    The angular axis is genuinely circular and stays unwindowed (a fixed
    envelope there drags the correlation peak towards zero rotation).
    The radial window multiplies the feature cells rather than the
    resampled pixels: local normalization inside the gradient features
    would otherwise cancel a pixel-space taper (for grayscale features
    the two are the same thing).
    """
    lp = to_log_polar(patch, cfg)
    feats = patch_features(lp, cfg.feature_mode, cfg.cell_size)
    hc, wc = feats.shape[-2:]
    win = _radial_window(wc)[None, :] * np.ones((hc, 1))
    return apply_cosine_window(feats, win)


def init_scale_rotation_model(patch: np.ndarray, cfg: LogPolarConfig) -> ScaleRotationModel:
    return ScaleRotationModel(upsilon=log_polar_features(patch, cfg), config=cfg)


def phase_correlate(model: ScaleRotationModel, feats: np.ndarray) -> np.ndarray:
    """Channel-summed phase correlation of the model against features.

    Per channel the cross-power spectrum conj(model) * feats is
    normalized by its own magnitude (plus a small relative epsilon),
    summed over channels and inverse-transformed; a circular shift of
    the features shows up as a sharp peak at that shift.
    """
    f = np.asarray(feats, dtype=float)
    if f.shape != model.upsilon.shape:
        raise ValueError(f"feature shape {f.shape} does not match model {model.upsilon.shape}")
    hc, wc = f.shape[-2:]
    f_hat = np.fft.rfft2(f, axes=(-2, -1))
    cross = np.conj(model.upsilon_hat) * f_hat
    mag = np.abs(cross)
    # mean magnitude over the full spectrum: interior half-spectrum
    # columns stand for their conjugate mirrors, edge columns do not
    full_sum = 2.0 * mag.sum(axis=(-2, -1)) - mag[..., 0].sum(-1) - (
        0.0 if wc % 2 else mag[..., -1].sum(-1)
    )
    eps = PHASE_EPS_REL * full_sum.reshape(-1, 1, 1) / (hc * wc)
    eps = np.maximum(eps, np.finfo(float).tiny)
    summed = np.sum(cross / (mag + eps), axis=0)
    # normalize by channel count so a perfectly coherent match peaks
    # near 1 regardless of K (keeps the score commensurate with the
    # translation response in the combined objective)
    return np.fft.irfft2(summed, s=(hc, wc)) / f.shape[0]


def peak_to_scale_rotation(peak, cfg: LogPolarConfig) -> ScaleRotation:
    """Convert a (row, col) response-peak shift, in feature cells with
    sub-cell offsets, into (scale, rotation).

    Shifts beyond half an axis wrap negative. The relative scale is
    clamped to [scale_min, scale_max].
    """
    hc, wc = cfg.grid_dims()
    row, col = float(peak[0]), float(peak[1])
    row = row - hc if row > hc / 2.0 else row
    col = col - wc if col > wc / 2.0 else col
    theta = 2.0 * np.pi * (row * cfg.cell_size) / cfg.out_h
    s = math.exp(col * cfg.cell_size * cfg.log_base)
    s = min(max(s, cfg.scale_min), cfg.scale_max)
    return ScaleRotation(s=s, theta=wrap_angle(theta))


def estimate_scale_rotation(model: ScaleRotationModel, patch: np.ndarray) -> ScaleRotation:
    """One-shot relative scale/rotation of a patch against the model."""
    feats = log_polar_features(patch, model.config)
    resp = phase_correlate(model, feats)
    return peak_to_scale_rotation(refined_peak_shift(resp), model.config)


def update_scale_rotation_model(model: ScaleRotationModel, feats: np.ndarray, lam_w: float) -> ScaleRotationModel:
    """Exponentially weighted average of the model in feature space."""
    if not 0.0 < lam_w <= 1.0:
        raise ValueError(f"lam_w must lie in (0, 1], got {lam_w}")
    f = np.asarray(feats, dtype=float)
    if f.shape != model.upsilon.shape:
        raise ValueError(f"feature shape {f.shape} does not match model {model.upsilon.shape}")
    return ScaleRotationModel(
        upsilon=(1.0 - lam_w) * model.upsilon + lam_w * f, config=model.config
    )
