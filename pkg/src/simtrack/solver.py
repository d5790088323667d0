"""Block coordinate descent over the 4-DoF pose.

Each sweep solves translation with rotation/scale frozen, then
rotation/scale with the fresh translation (Gauss-Seidel order). Both
sub-problems add a motion prior evaluated per candidate, take the
argmax, and refine it with a centroid over the 3x3 neighbourhood. The
sweep loop keeps the best-scoring iterate and stops when the combined
score stops improving or the sweep budget runs out; with max_iters=1 it
degenerates to a single non-iterated estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import cf
from .features import ColorHistModel, apply_cosine_window, color_response, extract_hog, mean_pool
from .geometry import SimilarityState, wrap_angle
from .imgproc import warp_similarity
from .logpolar import ScaleRotationModel, log_polar_features, peak_to_scale_rotation, phase_correlate
from .response import centroid_refine, peak_location


@dataclass(frozen=True)
class SolverConfig:
    eta: float = 0.15  # weight of the translation score vs scale-rotation
    max_iters: int = 5
    score_tol: float = 0.02  # resampling jitters totals by ~1e-2/sweep
    bw_tx: float = 100.0  # motion-prior bandwidths: pixels,
    bw_ty: float = 100.0  # pixels,
    bw_theta: float = 1.4  # radians,
    bw_log_s: float = 0.9  # log-scale units

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("eta must lie in [0, 1]")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        for bw in (self.bw_tx, self.bw_ty, self.bw_theta, self.bw_log_s):
            if not bw > 0.0:
                raise ValueError("prior bandwidths must be positive")


@dataclass(frozen=True)
class ScoreBreakdown:
    ft: float
    frho: float
    g: float
    total: float


@dataclass(frozen=True)
class FrameContext:
    """Everything one frame's solve needs, assembled by the tracker.
    Models are borrowed read-only; the solver never mutates them."""

    frame: np.ndarray
    prev_state: SimilarityState
    trans_model: cf.TranslationModel
    sr_model: ScaleRotationModel
    color_model: ColorHistModel | None
    color_gamma: float
    cell_size: int
    base_scale: float  # frame pixels per template pixel at s = 1
    search_px: tuple  # (h, w) of the translation search patch
    hann_search: np.ndarray


@dataclass(frozen=True)
class BCDResult:
    state: SimilarityState
    breakdown: ScoreBreakdown
    iters: int
    accepted_scores: tuple  # per-sweep totals accepted as new best
    window_clipped: bool


def motion_prior(state: SimilarityState, prev: SimilarityState, cfg: SolverConfig) -> float:
    """exp(-||delta||) penalty towards the previous pose, each DoF
    normalized by its bandwidth (pixels, radians and log-scale are
    incommensurate otherwise)."""
    norm = math.sqrt(
        ((state.tx - prev.tx) / cfg.bw_tx) ** 2
        + ((state.ty - prev.ty) / cfg.bw_ty) ** 2
        + (wrap_angle(state.theta - prev.theta) / cfg.bw_theta) ** 2
        + (math.log(state.s / prev.s) / cfg.bw_log_s) ** 2
    )
    return math.exp(-norm)


def _sampling_state(ctx: FrameContext, cur: SimilarityState) -> SimilarityState:
    return SimilarityState(cur.tx, cur.ty, cur.theta, cur.s * ctx.base_scale)


def _is_clipped(frame, state, out_h, out_w) -> bool:
    corners = np.array(
        [
            [-(out_w - 1) / 2.0, -(out_h - 1) / 2.0],
            [(out_w - 1) / 2.0, -(out_h - 1) / 2.0],
            [(out_w - 1) / 2.0, (out_h - 1) / 2.0],
            [-(out_w - 1) / 2.0, (out_h - 1) / 2.0],
        ]
    )
    c, s = math.cos(state.theta), math.sin(state.theta)
    xs = state.tx + state.s * (c * corners[:, 0] - s * corners[:, 1])
    ys = state.ty + state.s * (s * corners[:, 0] + c * corners[:, 1])
    h, w = frame.shape[:2]
    return bool(xs.min() < 0 or ys.min() < 0 or xs.max() > w - 1 or ys.max() > h - 1)


def solve_translation(ctx: FrameContext, cur: SimilarityState, cfg: SolverConfig):
    """Maximize prior + eta * fused translation response over the search
    grid at the current (theta, s); returns the updated state, the
    translation score at the chosen cell, and a clipped-window flag."""
    st = _sampling_state(ctx, cur)
    ph, pw = ctx.search_px
    patch = warp_similarity(ctx.frame, st, ph, pw)
    feats = extract_hog(patch, ctx.cell_size)
    feats = apply_cosine_window(feats, ctx.hann_search)
    resp = np.fft.fftshift(cf.respond(ctx.trans_model, feats))
    nh, nw = resp.shape
    cyi, cxi = nh // 2, nw // 2

    if ctx.color_model is not None and ctx.color_gamma > 0.0 and patch.ndim == 3:
        pooled = mean_pool(color_response(ctx.color_model, patch), ctx.cell_size)
        fused = (1.0 - ctx.color_gamma) * resp + ctx.color_gamma * pooled[:nh, :nw]
    else:
        fused = resp

    # prior per candidate cell displacement, mapped back to frame pixels
    step = ctx.cell_size * st.s
    dy = (np.arange(nh) - cyi)[:, None]
    dx = (np.arange(nw) - cxi)[None, :]
    c, s = math.cos(cur.theta), math.sin(cur.theta)
    cand_tx = cur.tx + step * (c * dx - s * dy)
    cand_ty = cur.ty + step * (s * dx + c * dy)
    const = (wrap_angle(cur.theta - ctx.prev_state.theta) / cfg.bw_theta) ** 2 + (
        math.log(cur.s / ctx.prev_state.s) / cfg.bw_log_s
    ) ** 2
    norm = np.sqrt(
        ((cand_tx - ctx.prev_state.tx) / cfg.bw_tx) ** 2
        + ((cand_ty - ctx.prev_state.ty) / cfg.bw_ty) ** 2
        + const
    )
    score = cfg.eta * fused + np.exp(-norm)

    # argmax over the full prior-weighted score; the sub-cell centroid
    # interpolates the response itself (the prior is near-constant over
    # a 3x3 patch and would only flatten the peak)
    peak = peak_location(score)
    oy, ox = centroid_refine(fused, peak)
    fy, fx = peak[0] + oy - cyi, peak[1] + ox - cxi
    new = replace(
        cur,
        tx=cur.tx + step * (c * fx - s * fy),
        ty=cur.ty + step * (s * fx + c * fy),
    )
    return new, float(fused[peak]), _is_clipped(ctx.frame, st, ph, pw)


def solve_scale_rotation(ctx: FrameContext, cur: SimilarityState, cfg: SolverConfig):
    """Maximize prior + (1 - eta) * phase-correlation response over the
    log-polar shift grid at the current translation; composes the
    relative estimate onto the absolute state."""
    lp_cfg = ctx.sr_model.config
    st = _sampling_state(ctx, cur)
    patch = warp_similarity(ctx.frame, st, lp_cfg.patch_h, lp_cfg.patch_w)
    feats = log_polar_features(patch, lp_cfg)
    resp = np.fft.fftshift(phase_correlate(ctx.sr_model, feats))
    hc, wc = resp.shape
    cyi, cxi = hc // 2, wc // 2

    drow = (np.arange(hc) - cyi)[:, None]
    dcol = (np.arange(wc) - cxi)[None, :]
    dtheta = 2.0 * np.pi * drow * lp_cfg.cell_size / lp_cfg.out_h
    dlogs = dcol * lp_cfg.cell_size * lp_cfg.log_base
    theta_diff = np.angle(np.exp(1j * (cur.theta + dtheta - ctx.prev_state.theta)))
    logs_diff = math.log(cur.s / ctx.prev_state.s) + dlogs
    const = ((cur.tx - ctx.prev_state.tx) / cfg.bw_tx) ** 2 + (
        (cur.ty - ctx.prev_state.ty) / cfg.bw_ty
    ) ** 2
    norm = np.sqrt(const + (theta_diff / cfg.bw_theta) ** 2 + (logs_diff / cfg.bw_log_s) ** 2)
    score = (1.0 - cfg.eta) * resp + np.exp(-norm)

    peak = peak_location(score)
    oy, ox = centroid_refine(resp, peak)
    rel = peak_to_scale_rotation((peak[0] + oy - cyi, peak[1] + ox - cxi), lp_cfg)
    new = replace(cur, theta=wrap_angle(cur.theta + rel.theta), s=cur.s * rel.s)
    clipped = _is_clipped(ctx.frame, st, lp_cfg.patch_h, lp_cfg.patch_w)
    return new, float(resp[peak]), clipped


def run_bcd(ctx: FrameContext, cfg: SolverConfig) -> BCDResult:
    """Alternate the two sub-problems from the previous pose until the
    combined score stops improving; returns the best iterate seen."""
    cur = ctx.prev_state
    best_state, best_break = cur, None
    best_total = -math.inf
    last_total = -math.inf
    accepted = []
    clipped = False
    iters = 0
    for _ in range(cfg.max_iters):
        iters += 1
        cur, ft, c1 = solve_translation(ctx, cur, cfg)
        cur, frho, c2 = solve_scale_rotation(ctx, cur, cfg)
        clipped = clipped or c1 or c2
        g = motion_prior(cur, ctx.prev_state, cfg)
        total = cfg.eta * ft + (1.0 - cfg.eta) * frho + g
        if total > best_total:
            best_total = total
            best_state = cur
            best_break = ScoreBreakdown(ft=ft, frho=frho, g=g, total=total)
            accepted.append(total)
        if total - last_total < cfg.score_tol:
            break
        last_total = total
    if best_break is None:  # pragma: no cover - max_iters >= 1 guarantees a sweep
        best_break = ScoreBreakdown(0.0, 0.0, 1.0, 1.0)
    return BCDResult(
        state=best_state,
        breakdown=best_break,
        iters=iters,
        accepted_scores=tuple(accepted),
        window_clipped=clipped,
    )
