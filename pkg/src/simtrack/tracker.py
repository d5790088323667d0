"""Public tracking API: initialize from a first-frame box, estimate the
4-DoF pose per frame, maintain the models.

The target template is sampled at the current (theta, s) for every
patch, so both estimators only ever see residual motion; rotation and
scale accumulate on the state, not in the models. Model updates happen
once per frame, after the pose solve has terminated.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from . import cf, solver
from .features import (
    ColorHistModel,
    apply_cosine_window,
    extract_hog,
    init_color_model,
    update_color_model,
)
from .geometry import SimilarityState, state_quad
from .imgproc import hann_window, validate_frame, warp_similarity
from .logpolar import (
    LogPolarConfig,
    ScaleRotationModel,
    init_scale_rotation_model,
    log_polar_features,
    update_scale_rotation_model,
)


@dataclass(frozen=True)
class SolverSettings:
    max_iters: int = 5
    score_tol: float = 0.02
    # motion-prior bandwidths: translation as a multiple of the target
    # dims (resolved at init), rotation in radians, scale in log units
    prior_trans_factor: float = 4.0
    prior_theta: float = 1.4
    prior_log_scale: float = 0.9


@dataclass(frozen=True)
class TrackerConfig:
    eta: float = 0.15  # translation weight in the combined score
    lambda1: float = 1e-4  # ridge regularizer
    lambda_phi: float = 0.01  # feature-model update rate
    lambda_alpha: float = 0.01  # dual-weight update rate
    lambda_w: float = 0.015  # scale-rotation model update rate
    train_padding: float = 2.2  # learning patch over target size
    search_factor: float = 1.5  # search window over learning patch
    phase_window: float = 1.8  # phase-correlation patch over target size
    cell_size: int = 4
    template_max_area: float = 150.0 * 150.0  # px, caps FFT sizes
    sigma_factor: float = 0.1  # response target bandwidth
    color_gamma: float = 0.3  # color response weight in the fusion
    color_learn_rate: float = 0.04
    color_bins: int = 32
    lp_cell_size: int = 4
    lp_feature_mode: str = "hog"  # or "gray"
    scale_change_min: float = 0.6  # per-frame relative scale clamp
    scale_change_max: float = 1.6
    solver: SolverSettings = field(default_factory=SolverSettings)

    def __post_init__(self):
        for name in ("lambda_phi", "lambda_alpha", "lambda_w", "color_learn_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("train_padding", "search_factor", "phase_window"):
            if not getattr(self, name) > 1.0:
                raise ValueError(f"{name} must exceed 1")


@dataclass(frozen=True)
class TrackState:
    state: SimilarityState
    template_w: float  # template pixels (after any max-area shrink)
    template_h: float
    base_scale: float  # frame px per template px at s = 1
    box_w: float  # original box dims, frame px at s = 1
    box_h: float
    config: TrackerConfig
    trans_model: cf.TranslationModel
    sr_model: ScaleRotationModel
    color_model: ColorHistModel | None
    search_px: tuple
    train_px: tuple
    hann_train: np.ndarray
    hann_search: np.ndarray
    solver_config: solver.SolverConfig
    frame_shape: tuple
    frame_index: int = 0
    last_iters: int = 0
    last_accepted_scores: tuple = ()
    window_clipped: bool = False


def _even_cells(px: float, cell: int):
    """Round a pixel size to an even number of cells (even counts keep
    the padded-filter and fftshift centres exact)."""
    n = max(2, int(round(px / cell / 2.0)) * 2)
    return n, n * cell


def init(frame: np.ndarray, box, config: TrackerConfig | None = None) -> TrackState:
    """Start tracking from an axis-aligned (x, y, w, h) box."""
    cfg = config or TrackerConfig()
    f = validate_frame(frame)
    x, y, w, h = (float(v) for v in box)
    if w < 8 or h < 8:
        raise ValueError(f"degenerate init box {box}: sides must be >= 8 px")
    # continuous-extent centre (x+w/2, y+h/2), snapped (<= 0.5 px) to the
    # half-integer phase where the even-sized patch grids sample the
    # frame at integer positions: models built from crisp samples leave
    # no sharper alignment nearby for the estimates to drift towards
    state = SimilarityState(
        math.floor(x + w / 2.0) + 0.5, math.floor(y + h / 2.0) + 0.5, 0.0, 1.0
    )

    shrink = min(1.0, math.sqrt(cfg.template_max_area / (w * h)))
    tw, th = w * shrink, h * shrink
    base_scale = 1.0 / shrink

    cell = cfg.cell_size
    dc_h, d_px_h = _even_cells(th * cfg.train_padding, cell)
    dc_w, d_px_w = _even_cells(tw * cfg.train_padding, cell)
    nc_h, n_px_h = _even_cells(d_px_h * cfg.search_factor, cell)
    nc_w, n_px_w = _even_cells(d_px_w * cfg.search_factor, cell)

    hann_train = hann_window(dc_h, dc_w)
    hann_search = hann_window(nc_h, nc_w)

    sample = SimilarityState(state.tx, state.ty, 0.0, base_scale)
    train_patch = warp_similarity(f, sample, d_px_h, d_px_w)
    feats = apply_cosine_window(extract_hog(train_patch, cell), hann_train)
    sigma = cfg.sigma_factor * math.sqrt(tw * th) / cell
    target = cf.gaussian_target(dc_h, dc_w, sigma)
    trans_model = cf.train_init(feats, target, cfg.lambda1, search_dims=(nc_h, nc_w))

    # square phase-correlation patch sized on the target's geometric mean
    _, p_px = _even_cells(cfg.phase_window * math.sqrt(tw * th), cfg.lp_cell_size)
    lp_cfg = LogPolarConfig(
        out_h=p_px,
        out_w=p_px,
        patch_h=p_px,
        patch_w=p_px,
        cell_size=cfg.lp_cell_size,
        feature_mode=cfg.lp_feature_mode,
        scale_min=cfg.scale_change_min,
        scale_max=cfg.scale_change_max,
    )
    sr_model = init_scale_rotation_model(warp_similarity(f, sample, p_px, p_px), lp_cfg)

    color_model = None
    if f.ndim == 3 and cfg.color_gamma > 0.0:
        color_model = init_color_model(
            f, sample, tw, th, learn_rate=cfg.color_learn_rate, bins=cfg.color_bins
        )

    solver_config = solver.SolverConfig(
        eta=cfg.eta,
        max_iters=cfg.solver.max_iters,
        score_tol=cfg.solver.score_tol,
        bw_tx=cfg.solver.prior_trans_factor * w,
        bw_ty=cfg.solver.prior_trans_factor * h,
        bw_theta=cfg.solver.prior_theta,
        bw_log_s=cfg.solver.prior_log_scale,
    )

    return TrackState(
        state=state,
        template_w=tw,
        template_h=th,
        base_scale=base_scale,
        box_w=w,
        box_h=h,
        config=cfg,
        trans_model=trans_model,
        sr_model=sr_model,
        color_model=color_model,
        search_px=(n_px_h, n_px_w),
        train_px=(d_px_h, d_px_w),
        hann_train=hann_train,
        hann_search=hann_search,
        solver_config=solver_config,
        frame_shape=f.shape,
    )


def frame_context(ts: TrackState, frame: np.ndarray) -> solver.FrameContext:
    """Bundle the state's models and geometry for one frame's solve."""
    return solver.FrameContext(
        frame=frame,
        prev_state=ts.state,
        trans_model=ts.trans_model,
        sr_model=ts.sr_model,
        color_model=ts.color_model,
        color_gamma=ts.config.color_gamma,
        cell_size=ts.config.cell_size,
        base_scale=ts.base_scale,
        search_px=ts.search_px,
        hann_search=ts.hann_search,
    )


def track(ts: TrackState, frame: np.ndarray):
    """Estimate the pose on a new frame and update the models.

    Returns (new TrackState, SimilarityState, ScoreBreakdown).
    """
    f = validate_frame(frame)
    if f.shape != ts.frame_shape:
        raise ValueError(f"frame shape changed from {ts.frame_shape} to {f.shape}")
    cfg = ts.config

    result = solver.run_bcd(frame_context(ts, f), ts.solver_config)
    new_state = result.state

    sample = SimilarityState(
        new_state.tx, new_state.ty, new_state.theta, new_state.s * ts.base_scale
    )
    trans_model = ts.trans_model
    if cfg.lambda_phi > 0.0 and cfg.lambda_alpha > 0.0:
        patch = warp_similarity(f, sample, *ts.train_px)
        feats = apply_cosine_window(extract_hog(patch, cfg.cell_size), ts.hann_train)
        trans_model = cf.update_model(ts.trans_model, feats, cfg.lambda_phi, cfg.lambda_alpha)
    sr_model = ts.sr_model
    if cfg.lambda_w > 0.0:
        lp_cfg = ts.sr_model.config
        phase_patch = warp_similarity(f, sample, lp_cfg.patch_h, lp_cfg.patch_w)
        sr_model = update_scale_rotation_model(
            ts.sr_model, log_polar_features(phase_patch, lp_cfg), cfg.lambda_w
        )
    color_model = ts.color_model
    if color_model is not None and cfg.color_learn_rate > 0.0:
        color_model = update_color_model(color_model, f, sample)

    new_ts = dataclasses.replace(
        ts,
        state=new_state,
        trans_model=trans_model,
        sr_model=sr_model,
        color_model=color_model,
        frame_index=ts.frame_index + 1,
        last_iters=result.iters,
        last_accepted_scores=result.accepted_scores,
        window_clipped=result.window_clipped,
    )
    return new_ts, new_state, result.breakdown


def output_box(ts: TrackState, mode: str = "rotated"):
    """Current target box: 'rotated' gives the 4 corners of the
    similarity-transformed template rectangle, 'axis_aligned' ignores
    the rotation and gives (x, y, w, h)."""
    st = ts.state
    if mode == "rotated":
        # state_quad applies the state's own scale to the template box
        return state_quad(st, ts.box_w, ts.box_h)
    if mode == "axis_aligned":
        w = ts.box_w * st.s
        h = ts.box_h * st.s
        return (st.tx - w / 2.0, st.ty - h / 2.0, w, h)
    raise ValueError(f"unknown output mode {mode!r}")


class SimilarityTracker:
    """Stateful convenience wrapper around init/track/output_box."""

    def __init__(self, config: TrackerConfig | None = None):
        self.config = config or TrackerConfig()
        self.state: TrackState | None = None

    def init(self, frame, box):
        self.state = init(frame, box, self.config)
        return self.state.state

    def track(self, frame):
        if self.state is None:
            raise RuntimeError("tracker not initialized")
        self.state, pose, breakdown = track(self.state, frame)
        return pose, breakdown

    def output_box(self, mode: str = "rotated"):
        if self.state is None:
            raise RuntimeError("tracker not initialized")
        return output_box(self.state, mode)


# --- plain-text config serialization ---------------------------------------


def config_to_text(cfg: TrackerConfig) -> str:
    """key=value lines; solver settings use a 'solver.' prefix."""
    lines = []
    for f_ in dataclasses.fields(cfg):
        v = getattr(cfg, f_.name)
        if f_.name == "solver":
            for sf in dataclasses.fields(v):
                lines.append(f"solver.{sf.name}={getattr(v, sf.name)!r}")
        else:
            lines.append(f"{f_.name}={v!r}")
    return "\n".join(lines) + "\n"


def config_from_text(text: str) -> TrackerConfig:
    main: dict = {}
    sub: dict = {}
    known = {f_.name for f_ in dataclasses.fields(TrackerConfig)}
    solver_fields = {f_.name for f_ in dataclasses.fields(SolverSettings)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("solver."):
            name = key[len("solver.") :]
            if name not in solver_fields:
                raise ValueError(f"config line {lineno}: unknown solver key {name!r}")
            sub[name] = _parse_scalar(value)
        elif key in known:
            main[key] = _parse_scalar(value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    if sub:
        main["solver"] = SolverSettings(**sub)
    return TrackerConfig(**main)


def _parse_scalar(value: str):
    if value.startswith(("'", '"')) and value.endswith(("'", '"')) and len(value) >= 2:
        return value[1:-1]
    for caster in (int, float):
        try:
            return caster(value)
        except ValueError:
            continue
    return value
