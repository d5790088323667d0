"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line with the measured numbers. Run with `pytest tests/test_acceptance.py -v -s`.
"""

import math
import time

import numpy as np
import pytest

from conftest import textured_image
from simtrack import cf, spectral, tracker
from simtrack.bench import metrics
from simtrack.bench.metrics import evaluate, rotated_iou
from simtrack.bench.sequences import synth_sequence
from simtrack.features import apply_cosine_window, extract_hog
from simtrack.geometry import SimilarityState, state_quad
from simtrack.imgproc import hann_window, warp_similarity
from simtrack.logpolar import (
    LogPolarConfig,
    init_scale_rotation_model,
    log_polar_features,
    phase_correlate,
    peak_to_scale_rotation,
    update_scale_rotation_model,
)
from simtrack.response import peak_location, refined_peak_shift, signed_shift


def _report(criterion, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {criterion}: {status} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


# --- 1. spectral suite -------------------------------------------------------


def test_criterion_1_spectral_suite():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    max_rt = 0.0
    max_parseval = 0.0
    max_ramp = 0.0
    for _ in range(20):
        h, w = rng.integers(8, 48, 2)
        g = rng.standard_normal((h, w))
        back = spectral.idft2(spectral.dft2(g))
        max_rt = max(max_rt, np.abs(back - g).max() / np.abs(g).max())
        spatial = np.sum(g**2)
        freq = np.sum(np.abs(spectral.dft2(g)) ** 2) / g.size
        max_parseval = max(max_parseval, abs(spatial - freq) / spatial)
        dy, dx = int(rng.integers(0, h)), int(rng.integers(0, w))
        shifted = np.roll(np.roll(g, dy, axis=0), dx, axis=1)
        ky = np.fft.fftfreq(h)[:, None]
        kx = np.fft.fftfreq(w)[None, :]
        ramp = np.exp(-2j * np.pi * (ky * dy + kx * dx))
        err = np.abs(spectral.dft2(shifted) - spectral.dft2(g) * ramp).max()
        max_ramp = max(max_ramp, err / np.abs(spectral.dft2(g)).max())
    elapsed = time.perf_counter() - t0
    ok = max_rt <= 1e-9 and max_parseval <= 1e-6 and max_ramp <= 1e-6 and elapsed < 1.0
    _report(
        1,
        ok,
        f"round-trip {max_rt:.1e} (<=1e-9), parseval {max_parseval:.1e} (<=1e-6), "
        f"shift-ramp {max_ramp:.1e} (<=1e-6), {elapsed:.2f}s (<1s)",
    )


# --- 2. scale-rotation recovery ---------------------------------------------


def test_criterion_2_scale_rotation_recovery():
    img = textured_image(280, 280, seed=7)
    n = 144
    c = 139.5
    cfg = LogPolarConfig(out_h=n, out_w=n, patch_h=n, patch_w=n, cell_size=4, feature_mode="hog")
    model = init_scale_rotation_model(warp_similarity(img, SimilarityState(c, c), n, n), cfg)
    rng = np.random.default_rng(202)
    theta_err, scale_err = [], []
    t0 = time.perf_counter()
    for _ in range(50):
        theta = rng.uniform(-math.pi / 4.0, math.pi / 4.0)
        s = rng.uniform(0.7, 1.4)
        patch = warp_similarity(img, SimilarityState(c, c, -theta, 1.0 / s), n, n)
        est = peak_to_scale_rotation(
            refined_peak_shift(phase_correlate(model, log_polar_features(patch, cfg))), cfg
        )
        theta_err.append(abs(math.degrees(est.theta - theta)))
        scale_err.append(abs(est.s / s - 1.0))
    elapsed = time.perf_counter() - t0
    med_t, p90_t = np.median(theta_err), np.percentile(theta_err, 90)
    med_s, p90_s = np.median(scale_err), np.percentile(scale_err, 90)
    # tail control: p90 within twice the allowed medians (3 deg, 0.05)
    ok = (
        med_t <= 3.0
        and med_s <= 0.05
        and p90_t <= 2.0 * 3.0
        and p90_s <= 2.0 * 0.05
        and elapsed < 10.0
    )
    _report(
        2,
        ok,
        f"theta median {med_t:.2f} deg (<=3), p90 {p90_t:.2f} (<=6); "
        f"scale median {med_s * 100:.1f}% (<=5%), p90 {p90_s * 100:.1f}% (<=10%); "
        f"{elapsed:.1f}s (<10s), 50 draws",
    )


# --- 3. translation CF -------------------------------------------------------


def test_criterion_3_translation_cf():
    rng = np.random.default_rng(303)
    feats = rng.standard_normal((3, 24, 24))
    target = cf.gaussian_target(24, 24, 2.0)
    model = cf.train_init(feats, target, 1e-4, search_dims=(48, 48))
    base = np.zeros((3, 48, 48))
    base[:, 12:36, 12:36] = feats

    exact = 0
    for _ in range(30):
        dy, dx = rng.integers(-12, 13, 2)  # up to N/4
        resp = cf.respond(model, np.roll(base, (dy, dx), axis=(1, 2)))
        py, px = peak_location(resp)
        exact += (signed_shift(py, 48), signed_shift(px, 48)) == (dy, dx)

    # sub-pixel: shift a real image by fractional cells, refine the peak
    img = textured_image(260, 260, seed=9)
    cell = 4
    c = 129.5
    x_patch = warp_similarity(img, SimilarityState(c, c), 96, 96)
    fx = apply_cosine_window(extract_hog(x_patch, cell), hann_window(24, 24))
    m2 = cf.train_init(fx, cf.gaussian_target(24, 24, 1.5), 1e-4, search_dims=(36, 36))
    win = hann_window(36, 36)
    hits = total = 0
    for _ in range(20):
        fy = rng.uniform(0.25, 0.75) * rng.choice([-1.0, 1.0])
        fxs = rng.uniform(0.25, 0.75) * rng.choice([-1.0, 1.0])
        # moving the sampling window by -f cells shifts the target +f
        st = SimilarityState(c - fxs * cell, c - fy * cell)
        z = apply_cosine_window(extract_hog(warp_similarity(img, st, 144, 144), cell), win)
        ry, rx = refined_peak_shift(cf.respond(m2, z))
        hits += abs(ry - fy) <= 0.5 and abs(rx - fxs) <= 0.5
        total += 1
    ok = exact == 30 and hits / total >= 0.9
    _report(
        3,
        ok,
        f"cell-exact shifts {exact}/30 (need 30), sub-pixel within 0.5 cell "
        f"{hits}/{total} (need >=90%)",
    )


# --- 4. update-rule fixed points ----------------------------------------------


def test_criterion_4_update_fixed_points():
    rng = np.random.default_rng(404)
    lam_phi, lam_alpha, lam_w = 0.01, 0.01, 0.015
    feats0 = rng.standard_normal((2, 16, 16))
    feats1 = rng.standard_normal((2, 16, 16))
    target = cf.gaussian_target(16, 16, 1.5)
    model = cf.train_init(feats0, target, 1e-4)
    fresh = cf.train_init(feats1, target, 1e-4)
    worst = 0.0
    psi_gap = np.abs(model.psi_hat - fresh.psi_hat).sum()
    alpha_gap = np.abs(model.alpha_hat - fresh.alpha_hat).sum()
    for _ in range(10):
        model = cf.update_model(model, feats1, lam_phi, lam_alpha)
        new_psi = np.abs(model.psi_hat - fresh.psi_hat).sum()
        new_alpha = np.abs(model.alpha_hat - fresh.alpha_hat).sum()
        worst = max(worst, abs(new_psi / psi_gap - (1 - lam_phi)))
        worst = max(worst, abs(new_alpha / alpha_gap - (1 - lam_alpha)))
        psi_gap, alpha_gap = new_psi, new_alpha

    img = textured_image(128, 128, seed=5)
    cfg = LogPolarConfig(out_h=96, out_w=96, patch_h=96, patch_w=96, cell_size=4)
    sr = init_scale_rotation_model(img[:96, :96], cfg)
    f_new = log_polar_features(img[16:112, 16:112], cfg)
    gap = np.abs(sr.upsilon - f_new).sum()
    for _ in range(10):
        sr = update_scale_rotation_model(sr, f_new, lam_w)
        new_gap = np.abs(sr.upsilon - f_new).sum()
        worst = max(worst, abs(new_gap / gap - (1 - lam_w)))
        gap = new_gap
    ok = worst <= 1e-6
    _report(4, ok, f"worst per-step ratio error {worst:.2e} (<=1e-6)")


# --- 5 & 7. end-to-end synthetic tracking + monotone scores -------------------


def _gentle_script(n=100):
    """Per-frame motion capped at (4 px, 2 deg, x1.02); rotation adds up
    past 90 degrees."""
    k = np.arange(n)
    dx = 2.8 * np.sin(k / 7.0)
    dy = 2.8 * np.cos(k / 11.0)
    dth = np.full(n, math.radians(1.2))
    ds = np.where(k < 30, 1.02, np.where(k < 70, 1.0 / 1.02, 1.0))
    script = np.column_stack([dx, dy, dth, ds])
    script[0] = (0.0, 0.0, 0.0, 1.0)
    return script


@pytest.fixture(scope="module")
def gentle_run():
    seed = textured_image(300, 380, seed=31, rgb=True)
    box = (164.0, 127.0, 52.0, 46.0)
    script = _gentle_script(100)
    seq = synth_sequence(seed, script, box=box)
    ts = tracker.init(seq.frame(0), box)
    quads = [tracker.output_box(ts, "rotated")]
    score_runs = []
    final_state = ts.state
    for i in range(1, len(seq)):
        ts, final_state, _ = tracker.track(ts, seq.frame(i))
        quads.append(tracker.output_box(ts, "rotated"))
        score_runs.append(ts.last_accepted_scores)
    total_theta = script[:, 2].sum()
    return seq, np.asarray(quads), score_runs, final_state, total_theta


def test_criterion_5_end_to_end_tracking(gentle_run):
    seq, quads, _, final_state, total_theta = gentle_run
    ious = np.array(
        [rotated_iou(quads[i], seq.ground_truth[i]) for i in range(len(seq))]
    )
    rot_err = abs(math.degrees(final_state.theta - total_theta))
    ok = ious.mean() >= 0.70 and rot_err <= 5.0
    _report(
        5,
        ok,
        f"mean rotated IoU {ious.mean():.3f} (>=0.70), min {ious.min():.3f}; "
        f"final rotation error {rot_err:.2f} deg (<=5) of {math.degrees(total_theta):.0f} deg scripted",
    )


def test_criterion_7_monotone_bcd_scores(gentle_run):
    _, _, score_runs, _, _ = gentle_run
    violations = 0
    for scores in score_runs:
        violations += sum(1 for a, b in zip(scores, scores[1:]) if b < a)
    ok = violations == 0
    _report(7, ok, f"{violations} ordering violations across {len(score_runs)} frames (need 0)")


# --- 6. BCD ablation direction -------------------------------------------------


def _aggressive_script(rng, n=100):
    """Joint large motion: translation steps of norm 8 px, 4 deg and
    x1.03 per frame, all three at once; direction flips keep the pose
    renderable."""
    k = np.arange(n)
    phase = rng.uniform(0, 2 * np.pi)
    ang = 2.0 * np.pi * k / 60.0 + phase  # slow serpentine: persistent headings
    dx = 8.0 * np.cos(ang)
    dy = 8.0 * np.sin(ang)
    tri = np.where((k // 22) % 2 == 0, 1.0, -1.0)  # +-88 deg swings
    dth = math.radians(4.0) * tri
    ds = np.where((k // 16) % 2 == 0, 1.03, 1.0 / 1.03)
    script = np.column_stack([dx, dy, dth, ds])
    script[0] = (0.0, 0.0, 0.0, 1.0)
    return script


def _mean_iou(seq, config):
    ts = tracker.init(seq.frame(0), (164.0, 127.0, 52.0, 46.0), config)
    ious = [rotated_iou(tracker.output_box(ts, "rotated"), seq.ground_truth[0])]
    for i in range(1, len(seq)):
        ts, _, _ = tracker.track(ts, seq.frame(i))
        ious.append(rotated_iou(tracker.output_box(ts, "rotated"), seq.ground_truth[i]))
    return float(np.mean(ious))


def test_criterion_6_bcd_ablation_direction():
    from simtrack.tracker import SolverSettings, TrackerConfig

    full_cfg = TrackerConfig()
    nobcd_cfg = TrackerConfig(solver=SolverSettings(max_iters=1))
    margins = []
    details = []
    for seed in (41, 42, 43):
        rng = np.random.default_rng(seed)
        scene = textured_image(300, 380, seed=seed)
        seq = synth_sequence(scene, _aggressive_script(rng), box=(164.0, 127.0, 52.0, 46.0))
        iou_full = _mean_iou(seq, full_cfg)
        iou_single = _mean_iou(seq, nobcd_cfg)
        margins.append(iou_full - iou_single)
        details.append(f"seed {seed}: {iou_full:.3f} vs {iou_single:.3f}")
    ok = all(m >= -1e-9 for m in margins) and max(margins) >= 0.02
    _report(
        6,
        ok,
        "; ".join(details) + f"; max margin {max(margins):.3f} (>=0.02, none negative)",
    )


# --- 8. throughput (informative) ----------------------------------------------


def test_criterion_8_throughput_informative():
    frame = textured_image(480, 640, seed=12, rgb=True)
    frames = [np.roll(frame, (2 * k, 3 * k), axis=(0, 1)) for k in range(12)]
    ts = tracker.init(frames[0], (280.0, 200.0, 80.0, 80.0))
    t0 = time.perf_counter()
    for f in frames[1:]:
        ts, _, _ = tracker.track(ts, f)
    fps = (len(frames) - 1) / (time.perf_counter() - t0)
    ok = fps >= 10.0
    status = "PASS" if ok else "WARN (informative only)"
    print(f"\nACCEPTANCE 8: {status} - {fps:.1f} fps single-threaded 640x480 (target >=10)")
    if not ok:
        import warnings

        warnings.warn(f"throughput below target: {fps:.1f} fps < 10 fps")


# --- 9. metrics oracle ----------------------------------------------------------


def test_criterion_9_metrics_oracle():
    # hand-computed 5-frame fixture, checked exactly
    gt = np.array([[0.0, 0.0, 10.0, 10.0]] * 5)
    pred = np.array(
        [
            [0.0, 0.0, 10.0, 10.0],
            [3.0, 4.0, 10.0, 10.0],
            [10.0, 0.0, 10.0, 10.0],
            [0.0, 30.0, 10.0, 10.0],
            [2.0, 0.0, 10.0, 10.0],
        ]
    )
    curves = evaluate(pred, gt)
    errors = np.array([0.0, 5.0, 10.0, 30.0, 2.0])
    ious = np.array([1.0, 42.0 / 158.0, 0.0, 0.0, 2.0 / 3.0])
    exp_precision = (errors[None, :] <= metrics.CENTER_THRESHOLDS[:, None]).mean(axis=1)
    exp_success = (
        (ious[None, :] > metrics.IOU_THRESHOLDS[:, None]) | (ious[None, :] >= 1.0)
    ).mean(axis=1)
    fixture_ok = (
        np.array_equal(curves.precision, exp_precision)
        and np.array_equal(curves.success, exp_success)
        and curves.auc == exp_success.mean()
    )

    from shapely.geometry import Polygon

    rng = np.random.default_rng(909)
    worst = 0.0
    for _ in range(100):
        def rand_quad():
            cx, cy = rng.uniform(10, 90, 2)
            w, h = rng.uniform(4, 50, 2)
            th = rng.uniform(-math.pi, math.pi)
            return state_quad(SimilarityState(cx, cy, th, 1.0), w, h)

        qa, qb = rand_quad(), rand_quad()
        pa, pb = Polygon(qa), Polygon(qb)
        inter = pa.intersection(pb).area
        union = pa.area + pb.area - inter
        oracle = inter / union if union > 0 else 0.0
        worst = max(worst, abs(rotated_iou(qa, qb) - oracle))
    ok = fixture_ok and worst <= 1e-6
    _report(
        9,
        ok,
        f"5-frame fixture exact: {fixture_ok}; rotated-IoU vs clipping oracle "
        f"max err {worst:.2e} (<=1e-6, 100 pairs)",
    )
