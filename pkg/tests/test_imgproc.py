import math

import numpy as np
import pytest

from simtrack import imgproc
from simtrack.geometry import SimilarityState, rotation


def test_identity_warp_is_exact_crop(natural_gray):
    # centre chosen so the 31x21 output grid lands on integer pixels
    out_h, out_w = 31, 21
    y0, x0 = 40, 60
    state = SimilarityState(x0 + (out_w - 1) / 2.0, y0 + (out_h - 1) / 2.0, 0.0, 1.0)
    patch = imgproc.warp_similarity(natural_gray, state, out_h, out_w)
    np.testing.assert_allclose(patch, natural_gray[y0 : y0 + out_h, x0 : x0 + out_w], atol=1e-12)


def test_quarter_turn_hand_oracle():
    rng = np.random.default_rng(3)
    frame = rng.random((7, 7))
    cx = cy = 3.0
    state = SimilarityState(cx, cy, math.pi / 2.0, 1.0)
    patch = imgproc.warp_similarity(frame, state, 3, 3)
    # inverse map: output (i, j) reads frame at x = cx - (i-1), y = cy + (j-1)
    oracle = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            oracle[i, j] = frame[int(cy + j - 1), int(cx - (i - 1))]
    np.testing.assert_allclose(patch, oracle, atol=1e-12)


def test_constant_frame_gives_constant_patch():
    frame = np.full((40, 50), 0.37)
    state = SimilarityState(25.0, 17.0, 0.9, 1.7)
    patch = imgproc.warp_similarity(frame, state, 16, 12)
    np.testing.assert_allclose(patch, 0.37, atol=1e-12)


def test_warp_rejects_bad_scale(natural_gray):
    with pytest.raises(ValueError):
        imgproc.warp_similarity(natural_gray, SimilarityState(10, 10, 0.0, 1.0), 1, 5)


def test_warp_output_stays_in_unit_range(natural_gray):
    state = SimilarityState(5.0, 190.0, 2.1, 3.0)  # heavy border replication
    patch = imgproc.warp_similarity(natural_gray, state, 33, 33)
    assert patch.min() >= 0.0 and patch.max() <= 1.0


def test_warp_composition_group_property(natural_gray):
    """Warping a pre-warped patch equals warping once at the composed
    similarity (interior pixels)."""
    a = SimilarityState(100.0, 95.0, 0.35, 1.15)
    h1 = w1 = 121
    inner = imgproc.warp_similarity(natural_gray, a, h1, w1)

    b = SimilarityState(60.0, 58.0, -0.2, 0.8)
    h2 = w2 = 41
    twice = imgproc.warp_similarity(inner, b, h2, w2)

    c1 = np.array([(w1 - 1) / 2.0, (h1 - 1) / 2.0])
    t = np.array([a.tx, a.ty]) + a.s * rotation(a.theta) @ (np.array([b.tx, b.ty]) - c1)
    composed = SimilarityState(t[0], t[1], a.theta + b.theta, a.s * b.s)
    once = imgproc.warp_similarity(natural_gray, composed, h2, w2)

    interior = (slice(4, -4), slice(4, -4))
    err = np.abs(twice[interior] - once[interior]).mean()
    assert err <= 2.0 / 255.0


def test_hann_window_boundary_and_center():
    w = imgproc.hann_window(9, 13)
    assert w[0, 0] == pytest.approx(0.0)
    assert w[4, 6] == pytest.approx(1.0)  # odd dims peak exactly at centre
    assert np.all(w >= 0.0) and np.all(w <= 1.0)


def test_hann_window_matches_1d_formula():
    w = imgproc.hann_window(4, 4)
    n = np.arange(4)
    hann1d = 0.5 * (1.0 - np.cos(2.0 * np.pi * n / 3.0))
    np.testing.assert_allclose(w, np.outer(hann1d, hann1d), atol=1e-12)


def test_resize_same_size_is_identity(natural_gray):
    patch = natural_gray[:20, :30]
    np.testing.assert_allclose(imgproc.resize_bilinear(patch, 20, 30), patch, atol=1e-12)


def test_resize_constant_stays_constant():
    patch = np.full((5, 5), 0.61)
    np.testing.assert_allclose(imgproc.resize_bilinear(patch, 9, 4), 0.61, atol=1e-12)


def test_resize_2x2_to_4x4_closed_form():
    patch = np.array([[0.0, 1.0], [0.5, 0.25]])
    out = imgproc.resize_bilinear(patch, 4, 4)
    # corner-aligned sampling at fractions 0, 1/3, 2/3, 1 of the source
    f = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
    oracle = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            top = patch[0, 0] * (1 - f[j]) + patch[0, 1] * f[j]
            bot = patch[1, 0] * (1 - f[j]) + patch[1, 1] * f[j]
            oracle[i, j] = top * (1 - f[i]) + bot * f[i]
    np.testing.assert_allclose(out, oracle, atol=1e-12)


def test_validate_frame_rejects_bad_values():
    with pytest.raises(ValueError):
        imgproc.validate_frame(np.full((4, 4), 1.5))
    with pytest.raises(ValueError):
        imgproc.validate_frame(np.ones((4, 4, 2)))
