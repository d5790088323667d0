"""Shared helpers for the demo scripts: a reproducible textured test
scene and a renderer that moves a target through it with exact poses."""

import numpy as np
from scipy import ndimage

from simtrack.geometry import SimilarityState, rotation
from simtrack.imgproc import warp_similarity


def textured_scene(h=240, w=320, seed=0, rgb=False):
    rng = np.random.default_rng(seed)
    img = np.zeros((h, w))
    for sigma, weight in [(1, 0.5), (3, 0.9), (8, 1.3), (20, 1.7)]:
        img += weight * ndimage.gaussian_filter(rng.standard_normal((h, w)), sigma)
    yy, xx = np.mgrid[0:h, 0:w]
    img += 0.6 * np.sin(xx / 7.0) * np.cos(yy / 11.0)
    disc = (yy - 0.4 * h) ** 2 + (xx - 0.55 * w) ** 2 < (0.15 * min(h, w)) ** 2
    img[disc] += 1.2
    img[int(0.65 * h) : int(0.75 * h), int(0.2 * w) : int(0.8 * w)] += 0.8
    img -= img.min()
    img /= img.max()
    if not rgb:
        return img
    shift = ndimage.gaussian_filter(rng.standard_normal((h, w)), 12)
    shift = 0.25 * shift / np.abs(shift).max()
    return np.stack([np.clip(img + shift, 0, 1), img, np.clip(img - shift, 0, 1)], axis=2)


def render_pose(seed_img, pivot, cx, cy, theta=0.0, s=1.0):
    """Frame showing the seed scene carried so that the point `pivot`
    lands at (cx, cy) rotated by theta and scaled by s."""
    h, w = seed_img.shape[:2]
    pc = np.array([(w - 1) / 2.0, (h - 1) / 2.0])
    t = np.asarray(pivot) + (1.0 / s) * rotation(-theta) @ (pc - np.array([cx, cy]))
    return warp_similarity(seed_img, SimilarityState(t[0], t[1], -theta, 1.0 / s), h, w)
