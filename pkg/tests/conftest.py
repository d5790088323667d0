import numpy as np
import pytest
from scipy import ndimage


def textured_image(h=200, w=200, seed=0, rgb=False):
    """Reproducible natural-looking test image: multi-scale filtered
    noise plus a few hard structures, normalized to [0, 1]."""
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
    rgb_img = np.stack([np.clip(img + shift, 0, 1), img, np.clip(img - shift, 0, 1)], axis=2)
    return rgb_img


@pytest.fixture
def natural_gray():
    return textured_image(200, 200, seed=7)


@pytest.fixture
def natural_rgb():
    return textured_image(200, 200, seed=7, rgb=True)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
