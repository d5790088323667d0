"""Similarity warps and the log-polar change of variables.

Rotating a patch moves its log-polar image along the angular (row)
axis; scaling moves it along the log-radial (column) axis. That is the
whole trick behind the scale/rotation estimator: both become plain
translations that one phase correlation can read off.
"""

import math
from pathlib import Path

import numpy as np

from _scenes import textured_scene
from simtrack import pnm
from simtrack.geometry import SimilarityState
from simtrack.imgproc import warp_similarity
from simtrack.logpolar import LogPolarConfig, to_log_polar

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

scene = textured_scene(260, 260, seed=7)
n = 144
c = 129.5
cfg = LogPolarConfig(out_h=n, out_w=n, patch_h=n, patch_w=n)

patch = warp_similarity(scene, SimilarityState(c, c), n, n)
lp0 = to_log_polar(patch, cfg)

theta = math.radians(30.0)
rotated = warp_similarity(scene, SimilarityState(c, c, -theta, 1.0), n, n)
lp_rot = to_log_polar(rotated, cfg)
expected_rows = 30.0 / 360.0 * n
best = min(range(n), key=lambda k: np.abs(np.roll(lp0, k, axis=0) - lp_rot).mean())
print(f"30 deg rotation: expected row shift {expected_rows:.1f}, best match at {best}")

s = 1.25
scaled = warp_similarity(scene, SimilarityState(c, c, 0.0, 1.0 / s), n, n)
lp_scaled = to_log_polar(scaled, cfg)
expected_cols = math.log(s) / cfg.log_base
best = min(range(-20, 21), key=lambda k: np.abs(np.roll(lp0, k, axis=1)[:, 6:-14] - lp_scaled[:, 6:-14]).mean())
print(f"x{s} scaling: expected column shift {expected_cols:.1f}, best match at {best}")

pnm.write_pnm(out_dir / "patch.pgm", patch)
pnm.write_pnm(out_dir / "patch_logpolar.pgm", lp0)
pnm.write_pnm(out_dir / "patch_rot30.pgm", rotated)
pnm.write_pnm(out_dir / "patch_rot30_logpolar.pgm", lp_rot)
print(f"wrote visualizations to {out_dir}/")
