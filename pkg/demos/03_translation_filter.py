"""The translation correlation filter in isolation.

Trains the closed-form ridge filter on one patch, then reads target
displacements straight off the response map over a larger search
window, including sub-cell refinement of the peak.
"""

import numpy as np

from _scenes import textured_scene
from simtrack import cf
from simtrack.features import apply_cosine_window, extract_hog
from simtrack.geometry import SimilarityState
from simtrack.imgproc import hann_window, warp_similarity
from simtrack.response import refined_peak_shift

scene = textured_scene(260, 260, seed=9)
cell = 4
c = 129.5

train_px, search_px = 96, 144  # 24 and 36 cells
x = warp_similarity(scene, SimilarityState(c, c), train_px, train_px)
feats = apply_cosine_window(extract_hog(x, cell), hann_window(24, 24))
target = cf.gaussian_target(24, 24, sigma=1.5)
model = cf.train_init(feats, target, lambda1=1e-4, search_dims=(36, 36))
print(f"model: {model.channels} channels, train {model.train_dims}, search {model.search_dims}")

win = hann_window(36, 36)
print("\n window moved by      response peak says target at")
for dx_px, dy_px in [(0, 0), (8, 0), (-12, 4), (6, -10), (2.5, 1.5)]:
    # moving the sampling window by -d makes the target appear at +d
    st = SimilarityState(c - dx_px, c - dy_px)
    z = apply_cosine_window(extract_hog(warp_similarity(scene, st, search_px, search_px), cell), win)
    ry, rx = refined_peak_shift(cf.respond(model, z))
    print(f"  ({dx_px:+6.1f},{dy_px:+6.1f}) px     ({rx * cell:+6.2f},{ry * cell:+6.2f}) px")

# model adaptation: updates pull the model towards new appearance
x2 = warp_similarity(scene, SimilarityState(c + 1.0, c), train_px, train_px)
feats2 = apply_cosine_window(extract_hog(x2, cell), hann_window(24, 24))
updated = cf.update_model(model, feats2, lam_phi=0.01, lam_alpha=0.01)
gap = np.abs(updated.psi_hat - model.psi_hat).sum() / np.abs(model.psi_hat).sum()
print(f"\none update at rate 0.01 moved the feature model by {gap * 100:.2f}%")
