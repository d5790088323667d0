"""Frequency-domain building blocks.

Walks through the three facts every other module leans on: the DFT
round-trip is exact, energy is preserved (Parseval), and a circular
shift becomes a phase ramp, which is why the argmax of a correlation
map reads off a displacement.
"""

import numpy as np

from simtrack import spectral

rng = np.random.default_rng(0)
g = rng.standard_normal((32, 32))

back = spectral.idft2(spectral.dft2(g))
print(f"round-trip max error:      {np.abs(back - g).max():.2e}")

spatial = np.sum(g**2)
freq = np.sum(np.abs(spectral.dft2(g)) ** 2) / g.size
print(f"parseval mismatch:         {abs(spatial - freq) / spatial:.2e}")

dy, dx = 5, 11
shifted = np.roll(np.roll(g, dy, axis=0), dx, axis=1)
corr = spectral.idft2(
    spectral.hadamard(spectral.conj(spectral.dft2(g)), spectral.dft2(shifted))
)
peak = np.unravel_index(np.argmax(corr), corr.shape)
print(f"planted shift:             ({dy}, {dx})")
print(f"correlation argmax:        {peak}")

# the safe element-wise division used by the filter training
denom = np.abs(spectral.dft2(g)) ** 2
alpha = spectral.ewise_div_safe(spectral.dft2(g), denom, eps=1e-4)
print(f"safe division stays finite: {np.all(np.isfinite(alpha))}")
