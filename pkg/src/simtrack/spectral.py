"""2D DFT helpers and element-wise complex algebra.

Grids are plain 2D numpy arrays: real-valued spatial grids and their
complex spectra. The forward transform is unnormalised (DC term at
index (0, 0)); the inverse carries the 1/(H*W) factor. All functions
are pure and safe to call concurrently.
"""

from __future__ import annotations

import numpy as np

# matches the ridge regulariser that shares these denominators
DEFAULT_DIV_EPS = 1e-4

IMAG_ENERGY_TOL = 1e-6


def dft2(g: np.ndarray) -> np.ndarray:
    """Forward unnormalised 2D DFT of a real grid."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] < 1 or g.shape[1] < 1:
        raise ValueError(f"expected a 2D grid, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("input grid contains non-finite values")
    return np.fft.fft2(g)


def idft2(spectrum: np.ndarray) -> np.ndarray:
    """Inverse 2D DFT of the spectrum of a real signal.

    The imaginary residue must stay below 1e-6 of the signal energy
    (conjugate symmetry); anything larger raises ValueError.
    """
    spectrum = np.asarray(spectrum, dtype=complex)
    if spectrum.ndim != 2:
        raise ValueError(f"expected a 2D spectrum, got shape {spectrum.shape}")
    out = np.fft.ifft2(spectrum)
    imag_energy = float(np.sum(out.imag**2))
    total_energy = float(np.sum(np.abs(out) ** 2))
    if imag_energy > IMAG_ENERGY_TOL * total_energy:
        raise ValueError(
            "spectrum is not conjugate-symmetric: imaginary energy "
            f"{imag_energy:.3e} exceeds {IMAG_ENERGY_TOL:.0e} of {total_energy:.3e}"
        )
    return out.real


def hadamard(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Element-wise product of two equally shaped grids."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def conj(a: np.ndarray) -> np.ndarray:
    """Element-wise complex conjugate."""
    return np.conj(np.asarray(a))


def ewise_div_safe(a: np.ndarray, b: np.ndarray, eps: float = DEFAULT_DIV_EPS) -> np.ndarray:
    """Element-wise a / (b + eps); eps keeps near-zero denominators sane."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    return a / (b + eps)
