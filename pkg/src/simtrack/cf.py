"""Translation correlation filter: closed-form ridge training in the
Fourier domain (channel-independent), response over a larger search
window, and running model updates.

The model keeps dual-space weights alpha_hat and the feature spectrum
psi_hat at training dims D; at test time the filter is carried to the
search dims N > D by centered zero padding in the spatial domain, so the
response peak for a target displaced by (dy, dx) cells lands at index
(dy, dx) (circularly wrapped).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TranslationModel:
    alpha_hat: np.ndarray  # (Dh, Dw) complex dual weights
    psi_hat: np.ndarray  # (K, Dh, Dw) complex model feature spectrum
    y_hat: np.ndarray  # (Dh, Dw) complex target spectrum
    lambda1: float
    search_dims: tuple  # (Nh, Nw) cells, >= train dims
    # search-dims spectrum of the zero-padded filter, derived from
    # alpha_hat/psi_hat once per (re)train instead of per response
    h_search_hat: np.ndarray = None

    def __post_init__(self):
        if self.h_search_hat is None:
            object.__setattr__(self, "h_search_hat", _padded_filter_hat(self))

    @property
    def train_dims(self):
        return self.psi_hat.shape[-2:]

    @property
    def channels(self):
        return self.psi_hat.shape[0]


def gaussian_target(h: int, w: int, sigma: float) -> np.ndarray:
    """Circularly centered 2D Gaussian with peak 1 at index (0, 0);
    sigma is in cells."""
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    iy = np.arange(h, dtype=float)
    ix = np.arange(w, dtype=float)
    dy = np.minimum(iy, h - iy)
    dx = np.minimum(ix, w - ix)
    return np.exp(-(dy[:, None] ** 2 + dx[None, :] ** 2) / (2.0 * sigma**2))


def _spectra(feats: np.ndarray) -> np.ndarray:
    f = np.asarray(feats, dtype=float)
    if f.ndim != 3:
        raise ValueError(f"features must be (K, H, W), got shape {f.shape}")
    return np.fft.fft2(f, axes=(-2, -1))


def _alpha(y_hat: np.ndarray, phi_hat: np.ndarray, lambda1: float) -> np.ndarray:
    energy = np.sum(phi_hat.real**2 + phi_hat.imag**2, axis=0)
    return y_hat / (energy + lambda1)


def train_init(feats: np.ndarray, target: np.ndarray, lambda1: float = 1e-4, search_dims=None) -> TranslationModel:
    """Closed-form per-frequency ridge solution from one training sample."""
    if lambda1 <= 0.0:
        raise ValueError("lambda1 must be positive")
    phi_hat = _spectra(feats)
    y = np.asarray(target, dtype=float)
    if y.shape != phi_hat.shape[-2:]:
        raise ValueError(f"target dims {y.shape} do not match feature dims {phi_hat.shape[-2:]}")
    y_hat = np.fft.fft2(y)
    dims = tuple(y.shape) if search_dims is None else tuple(search_dims)
    if dims[0] < y.shape[0] or dims[1] < y.shape[1]:
        raise ValueError(f"search dims {dims} smaller than train dims {y.shape}")
    return TranslationModel(
        alpha_hat=_alpha(y_hat, phi_hat, lambda1),
        psi_hat=phi_hat,
        y_hat=y_hat,
        lambda1=lambda1,
        search_dims=dims,
    )


def filter_spatial(model: TranslationModel) -> np.ndarray:
    """Per-channel spatial filter h = F^-1(alpha_hat * conj(psi_hat))."""
    h_hat = model.alpha_hat[None] * np.conj(model.psi_hat)
    return np.fft.ifft2(h_hat, axes=(-2, -1)).real


def _padded_filter_hat(model: TranslationModel) -> np.ndarray:
    """Half-spectrum (rfft2) of the filter carried to the search dims by
    centered zero padding in the spatial domain."""
    nh, nw = model.search_dims
    dh, dw = model.train_dims
    h_sp = filter_spatial(model)
    padded = np.zeros((model.channels, nh, nw))
    oy, ox = (nh - dh) // 2, (nw - dw) // 2
    padded[:, oy : oy + dh, ox : ox + dw] = h_sp
    return np.fft.rfft2(padded, axes=(-2, -1))


def respond(model: TranslationModel, feats: np.ndarray) -> np.ndarray:
    """Translation response over the search window.

    The trained filter is zero-padded (centered) from train dims to the
    search dims in the spatial domain, transformed, multiplied with the
    test feature spectra and summed over channels; the real part of the
    inverse transform is the score per circular displacement.
    """
    z = np.asarray(feats, dtype=float)
    nh, nw = model.search_dims
    if z.ndim != 3 or z.shape[0] != model.channels or z.shape[-2:] != (nh, nw):
        raise ValueError(
            f"expected features ({model.channels}, {nh}, {nw}), got {z.shape}"
        )
    num = np.sum(model.h_search_hat * np.fft.rfft2(z, axes=(-2, -1)), axis=0)
    return np.fft.irfft2(num, s=(nh, nw))


def update_model(model: TranslationModel, feats: np.ndarray, lam_phi: float, lam_alpha: float) -> TranslationModel:
    """Running linear update of the feature spectrum and dual weights."""
    for name, rate in (("lam_phi", lam_phi), ("lam_alpha", lam_alpha)):
        if not 0.0 < rate <= 1.0:
            raise ValueError(f"{name} must lie in (0, 1], got {rate}")
    phi_hat = _spectra(feats)
    if phi_hat.shape != model.psi_hat.shape:
        raise ValueError(f"feature dims {phi_hat.shape} do not match model {model.psi_hat.shape}")
    alpha_new = _alpha(model.y_hat, phi_hat, model.lambda1)
    return TranslationModel(
        alpha_hat=(1.0 - lam_alpha) * model.alpha_hat + lam_alpha * alpha_new,
        psi_hat=(1.0 - lam_phi) * model.psi_hat + lam_phi * phi_hat,
        y_hat=model.y_hat,
        lambda1=model.lambda1,
        search_dims=model.search_dims,
    )
