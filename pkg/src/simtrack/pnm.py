"""Binary PGM (P5) and PPM (P6) readers/writers, maxval 255.

Pixel values map to floats in [0, 1]; PPM files load as (H, W, 3),
PGM as (H, W).
"""

from __future__ import annotations

import os

import numpy as np


def _read_header_tokens(data: bytes, count: int):
    """Pull `count` whitespace-separated tokens after the magic,
    skipping '#' comments. Returns (tokens, offset_past_header)."""
    tokens = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise ValueError("truncated PNM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    # single whitespace byte separates header from raster
    return tokens, i + 1


def read_pnm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported PNM magic {magic!r} (binary P5/P6 only)")
    tokens, offset = _read_header_tokens(data[2:], 3)
    w, h, maxval = (int(t) for t in tokens)
    if maxval != 255:
        raise ValueError(f"only maxval 255 supported, got {maxval}")
    channels = 3 if magic == b"P6" else 1
    raster = np.frombuffer(data, dtype=np.uint8, count=h * w * channels, offset=2 + offset)
    if raster.size != h * w * channels:
        raise ValueError("truncated PNM raster")
    img = raster.astype(float).reshape(h, w, channels) / 255.0
    return img[:, :, 0] if channels == 1 else img


def write_pnm(path: str | os.PathLike, img: np.ndarray) -> None:
    a = np.asarray(img, dtype=float)
    if a.ndim == 3 and a.shape[2] == 1:
        a = a[:, :, 0]
    if a.ndim == 2:
        magic = b"P5"
    elif a.ndim == 3 and a.shape[2] == 3:
        magic = b"P6"
    else:
        raise ValueError(f"cannot encode array of shape {a.shape}")
    raster = np.clip(np.rint(a * 255.0), 0, 255).astype(np.uint8)
    h, w = a.shape[:2]
    with open(path, "wb") as fh:
        fh.write(magic + b"\n%d %d\n255\n" % (w, h))
        fh.write(raster.tobytes())
