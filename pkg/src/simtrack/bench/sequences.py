"""Sequence ingestion and synthetic-sequence generation.

A sequence is an ordered list of frames plus per-frame ground truth:
axis-aligned (x, y, w, h) rows or 8-number corner rows, both using the
1-based pixel convention on disk (converted to 0-based in memory).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import pnm
from ..geometry import SimilarityState, rotation, state_quad
from ..imgproc import validate_frame, warp_similarity

_FRAME_EXTS = (".ppm", ".pgm", ".png", ".jpg", ".jpeg", ".bmp")
_GT_NAMES = ("groundtruth_rect.txt", "groundtruth.txt")


@dataclass
class Sequence:
    name: str
    frames: list  # file paths or in-memory arrays
    ground_truth: np.ndarray | None  # (N, 4) rects or (N, 4, 2) quads

    def __len__(self):
        return len(self.frames)

    @property
    def has_quads(self) -> bool:
        return self.ground_truth is not None and self.ground_truth.ndim == 3

    def frame(self, i: int) -> np.ndarray:
        f = self.frames[i]
        if isinstance(f, np.ndarray):
            return f
        return load_image(f)


def load_image(path) -> np.ndarray:
    """Load one frame as float [0, 1]; PGM/PPM natively, other formats
    through pillow when available."""
    p = Path(path)
    if p.suffix.lower() in (".pgm", ".ppm"):
        return pnm.read_pnm(p)
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover - depends on extras
        raise ValueError(
            f"{p.suffix} frames need pillow (install simtrack[images]); "
            "PGM/PPM are supported natively"
        ) from exc
    with Image.open(p) as img:
        arr = np.asarray(img.convert("RGB" if img.mode not in ("L", "I;16") else "L"))
    return validate_frame(arr.astype(float) / 255.0)


def _numeric_key(path: Path):
    digits = re.findall(r"\d+", path.stem)
    return (int(digits[-1]) if digits else 0, path.name)


def parse_ground_truth(text: str, source: str = "<string>") -> np.ndarray:
    """Parse rect or corner rows, tolerating comma/tab/space separators;
    converts the 1-based file convention to 0-based coordinates."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p for p in re.split(r"[,\s]+", line) if p]
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: malformed row {raw!r}") from exc
        if len(values) not in (4, 8):
            raise ValueError(
         f"{source}:{lineno}: expected 4 or 8 numbers per row, got {len(values)}"
            )
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ValueError(f"{source}:{lineno}: inconsistent row width")
        rows.append(values)
    if not rows:
        raise ValueError(f"{source}: no ground-truth rows found")
    arr = np.asarray(rows, dtype=float)
    if width == 4:
        arr[:, :2] -= 1.0  # x, y shift; widths stay
        return arr
    return arr.reshape(-1, 4, 2) - 1.0


def load_sequence(directory) -> Sequence:
    """Read a benchmark sequence directory: numbered frames (optionally
    under img/) plus a ground-truth file."""
    root = Path(directory)
    if not root.is_dir():
        raise ValueError(f"sequence directory not found: {root}")
    frame_dir = root / "img" if (root / "img").is_dir() else root
    frames = sorted(
        (p for p in frame_dir.iterdir() if p.suffix.lower() in _FRAME_EXTS),
        key=_numeric_key,
    )
    if not frames:
        raise ValueError(f"no frames found under {frame_dir}")
    gt = None
    for name in _GT_NAMES:
        gt_path = root / name
        if gt_path.is_file():
            gt = parse_ground_truth(gt_path.read_text(), source=str(gt_path))
            break
    if gt is not None and len(gt) != len(frames):
        raise ValueError(
            f"{root}: {len(frames)} frames but {len(gt)} ground-truth rows"
        )
    return Sequence(name=root.name, frames=list(frames), ground_truth=gt)


def synth_sequence(
    seed_image: np.ndarray,
    motion_script: np.ndarray,
    box,
    name: str = "synthetic",
    out_dir=None,
) -> Sequence:
    """Render a sequence with exact ground truth by similarity-warping a
    seed scene.

    motion_script rows are per-frame deltas (dtx, dty, dtheta, ds):
    frame k's pose composes row k onto the pose of frame k-1 (frame 0
    composes onto the identity, so an all-zero script reproduces the
    seed n times). Ground truth is the initial box carried through each
    pose, emitted as corner quads.
    """
    seed = validate_frame(seed_image)
    script = np.asarray(motion_script, dtype=float)
    if script.ndim != 2 or script.shape[1] != 4:
        raise ValueError(f"motion script must be (n, 4), got {script.shape}")
    x, y, w, h = (float(v) for v in box)
    c0 = np.array([x + w / 2.0, y + h / 2.0])
    fh, fw = seed.shape[:2]
    pc = np.array([(fw - 1) / 2.0, (fh - 1) / 2.0])

    frames, quads = [], []
    cx, cy, theta, s = c0[0], c0[1], 0.0, 1.0
    for k, (dtx, dty, dth, ds) in enumerate(script):
        cx, cy, theta, s = cx + dtx, cy + dty, theta + dth, s * ds
        if not 0.2 <= s <= 5.0:
            raise ValueError(f"frame {k}: cumulative scale {s:.3f} not renderable")
        # frame = scene carried by the pose; render via the inverse map
        t = c0 + (1.0 / s) * rotation(-theta) @ (pc - np.array([cx, cy]))
        frames.append(
            warp_similarity(seed, SimilarityState(t[0], t[1], -theta, 1.0 / s), fh, fw)
        )
        quads.append(state_quad(SimilarityState(cx, cy, theta, s), w, h))
    gt = np.asarray(quads)

    if out_dir is None:
        return Sequence(name=name, frames=frames, ground_truth=gt)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = ".ppm" if seed.ndim == 3 else ".pgm"
    paths = []
    for k, frame in enumerate(frames):
        path = out / f"{k + 1:04d}{ext}"
        pnm.write_pnm(path, frame)
        paths.append(path)
    lines = [",".join(f"{v:.3f}" for v in (quad + 1.0).ravel()) for quad in gt]
    (out / "groundtruth.txt").write_text("\n".join(lines) + "\n")
    return Sequence(name=name, frames=paths, ground_truth=gt)
