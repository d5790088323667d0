"""Run the tracker over sequences and collect per-frame records."""

from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .. import pnm, tracker
from ..geometry import quad_aabb
from .sequences import Sequence


def _init_box(seq: Sequence):
    if seq.ground_truth is None:
        raise ValueError(f"sequence {seq.name!r} has no ground truth to initialize from")
    first = seq.ground_truth[0]
    if first.ndim == 2:  # quad -> enclosing axis-aligned box
        return quad_aabb(first)
    return tuple(first)


def track_sequence(
    seq: Sequence,
    config: tracker.TrackerConfig | None = None,
    axis_aligned: bool = False,
    dump_dir=None,
    init_box=None,
) -> dict:
    """Track one sequence initialized from its first ground-truth box.

    Returns a JSON-ready record: config snapshot plus per-frame pose
    (tx, ty, theta, s), score, sweep count, and the output box.
    """
    cfg = config or tracker.TrackerConfig()
    box = tuple(init_box) if init_box is not None else _init_box(seq)
    ts = tracker.init(seq.frame(0), box, cfg)
    mode = "axis_aligned" if axis_aligned else "rotated"

    frames = [_frame_record(ts, 0, score=None, iters=0, mode=mode)]
    for i in range(1, len(seq)):
        ts, _, breakdown = tracker.track(ts, seq.frame(i))
        frames.append(_frame_record(ts, i, score=breakdown.total, iters=ts.last_iters, mode=mode))
        if dump_dir is not None:
            _dump_annotated(seq.frame(i), tracker.output_box(ts, "rotated"), dump_dir, i)
    return {
        "sequence": seq.name,
        "mode": mode,
        "config": dataclasses.asdict(cfg),
        "frames": frames,
    }


def _frame_record(ts, index, score, iters, mode):
    st = ts.state
    rec = {
        "frame": index,
        "tx": st.tx,
        "ty": st.ty,
        "theta": st.theta,
        "s": st.s,
        "score": score,
        "iters": iters,
        "window_clipped": bool(ts.window_clipped),
    }
    if mode == "axis_aligned":
        rec["box"] = list(tracker.output_box(ts, "axis_aligned"))
    else:
        rec["box"] = [float(v) for v in tracker.output_box(ts, "rotated").ravel()]
    return rec


def result_boxes(record: dict) -> np.ndarray:
    """Per-frame boxes of a track_sequence record, as (N, 4) rects or
    (N, 4, 2) quads depending on the run's output mode."""
    boxes = np.asarray([f["box"] for f in record["frames"]], dtype=float)
    if record.get("mode") == "axis_aligned":
        return boxes
    return boxes.reshape(-1, 4, 2)


def run_sequences(seqs, config=None, axis_aligned=False, threads=None):
    """Track several sequences concurrently (one tracker instance per
    sequence). Thread count comes from the SIMTRACK_THREADS environment
    variable unless given explicitly."""
    if threads is None:
        threads = int(os.environ.get("SIMTRACK_THREADS", "0")) or min(4, len(seqs)) or 1
    if threads <= 1 or len(seqs) <= 1:
        return [track_sequence(s, config, axis_aligned) for s in seqs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(track_sequence, s, config, axis_aligned) for s in seqs]
        return [f.result() for f in futures]


def draw_quad(frame: np.ndarray, quad: np.ndarray, value=None) -> np.ndarray:
    """Rasterize the quad outline into a copy of the frame."""
    out = np.array(frame, dtype=float, copy=True)
    h, w = out.shape[:2]
    color = value
    if color is None:
        color = (1.0, 0.1, 0.1) if out.ndim == 3 else 1.0
    q = np.asarray(quad, dtype=float).reshape(4, 2)
    for i in range(4):
        a, b = q[i], q[(i + 1) % 4]
        n = max(2, int(np.ceil(np.abs(b - a).max() * 2)))
        xs = np.clip(np.rint(np.linspace(a[0], b[0], n)), 0, w - 1).astype(int)
        ys = np.clip(np.rint(np.linspace(a[1], b[1], n)), 0, h - 1).astype(int)
        out[ys, xs] = color
    return out


def _dump_annotated(frame, quad, dump_dir, index):
    path = Path(dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    ext = ".ppm" if np.asarray(frame).ndim == 3 else ".pgm"
    pnm.write_pnm(path / f"{index + 1:04d}{ext}", draw_quad(frame, quad))
