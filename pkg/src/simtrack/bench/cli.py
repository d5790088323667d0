"""Command-line front end.

    simtrack track --seq DIR --out FILE [--config FILE] [--axis-aligned]
                   [--dump-frames DIR]
    simtrack eval  --results FILE --seq DIR --out FILE [--csv FILE]
    simtrack synth --seed IMG --script FILE --out DIR [--box X,Y,W,H]

Exit codes: 0 on success, 2 on input/parse errors, 3 on tracking
contract violations.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .. import tracker
from .metrics import evaluate
from .runner import result_boxes, track_sequence
from .sequences import load_image, load_sequence, synth_sequence

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TRACKING = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simtrack", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_track = sub.add_parser("track", help="run the tracker over a sequence directory")
    p_track.add_argument("--seq", required=True, help="sequence directory")
    p_track.add_argument("--out", required=True, help="output JSON file")
    p_track.add_argument("--config", help="plain-text key=value tracker config")
    p_track.add_argument("--axis-aligned", action="store_true", help="ignore rotation in output boxes")
    p_track.add_argument("--dump-frames", metavar="DIR", help="write annotated frames here")

    p_eval = sub.add_parser("eval", help="score tracking results against ground truth")
    p_eval.add_argument("--results", required=True, help="JSON produced by 'track'")
    p_eval.add_argument("--seq", required=True, help="sequence directory with ground truth")
    p_eval.add_argument("--out", required=True, help="output JSON file")
    p_eval.add_argument("--csv", help="also write the curves as CSV")

    p_synth = sub.add_parser("synth", help="render a synthetic sequence with exact ground truth")
    p_synth.add_argument("--seed", required=True, help="seed image (PGM/PPM, or PNG/JPEG with pillow)")
    p_synth.add_argument("--script", required=True, help="per-frame motion file: dtx dty dtheta_deg dscale")
    p_synth.add_argument("--out", required=True, help="output sequence directory")
    p_synth.add_argument("--box", help="initial target box X,Y,W,H (default: centered third)")
    return parser


def _load_config(path) -> tracker.TrackerConfig:
    if path is None:
        return tracker.TrackerConfig()
    return tracker.config_from_text(Path(path).read_text())


def _cmd_track(args) -> int:
    try:
        seq = load_sequence(args.seq)
        cfg = _load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"simtrack track: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        record = track_sequence(
            seq, cfg, axis_aligned=args.axis_aligned, dump_dir=args.dump_frames
        )
    except (ValueError, RuntimeError) as exc:
        print(f"simtrack track: tracking failed: {exc}", file=sys.stderr)
        return EXIT_TRACKING
    Path(args.out).write_text(json.dumps(record, indent=1))
    return EXIT_OK


def _cmd_eval(args) -> int:
    try:
        record = json.loads(Path(args.results).read_text())
        seq = load_sequence(args.seq)
        curves = evaluate(result_boxes(record), seq)
    except (OSError, ValueError, KeyError) as exc:
        print(f"simtrack eval: {exc}", file=sys.stderr)
        return EXIT_PARSE
    payload = {"sequence": seq.name, "frames": len(seq), **curves.as_dict()}
    Path(args.out).write_text(json.dumps(payload, indent=1))
    if args.csv:
        _write_csv(Path(args.csv), curves)
    return EXIT_OK


def _write_csv(path: Path, curves) -> None:
    d = curves.as_dict()
    lines = ["metric,threshold,value"]
    for metric, tkey in (
        ("precision", "center_thresholds"),
        ("success", "iou_thresholds"),
        ("alignment", "alignment_thresholds"),
    ):
        for t, v in zip(d[tkey], d[metric]):
            lines.append(f"{metric},{t:g},{v:.6f}")
    lines.append(f"auc,,{d['auc']:.6f}")
    path.write_text("\n".join(lines) + "\n")


def _cmd_synth(args) -> int:
    try:
        seed = load_image(args.seed)
        script = _read_motion_script(Path(args.script))
        if args.box:
            box = tuple(float(v) for v in args.box.split(","))
            if len(box) != 4:
                raise ValueError("--box needs exactly X,Y,W,H")
        else:
            h, w = seed.shape[:2]
            side_w, side_h = w / 3.0, h / 3.0
            box = ((w - side_w) / 2.0, (h - side_h) / 2.0, side_w, side_h)
        synth_sequence(seed, script, box, name=Path(args.out).name, out_dir=args.out)
    except (OSError, ValueError) as exc:
        print(f"simtrack synth: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def _read_motion_script(path: Path) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p for p in line.replace(",", " ").split() if p]
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 values, got {len(parts)}")
        try:
            dtx, dty, dth_deg, ds = (float(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed row {raw!r}") from exc
        rows.append((dtx, dty, math.radians(dth_deg), ds))
    if not rows:
        raise ValueError(f"{path}: empty motion script")
    return np.asarray(rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "track":
        return _cmd_track(args)
    if args.command == "eval":
        return _cmd_eval(args)
    return _cmd_synth(args)


if __name__ == "__main__":
    sys.exit(main())
