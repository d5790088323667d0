"""Benchmark harness: sequence IO, synthetic ground-truth generation,
metric curves, and the command-line front end."""

from .metrics import MetricCurves, evaluate, rect_iou, rotated_iou
from .sequences import Sequence, load_sequence, synth_sequence
from .runner import run_sequences, track_sequence

__all__ = [
    "MetricCurves",
    "Sequence",
    "evaluate",
    "load_sequence",
    "rect_iou",
    "rotated_iou",
    "run_sequences",
    "synth_sequence",
    "track_sequence",
]
