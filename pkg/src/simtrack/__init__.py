"""Similarity-transformation visual tracking.

A correlation filter estimates translation, phase correlation in
log-polar coordinates estimates scale and rotation, and block
coordinate descent alternates the two over the full 4-DoF pose
(translation, rotation, uniform scale).
"""

from .geometry import SimilarityState
from .solver import ScoreBreakdown, SolverConfig
from .tracker import (
    SimilarityTracker,
    SolverSettings,
    TrackerConfig,
    TrackState,
    config_from_text,
    config_to_text,
    init,
    output_box,
    track,
)

__all__ = [
    "ScoreBreakdown",
    "SimilarityState",
    "SimilarityTracker",
    "SolverConfig",
    "SolverSettings",
    "TrackState",
    "TrackerConfig",
    "config_from_text",
    "config_to_text",
    "init",
    "output_box",
    "track",
]
