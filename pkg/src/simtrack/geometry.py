"""Planar similarity transforms and the 4-DoF tracker state.

Coordinate conventions used throughout the package:

* x = column index, y = row index; pixel (i, j) sits at (x=j, y=i).
* A positive angle rotates the +x axis towards +y. With y pointing down
  (image convention) this appears clockwise on screen.
* A state (tx, ty, theta, s) maps template-centred coordinates d to frame
  coordinates via  p = (tx, ty) + s * R(theta) @ d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def wrap_angle(theta: float) -> float:
    """Wrap an angle to the interval (-pi, pi]."""
    t = math.fmod(theta + math.pi, 2.0 * math.pi)
    if t <= 0.0:
        t += 2.0 * math.pi
    return t - math.pi


@dataclass(frozen=True)
class SimilarityState:
    """Target pose: centre (tx, ty) in frame pixels, rotation theta in
    radians, scale s relative to the initial template (s > 0)."""

    tx: float
    ty: float
    theta: float = 0.0
    s: float = 1.0

    def __post_init__(self):
        if not (self.s > 0.0):
            raise ValueError(f"scale must be positive, got {self.s}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    def as_tuple(self):
        return (self.tx, self.ty, self.theta, self.s)


def rotation(theta: float) -> np.ndarray:
    """2x2 rotation matrix, +x towards +y for positive angles."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def state_matrix(state: SimilarityState) -> np.ndarray:
    """3x3 homogeneous matrix of the similarity p = t + s*R(theta)*d."""
    m = np.eye(3)
    m[:2, :2] = state.s * rotation(state.theta)
    m[:2, 2] = (state.tx, state.ty)
    return m


def matrix_state(m: np.ndarray) -> SimilarityState:
    """Inverse of state_matrix. Raises if m is not a similarity."""
    a, b = m[0, 0], m[1, 0]
    s = math.hypot(a, b)
    if s <= 0.0:
        raise ValueError("degenerate similarity matrix")
    r = m[:2, :2] / s
    if not np.allclose(r @ r.T, np.eye(2), atol=1e-8):
        raise ValueError("matrix is not a similarity transform")
    return SimilarityState(float(m[0, 2]), float(m[1, 2]), math.atan2(b, a), s)


def apply_state(state: SimilarityState, points: np.ndarray) -> np.ndarray:
    """Map (N, 2) template-centred (x, y) points into frame coordinates."""
    pts = np.asarray(points, dtype=float)
    r = state.s * rotation(state.theta)
    return pts @ r.T + np.array([state.tx, state.ty])


def rect_to_quad(x: float, y: float, w: float, h: float) -> np.ndarray:
    """Axis-aligned rect -> 4x2 corners (clockwise from top-left)."""
    return np.array(
        [[x, y], [x + w, y], [x + w, y + h], [x, y + h]], dtype=float
    )


def quad_center(quad: np.ndarray) -> np.ndarray:
    return np.asarray(quad, dtype=float).reshape(4, 2).mean(axis=0)


def quad_aabb(quad: np.ndarray):
    """Bounding (x, y, w, h) of a 4x2 quad."""
    q = np.asarray(quad, dtype=float).reshape(4, 2)
    x0, y0 = q.min(axis=0)
    x1, y1 = q.max(axis=0)
    return float(x0), float(y0), float(x1 - x0), float(y1 - y0)


def state_quad(state: SimilarityState, box_w: float, box_h: float) -> np.ndarray:
    """Corners of the template rectangle (box_w x box_h) carried to the
    pose described by state."""
    half = rect_to_quad(-box_w / 2.0, -box_h / 2.0, box_w, box_h)
    return apply_state(state, half)
