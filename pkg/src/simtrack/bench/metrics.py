"""Tracking metrics: precision / success / alignment-error curves and
rotated-box IoU via convex polygon clipping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import rect_to_quad

CENTER_THRESHOLDS = np.arange(0.0, 51.0)  # px
IOU_THRESHOLDS = np.round(np.arange(0.0, 1.0001, 0.05), 10)
ALIGNMENT_THRESHOLDS = np.arange(0.0, 51.0)  # px


@dataclass(frozen=True)
class MetricCurves:
    precision: np.ndarray  # fraction with center error <= t, t = 0..50 px
    success: np.ndarray  # fraction with IoU > t, t = 0..1 step 0.05
    alignment: np.ndarray  # fraction with mean corner error <= t
    auc: float  # mean of the success curve

    def as_dict(self) -> dict:
        return {
            "center_thresholds": CENTER_THRESHOLDS.tolist(),
            "precision": self.precision.tolist(),
            "iou_thresholds": IOU_THRESHOLDS.tolist(),
            "success": self.success.tolist(),
            "alignment_thresholds": ALIGNMENT_THRESHOLDS.tolist(),
            "alignment": self.alignment.tolist(),
            "auc": self.auc,
        }


def rect_iou(a, b) -> float:
    """IoU of two axis-aligned (x, y, w, h) rectangles."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    union = aw * ah + bw * bh - inter
    return inter / union if union > 0 else 0.0


def polygon_area(poly: np.ndarray) -> float:
    """Absolute shoelace area of an (N, 2) polygon."""
    p = np.asarray(poly, dtype=float)
    if len(p) < 3:
        return 0.0
    x, y = p[:, 0], p[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _signed_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def clip_convex(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clipping of a polygon against a convex clip
    polygon; returns the (possibly empty) intersection polygon."""
    clip = np.asarray(clip, dtype=float)
    if _signed_area(clip) < 0:
        clip = clip[::-1]
    out = [tuple(p) for p in np.asarray(subject, dtype=float)]
    for i in range(len(clip)):
        if not out:
            return np.empty((0, 2))
        ax, ay = clip[i]
        bx, by = clip[(i + 1) % len(clip)]
        ex, ey = bx - ax, by - ay

        def side(p):
            return ex * (p[1] - ay) - ey * (p[0] - ax)

        inp = out
        out = []
        prev = inp[-1]
        prev_side = side(prev)
        for cur in inp:
            cur_side = side(cur)
            if cur_side >= 0:
                if prev_side < 0:
                    t = prev_side / (prev_side - cur_side)
                    out.append(
                        (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
                    )
                out.append(cur)
            elif prev_side >= 0:
                t = prev_side / (prev_side - cur_side)
                out.append(
                    (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
                )
            prev, prev_side = cur, cur_side
    return np.asarray(out)


def rotated_iou(quad_a: np.ndarray, quad_b: np.ndarray) -> float:
    """IoU of two convex quads via polygon clipping."""
    qa = np.asarray(quad_a, dtype=float).reshape(4, 2)
    qb = np.asarray(quad_b, dtype=float).reshape(4, 2)
    inter = polygon_area(clip_convex(qa, qb))
    union = polygon_area(qa) + polygon_area(qb) - inter
    return inter / union if union > 0 else 0.0


def _as_quads(boxes: np.ndarray):
    """(N, 4) rects or (N, 4, 2)/(N, 8) quads -> (quads, was_rect)."""
    arr = np.asarray(boxes, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 4:
        return np.stack([rect_to_quad(*row) for row in arr]), True
    if arr.ndim == 2 and arr.shape[1] == 8:
        return arr.reshape(-1, 4, 2), False
    if arr.ndim == 3 and arr.shape[1:] == (4, 2):
        return arr, False
    raise ValueError(f"boxes must be (N,4) rects or (N,4,2) quads, got {arr.shape}")


def evaluate(predicted, ground_truth) -> MetricCurves:
    """Score per-frame predictions against ground truth.

    Both arguments take (N, 4) rects or (N, 4, 2) quads (a Sequence's
    ground_truth works directly). Rotated-polygon IoU is used as soon as
    either side carries quads; plain rectangle IoU otherwise. Alignment
    compares corners pairwise in the given order.
    """
    gt = getattr(ground_truth, "ground_truth", ground_truth)
    if gt is None:
        raise ValueError("sequence has no ground truth to evaluate against")
    pred_q, pred_rect = _as_quads(predicted)
    gt_q, gt_rect = _as_quads(gt)
    if len(pred_q) != len(gt_q):
        raise ValueError(f"{len(pred_q)} predictions vs {len(gt_q)} ground-truth rows")

    n = len(pred_q)
    center_err = np.linalg.norm(pred_q.mean(axis=1) - gt_q.mean(axis=1), axis=1)
    corner_err = np.linalg.norm(pred_q - gt_q, axis=2).mean(axis=1)
    if pred_rect and gt_rect:
        ious = np.array(
            [rect_iou(np.asarray(predicted)[i], np.asarray(gt)[i]) for i in range(n)]
        )
    else:
        ious = np.array([rotated_iou(pred_q[i], gt_q[i]) for i in range(n)])

    precision = (center_err[None, :] <= CENTER_THRESHOLDS[:, None]).mean(axis=1)
    # strictly-greater per threshold; a perfect overlap still counts at
    # the top threshold (otherwise exact tracking could never reach 1.0)
    hits = (ious[None, :] > IOU_THRESHOLDS[:, None]) | (ious[None, :] >= 1.0 - 1e-12)
    success = hits.mean(axis=1)
    alignment = (corner_err[None, :] <= ALIGNMENT_THRESHOLDS[:, None]).mean(axis=1)
    return MetricCurves(
        precision=precision,
        success=success,
        alignment=alignment,
        auc=float(success.mean()),
    )
