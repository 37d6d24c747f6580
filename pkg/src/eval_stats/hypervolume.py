"""
Exact hypervolume of a front of confidence vectors.

Confidence is maximized and lies in [-1, 0], so with the default reference
point (-1, ..., -1) the hypervolume of any front lies in [0, 1].

The computation follows the WFG recursion: the hypervolume of a set is the
sum of the exclusive contributions of its points, and the exclusive
contribution of a point is its box minus the hypervolume of the remaining
points limited to that box.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..repair_engine import non_dominated_filter
from .statistics import StatisticsError

logger = logging.getLogger(__name__)


def _nondominated_min(points: np.ndarray) -> np.ndarray:
    # minimization variant; duplicates collapse to one point
    points = np.unique(points, axis=0)
    keep = non_dominated_filter(-points)
    return points[keep]


def _wfg(points: np.ndarray, ref: np.ndarray) -> float:
    n = len(points)
    if n == 0:
        return 0.0
    if n == 1:
        return float(np.prod(ref - points[0]))
    # sort on the last objective so later limit sets are small
    points = points[np.argsort(points[:, -1], kind='stable')[::-1]]
    total = 0.0
    for k in range(n):
        total += _exclusive(points, k, ref)
    return total


def _exclusive(points: np.ndarray, k: int, ref: np.ndarray) -> float:
    box = float(np.prod(ref - points[k]))
    rest = points[k + 1:]
    if len(rest) == 0:
        return box
    limited = np.maximum(rest, points[k])
    return box - _wfg(_nondominated_min(limited), ref)


def hypervolume(front: Sequence[Sequence[float]], reference: Optional[Sequence[float]] = None) -> float:
    """
    Hypervolume dominated by a front (maximization) above a reference point.

    Args:
        front: Confidence vectors (any dominated points are ignored)
        reference: Reference point, default (-1, ..., -1)

    Returns:
        Lebesgue measure of the union of boxes [reference, point]

    Raises:
        StatisticsError: A point lies below the reference point
    """
    points = np.asarray(front, dtype=float)
    if points.size == 0:
        return 0.0
    if points.ndim != 2:
        raise StatisticsError(f"front must be a 2-D array of points, got shape {points.shape}")
    k = points.shape[1]
    ref = np.full(k, -1.0) if reference is None else np.asarray(reference, dtype=float)
    if ref.shape != (k,):
        raise StatisticsError(f"reference point has {ref.size} coordinates, front has {k}")
    if np.any(points < ref):
        raise StatisticsError("front contains a point below the reference point")

    # minimization against -ref
    minimized = _nondominated_min(-points)
    return _wfg(minimized, -ref)
