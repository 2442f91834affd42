"""Hausdorff distance between finite point sets, plus a thresholded check.

The search loop rarely needs the distance itself; it needs to know whether a
candidate beats the incumbent.  `hausdorff_below` answers that question with
early termination and is the hot path; `hausdorff` is the exact quadratic
computation used once an improvement is confirmed (and as the oracle in
tests).
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist


class EmptySetError(ValueError):
    """Hausdorff distance is undefined for an empty point set."""


def _check(points: np.ndarray, name: str) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        pts = pts.reshape(-1, 2)
    if len(pts) == 0:
        raise EmptySetError(f"{name} is empty")
    return pts


def hausdorff(x: np.ndarray, y: np.ndarray) -> float:
    """Exact symmetric Hausdorff distance (full quadratic computation)."""
    xs = _check(x, "x")
    ys = _check(y, "y")
    d = cdist(xs, ys)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _directed_below(xs: np.ndarray, ys: np.ndarray, alpha: float,
                    chunk: int = 32) -> bool:
    """Whether every point of xs has a neighbor in ys closer than alpha.

    Rows are processed in chunks; as soon as one point has no neighbor
    within alpha the answer is known and the remaining work is skipped.
    """
    for i in range(0, len(xs), chunk):
        d = cdist(xs[i:i + chunk], ys)
        if (d.min(axis=1) >= alpha).any():
            return False
    return True


def hausdorff_below(x: np.ndarray, y: np.ndarray, alpha: float) -> bool:
    """True iff hausdorff(x, y) < alpha, computed with early exits.

    Never produces the distance value; callers that need it must follow up
    with `hausdorff`.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    xs = _check(x, "x")
    ys = _check(y, "y")
    return _directed_below(xs, ys, alpha) and _directed_below(ys, xs, alpha)
