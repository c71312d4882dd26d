"""Silhouette-maximizing K selection over a clamped range."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from litpipe.clustering.kmeans import ClusterAssignment, kmeans
from litpipe.clustering.metrics import silhouette
from litpipe.errors import InvalidInputError

DEFAULT_K_MIN = 5
DEFAULT_K_MAX = 15


@dataclass(frozen=True)
class KSelectionResult:
    k_star: int
    scores: Dict[int, float]
    k_range: Tuple[int, int]
    assignment: ClusterAssignment  # the winning clustering

    def __post_init__(self):
        lo, hi = self.k_range
        if not lo <= self.k_star <= hi:
            raise InvalidInputError("k_star outside evaluated range")
        if self.scores[self.k_star] != max(self.scores.values()):
            raise InvalidInputError("scores[k_star] must be the maximum")


def select_k(
    X: np.ndarray,
    k_min: int = DEFAULT_K_MIN,
    k_max: int = DEFAULT_K_MAX,
    seed: int = 0,
) -> KSelectionResult:
    """Evaluate silhouette for each K in [max(2,k_min), min(k_max, n-1)].

    Returns the argmax, ties resolved toward the smallest K. Each K is
    clustered with its own derived seed (seed + K) for determinism.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if n < 3:
        raise InvalidInputError("K selection requires at least 3 points")
    lo = max(2, k_min)
    hi = min(k_max, n - 1)
    if lo > hi:
        raise InvalidInputError(f"empty K range after clamping: [{lo}, {hi}]")

    scores: Dict[int, float] = {}
    assignments: Dict[int, ClusterAssignment] = {}
    for k in range(lo, hi + 1):
        assignment = kmeans(X, k, seed=seed + k)
        assignments[k] = assignment
        scores[k] = silhouette(X, assignment.labels).silhouette
    best = max(scores.values())
    k_star = min(k for k, s in scores.items() if s == best)
    return KSelectionResult(
        k_star=k_star,
        scores=scores,
        k_range=(lo, hi),
        assignment=assignments[k_star],
    )
