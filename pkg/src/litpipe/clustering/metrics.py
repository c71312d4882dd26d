"""Cluster diagnostics: silhouette, validity indices, confidence, strength."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from litpipe.errors import InvalidInputError

log = logging.getLogger(__name__)

STRENGTH_OVERLAPPING = 0.80
STRENGTH_COMPLEMENTARY = 0.50


@dataclass
class ClusterDiagnostics:
    silhouette: float
    per_point_silhouette: List[float] = field(default_factory=list)
    per_point_a: List[float] = field(default_factory=list)
    per_point_b: List[float] = field(default_factory=list)
    calinski_harabasz: Optional[float] = None
    davies_bouldin: Optional[float] = None


def _pairwise_distances(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))


def silhouette(X: np.ndarray, labels: np.ndarray) -> ClusterDiagnostics:
    """Mean silhouette with per-point a/b/s values.

    a_i: mean distance to co-cluster points; b_i: min over other clusters of
    mean distance to that cluster; s_i = (b_i - a_i) / max(a_i, b_i).
    Points in singleton clusters score 0.
    """
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    n = X.shape[0]
    ks = np.unique(labels)
    if len(ks) < 2:
        raise InvalidInputError("silhouette requires at least 2 clusters")
    if n < 3:
        raise InvalidInputError("silhouette requires at least 3 points")

    D = _pairwise_distances(X)
    sizes = {k: int(np.sum(labels == k)) for k in ks}
    a = np.zeros(n)
    b = np.zeros(n)
    s = np.zeros(n)
    for i in range(n):
        own = labels[i]
        if sizes[own] == 1:
            a[i] = 0.0
            others = [D[i, labels == k].mean() for k in ks if k != own]
            b[i] = min(others)
            s[i] = 0.0  # singleton convention
            continue
        mask = labels == own
        a[i] = D[i, mask].sum() / (sizes[own] - 1)
        b[i] = min(D[i, labels == k].mean() for k in ks if k != own)
        denom = max(a[i], b[i])
        s[i] = 0.0 if denom == 0 else (b[i] - a[i]) / denom
    return ClusterDiagnostics(
        silhouette=float(s.mean()),
        per_point_silhouette=s.tolist(),
        per_point_a=a.tolist(),
        per_point_b=b.tolist(),
    )


def validity_indices(X: np.ndarray, labels: np.ndarray) -> Tuple[float, float]:
    """Calinski-Harabasz and Davies-Bouldin, standard definitions.

    Returns (ch, db). Coincident centroids make DB +infinity (logged).
    """
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    ks = np.unique(labels)
    k = len(ks)
    n = X.shape[0]
    if k < 2:
        raise InvalidInputError("validity indices require at least 2 clusters")

    overall_mean = X.mean(axis=0)
    centroids = np.stack([X[labels == kk].mean(axis=0) for kk in ks])
    sizes = np.array([np.sum(labels == kk) for kk in ks])

    between = float(np.sum(sizes * np.sum((centroids - overall_mean) ** 2, axis=1)))
    within = float(
        sum(np.sum((X[labels == kk] - centroids[j]) ** 2) for j, kk in enumerate(ks))
    )
    if within == 0:
        ch = math.inf if between > 0 else 0.0
    else:
        ch = (between / (k - 1)) / (within / (n - k))

    sigma = np.array(
        [np.mean(np.linalg.norm(X[labels == kk] - centroids[j], axis=1)) for j, kk in enumerate(ks)]
    )
    db_terms = []
    coincident = False
    for j in range(k):
        worst = 0.0
        for m in range(k):
            if m == j:
                continue
            dist = float(np.linalg.norm(centroids[j] - centroids[m]))
            if dist == 0:
                coincident = True
                worst = math.inf
                break
            worst = max(worst, (sigma[j] + sigma[m]) / dist)
        db_terms.append(worst)
    if coincident:
        log.warning("coincident centroids: Davies-Bouldin reported as +inf")
        db = math.inf
    else:
        db = float(np.mean(db_terms))
    return float(ch), db


def confidence(X: np.ndarray, labels: np.ndarray, centroids: np.ndarray, i: int) -> float:
    """1 - d(i, own centroid) / max_k d(i, centroid k); 1 when all distances are 0."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if not 0 <= i < n:
        raise InvalidInputError(f"point index {i} out of range")
    dists = np.linalg.norm(np.asarray(centroids, dtype=np.float64) - X[i], axis=1)
    d_max = float(dists.max())
    if d_max == 0:
        return 1.0
    return 1.0 - float(dists[labels[i]]) / d_max


def all_confidences(X: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return np.array([confidence(X, labels, centroids, i) for i in range(len(X))])


def intercluster_strength(centroids: np.ndarray, j: int, k: int) -> float:
    """Cosine similarity between two cluster centroids; strength(j,j) = 1."""
    centroids = np.asarray(centroids, dtype=np.float64)
    if j == k:
        return 1.0
    a, b = centroids[j], centroids[k]
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise InvalidInputError("zero-norm centroid has undefined strength")
    return float(np.dot(a, b) / (na * nb))


def strength_label(strength: float) -> str:
    if strength >= STRENGTH_OVERLAPPING:
        return "overlapping"
    if strength >= STRENGTH_COMPLEMENTARY:
        return "complementary"
    return "distinct"
