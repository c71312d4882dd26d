"""K-means with k-means++ seeding, restarts, and empty-cluster repair."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from litpipe.errors import InvalidInputError

N_RESTARTS = 10
MAX_ITERATIONS = 300
SHIFT_TOLERANCE = 1e-4


@dataclass(frozen=True)
class ClusterAssignment:
    labels: np.ndarray     # (n,) int cluster indices
    k: int
    centroids: np.ndarray  # (k, d)
    seed: int
    iterations_run: int
    inertia: float

    def __post_init__(self):
        if self.labels.min() < 0 or self.labels.max() >= self.k:
            raise InvalidInputError("labels out of range")
        if len(np.unique(self.labels)) != self.k:
            raise InvalidInputError("every cluster index must appear at least once")
        if not np.all(np.isfinite(self.centroids)):
            raise InvalidInputError("centroids must be finite")


def _squared_distances(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # (n, k) squared Euclidean distances, computed stably via the expansion.
    diff = X[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _kmeanspp_init(X: np.ndarray, k: int, rs: np.random.RandomState) -> np.ndarray:
    n = X.shape[0]
    centers = [X[rs.randint(n)]]
    for _ in range(1, k):
        d2 = np.min(_squared_distances(X, np.stack(centers)), axis=1)
        total = d2.sum()
        if total <= 0:
            centers.append(X[rs.randint(n)])
            continue
        probs = d2 / total
        centers.append(X[rs.choice(n, p=probs)])
    return np.stack(centers)


def _lloyd(X: np.ndarray, centroids: np.ndarray):
    n, k = X.shape[0], centroids.shape[0]
    labels = np.zeros(n, dtype=np.int64)
    iterations = 0
    for iterations in range(1, MAX_ITERATIONS + 1):
        d2 = _squared_distances(X, centroids)
        labels = np.argmin(d2, axis=1)
        # Repair empty clusters: seize the point farthest from its centroid.
        for j in range(k):
            if not np.any(labels == j):
                own_d2 = d2[np.arange(n), labels]
                farthest = int(np.argmax(own_d2))
                labels[farthest] = j
                d2[farthest, :] = -np.inf  # never re-picked by a later repair
        new_centroids = np.stack([X[labels == j].mean(axis=0) for j in range(k)])
        shift = float(np.max(np.linalg.norm(new_centroids - centroids, axis=1)))
        centroids = new_centroids
        if shift <= SHIFT_TOLERANCE:
            break
    # Final assignment against the converged centroids.
    d2 = _squared_distances(X, centroids)
    labels = np.argmin(d2, axis=1)
    for j in range(k):
        if not np.any(labels == j):
            own_d2 = d2[np.arange(n), labels]
            farthest = int(np.argmax(own_d2))
            labels[farthest] = j
            d2[farthest, :] = np.inf
    inertia = float(np.sum((X - centroids[labels]) ** 2))
    return labels, centroids, inertia, iterations


def kmeans(X: np.ndarray, k: int, seed: int, restarts: int = N_RESTARTS) -> ClusterAssignment:
    """Lloyd iterations from k-means++ seeding, best of ``restarts`` runs.

    Deterministic for a fixed seed; the winning restart is the one with the
    lowest within-cluster sum of squares.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if n == 0:
        raise InvalidInputError("X must be non-empty")
    if not 1 <= k <= n:
        raise InvalidInputError(f"k={k} must be in [1, {n}]")
    if k == 1:
        centroid = X.mean(axis=0, keepdims=True)
        inertia = float(np.sum((X - centroid) ** 2))
        return ClusterAssignment(
            labels=np.zeros(n, dtype=np.int64),
            k=1,
            centroids=centroid,
            seed=seed,
            iterations_run=1,
            inertia=inertia,
        )

    best = None
    for restart in range(restarts):
        rs = np.random.RandomState((seed + restart) % (2**32))
        centroids0 = _kmeanspp_init(X, k, rs)
        labels, centroids, inertia, iterations = _lloyd(X, centroids0)
        if best is None or inertia < best[2]:
            best = (labels, centroids, inertia, iterations)
    labels, centroids, inertia, iterations = best
    return ClusterAssignment(
        labels=labels,
        k=k,
        centroids=centroids,
        seed=seed,
        iterations_run=iterations,
        inertia=inertia,
    )
