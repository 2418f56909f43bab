"""K-Means, DBSCAN and the purity metric over document vectors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import kmeans as _km

NOISE = -1


@dataclass
class Clustering:
    """Per-point cluster ids, dense in 0..C-1; NOISE (-1) only from DBSCAN."""

    assignment: np.ndarray
    n_clusters: int
    params: dict = field(default_factory=dict)
    seed: int | None = None
    inertia: float | None = None
    n_iter: int | None = None
    inertia_trace: np.ndarray | None = None


def kmeans_single(vectors, k: int, seed: int, max_iter: int = 300) -> Clustering:
    """One seeded K-Means run: random data points as initial centroids, Lloyd
    iterations to an assignment fixpoint or max_iter."""
    X = np.ascontiguousarray(vectors, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"vectors must be 2-D, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError("vectors contain NaN or infinite values")
    n = X.shape[0]
    if k < 1 or k > n:
        raise ValueError(f"k must satisfy 1 <= k <= {n}, got {k}")
    rng = np.random.default_rng(seed)
    init_idx = rng.choice(n, size=k, replace=False).astype(np.int64)
    labels, n_iter, trace = _km.lloyd(X, init_idx, max_iter)
    labels, n_clusters = _densify(labels)
    return Clustering(assignment=labels, n_clusters=n_clusters,
                      params={"k": k, "max_iter": max_iter}, seed=seed,
                      inertia=float(trace[-1]), n_iter=int(n_iter), inertia_trace=trace)


def _densify(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Remap cluster ids to 0..C-1 (first-appearance order), keeping NOISE."""
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        lab = int(lab)
        if lab == NOISE:
            out[i] = NOISE
            continue
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out, len(mapping)


def dbscan(vectors, eps: float, min_samples: int) -> Clustering:
    """Density clustering with Euclidean distance.

    Core points have >= min_samples neighbors within eps (inclusive, counting
    themselves). Expansion scans points in index order, so the outcome is
    deterministic for a given input order. Unreachable non-core points get
    NOISE.
    """
    X = np.asarray(vectors, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"vectors must be 2-D, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError("vectors contain NaN or infinite values")
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if min_samples < 1:
        raise ValueError(f"min_samples must be >= 1, got {min_samples}")
    n = X.shape[0]
    labels = np.full(n, NOISE, dtype=np.int64)
    if n == 0:
        return Clustering(assignment=labels, n_clusters=0,
                          params={"eps": eps, "min_samples": min_samples})

    d2 = _pairwise_sq(X)
    eps_sq = eps * eps
    neighbors = [np.nonzero(d2[i] <= eps_sq)[0] for i in range(n)]
    core = np.array([len(nb) >= min_samples for nb in neighbors])

    cluster = 0
    visited = np.zeros(n, dtype=bool)
    for i in range(n):
        if visited[i] or not core[i]:
            continue
        # breadth-first expansion from this core point
        labels[i] = cluster
        visited[i] = True
        queue = [i]
        while queue:
            p = queue.pop(0)
            if not core[p]:
                continue
            for q in neighbors[p]:
                if labels[q] == NOISE:
                    labels[q] = cluster
                if not visited[q]:
                    visited[q] = True
                    queue.append(q)
        cluster += 1
    return Clustering(assignment=labels, n_clusters=cluster,
                      params={"eps": eps, "min_samples": min_samples})


def _pairwise_sq(X: np.ndarray) -> np.ndarray:
    sq = (X * X).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * X @ X.T
    np.maximum(d2, 0.0, out=d2)
    return d2


def purity(clustering, labels) -> float:
    """Fraction of points matching their cluster's majority label.

    All NOISE points are pooled into one extra pseudo-cluster before the
    count, which avoids rewarding shattered noise as singletons.
    """
    assignment = clustering.assignment if isinstance(clustering, Clustering) else np.asarray(clustering)
    y = np.asarray(labels)
    if assignment.shape[0] != y.shape[0]:
        raise ValueError(f"length mismatch: {assignment.shape[0]} assignments, {y.shape[0]} labels")
    if assignment.shape[0] == 0:
        raise ValueError("cannot score an empty clustering")
    total = 0
    for cid in np.unique(assignment):
        members = y[assignment == cid]
        counts = np.unique(members, return_counts=True)[1]
        total += int(counts.max())
    return total / assignment.shape[0]


def kdistance(vectors, k: int) -> np.ndarray:
    """Sorted distances to each point's k-th nearest other point (eps guidance)."""
    X = np.asarray(vectors, dtype=np.float64)
    n = X.shape[0]
    if k < 1 or k > n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")
    d2 = _pairwise_sq(X)
    np.fill_diagonal(d2, np.inf)
    kth = np.partition(d2, k - 1, axis=1)[:, k - 1]
    return np.sort(np.sqrt(kth))


def kdistance_quantiles(vectors, k: int, quantiles=(0.5, 0.75, 0.9, 0.95, 1.0)) -> dict[float, float]:
    dists = kdistance(vectors, k)
    return {float(q): float(np.quantile(dists, q)) for q in quantiles}
