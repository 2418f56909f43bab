"""Lloyd iterations for a single seeded K-Means run."""

import numpy as np

from . import maybe_njit


@maybe_njit(cache=True, nogil=True)
def lloyd(points, init_idx, max_iter):
    """Run Lloyd's algorithm from centroids at ``points[init_idx]``.

    Returns (labels, n_iter, inertia_trace) where inertia_trace[i] is the
    within-cluster sum of squares after the i-th assignment step. Empty
    clusters are re-seeded to the point currently farthest from its own
    centroid. Stops at an assignment fixpoint or after max_iter rounds.
    """
    n, d = points.shape
    k = init_idx.shape[0]
    centroids = points[init_idx].copy()
    labels = np.full(n, -1, np.int64)
    trace = np.empty(max_iter)
    pt_sq = np.sum(points * points, axis=1)

    n_iter = 0
    for it in range(max_iter):
        cen_sq = np.sum(centroids * centroids, axis=1)
        d2 = pt_sq.reshape(n, 1) + cen_sq.reshape(1, k) - 2.0 * np.dot(points, centroids.T)
        new_labels = np.argmin(d2, axis=1)
        inertia = 0.0
        for i in range(n):
            v = d2[i, new_labels[i]]
            if v > 0.0:  # rounding can push exact zeros slightly negative
                inertia += v
        trace[it] = inertia
        n_iter = it + 1
        if it > 0 and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels

        counts = np.zeros(k, np.int64)
        sums = np.zeros((k, d))
        for i in range(n):
            c = labels[i]
            counts[c] += 1
            sums[c] += points[i]
        own_d2 = np.empty(n)
        for i in range(n):
            own_d2[i] = d2[i, labels[i]]
        for c in range(k):
            if counts[c] > 0:
                centroids[c] = sums[c] / counts[c]
            else:
                far = np.argmax(own_d2)
                centroids[c] = points[far]
                own_d2[far] = -1.0  # a point seeds at most one empty cluster
    return labels, n_iter, trace[:n_iter].copy()
