"""Hinge-loss SGD (Pegasos-style schedule) for the linear SVM."""

import numpy as np

from . import maybe_njit


@maybe_njit(cache=True, nogil=True)
def hinge_sgd(features, targets, visit_order, n_epochs, lam):
    """Train w, b on targets in {-1, +1} with per-sample SGD.

    visit_order is a flat array of n_epochs * n sample indices giving the
    (pre-shuffled) visiting sequence; lam is the L2 coefficient. The bias is
    unregularized but shares the step size.
    """
    n, d = features.shape
    w = np.zeros(d)
    b = 0.0
    t = 0
    for e in range(n_epochs):
        base = e * n
        for j in range(n):
            i = visit_order[base + j]
            t += 1
            eta = 1.0 / (lam * t)
            margin = targets[i] * (np.dot(w, features[i]) + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += (eta * targets[i]) * features[i]
                b += eta * targets[i]
    return w, b
