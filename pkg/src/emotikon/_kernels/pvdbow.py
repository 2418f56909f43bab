"""SGD inner loop for PV-DBOW negative-sampling training.

The kernel mutates the document vector and the word output matrix in place.
All randomness (negative draws, document order) happens outside, so the
kernel itself is deterministic arithmetic and identical for the jitted and
plain-numpy paths.
"""

import numpy as np

from . import maybe_njit


@maybe_njit(cache=True, nogil=True)
def sigmoid(x):
    # clip keeps exp() finite; |x| > 40 is saturated at double precision anyway
    return 1.0 / (1.0 + np.exp(-np.minimum(np.maximum(x, -60.0), 60.0)))


@maybe_njit(cache=True, nogil=True)
def train_document(doc_vec, word_vecs, targets, negatives, n_neg,
                   alpha0, alpha_min, tokens_done, tokens_total):
    """One pass over a document's target words.

    doc_vec      (d,)      document vector, updated in place
    word_vecs    (V, d)    output word matrix, updated in place
    targets      (n,)      word indices of the document's kept tokens
    negatives    (n*k,)    pre-drawn noise word indices, k per target
    alpha0/alpha_min       linear learning-rate schedule endpoints
    tokens_done/tokens_total   global progress for the schedule
    """
    n = targets.shape[0]
    labels = np.zeros(n_neg + 1)
    labels[0] = 1.0
    rows = np.empty(n_neg + 1, np.int64)
    for j in range(n):
        alpha = alpha0 - (alpha0 - alpha_min) * ((tokens_done + j) / tokens_total)
        if alpha < alpha_min:
            alpha = alpha_min
        rows[0] = targets[j]
        base = j * n_neg
        for r in range(n_neg):
            rows[r + 1] = negatives[base + r]
        outs = word_vecs[rows]              # (k+1, d) copy of current rows
        f = sigmoid(np.dot(outs, doc_vec))  # (k+1,)
        g = (labels - f) * alpha
        doc_delta = np.dot(g, outs)
        for r in range(n_neg + 1):
            word_vecs[rows[r]] += g[r] * doc_vec
        doc_vec += doc_delta
    return n
