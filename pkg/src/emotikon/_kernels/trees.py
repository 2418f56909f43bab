"""Split-search kernels shared by the decision tree, random forest and AdaBoost."""

import numpy as np

from . import maybe_njit


@maybe_njit(cache=True, nogil=True)
def best_gini_split(features, labels, rows, feat_ids):
    """Best (feature, threshold) split of the node holding ``rows`` by Gini decrease.

    labels are 0/1 ints. Candidate thresholds sit midway between consecutive
    distinct feature values; features are scanned in the order given so ties
    resolve to the first candidate. Returns (feat, threshold, decrease) with
    feat == -1 when no threshold improves on the parent impurity.
    """
    n = rows.shape[0]
    ones = 0
    for i in range(n):
        ones += labels[rows[i]]
    p1 = ones / n
    parent = 1.0 - p1 * p1 - (1.0 - p1) * (1.0 - p1)

    best_feat = -1
    best_thr = 0.0
    best_dec = 0.0
    if parent <= 0.0:
        return best_feat, best_thr, best_dec

    vals = np.empty(n)
    for fi in range(feat_ids.shape[0]):
        f = feat_ids[fi]
        for i in range(n):
            vals[i] = features[rows[i], f]
        order = np.argsort(vals)
        ones_left = 0
        for i in range(n - 1):
            ones_left += labels[rows[order[i]]]
            lo = vals[order[i]]
            hi = vals[order[i + 1]]
            if lo == hi:
                continue
            n_left = i + 1
            n_right = n - n_left
            pl = ones_left / n_left
            pr = (ones - ones_left) / n_right
            gini_l = 1.0 - pl * pl - (1.0 - pl) * (1.0 - pl)
            gini_r = 1.0 - pr * pr - (1.0 - pr) * (1.0 - pr)
            dec = parent - (n_left * gini_l + n_right * gini_r) / n
            if dec > best_dec + 1e-15:
                best_dec = dec
                best_feat = f
                best_thr = 0.5 * (lo + hi)
    return best_feat, best_thr, best_dec


@maybe_njit(cache=True, nogil=True)
def best_weighted_stump(features, sort_idx, targets_pm, weights):
    """Minimum weighted-error decision stump over all features and thresholds.

    sort_idx[:, f] pre-sorts samples by feature f (computed once per fit,
    reused across boosting rounds). targets_pm is in {-1, +1}. A stump with
    polarity +1 predicts +1 where x > threshold; polarity -1 flips that.
    Returns (feat, threshold, polarity, err); feat == -1 if every feature is
    constant.
    """
    n, d = features.shape
    total = 0.0
    plus_total = 0.0
    for i in range(n):
        total += weights[i]
        if targets_pm[i] > 0.0:
            plus_total += weights[i]
    minus_total = total - plus_total

    best_err = np.inf
    best_feat = -1
    best_thr = 0.0
    best_pol = 1.0
    for f in range(d):
        w_left = 0.0
        plus_left = 0.0
        for i in range(n - 1):
            idx = sort_idx[i, f]
            w_left += weights[idx]
            if targets_pm[idx] > 0.0:
                plus_left += weights[idx]
            lo = features[idx, f]
            hi = features[sort_idx[i + 1, f], f]
            if lo == hi:
                continue
            # polarity +1: left predicted -1, right predicted +1
            err_pos = plus_left + (minus_total - (w_left - plus_left))
            err_neg = total - err_pos
            if err_pos < best_err - 1e-15:
                best_err = err_pos
                best_feat = f
                best_thr = 0.5 * (lo + hi)
                best_pol = 1.0
            if err_neg < best_err - 1e-15:
                best_err = err_neg
                best_feat = f
                best_thr = 0.5 * (lo + hi)
                best_pol = -1.0
    return best_feat, best_thr, best_pol, best_err
