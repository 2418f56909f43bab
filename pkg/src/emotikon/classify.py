"""The six conventional classifiers, trained on document vectors.

All models are binary (0 = fake, 1 = real) and deterministic for a fixed
seed. Every tie - kNN votes, argmax scores, exact zero margins - breaks
toward label 0 ("fake", first lexicographically). Gaussian naive Bayes and
kNN are plain numpy; the SVM, trees and boosting run on the shared kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import svm as _svm
from ._kernels import trees as _trees

MODEL_NAMES = ("naive_bayes", "knn", "svm_linear", "decision_tree", "random_forest", "adaboost")

FAKE, REAL = 0, 1


@dataclass(frozen=True)
class ModelKind:
    """A classifier family plus its hyperparameters (defaults are overridable)."""

    name: str
    knn_k: int = 5
    svm_c: float = 1.0
    svm_epochs: int = 100
    tree_max_depth: int | None = None  # None = unlimited
    tree_min_split: int = 2
    forest_trees: int = 100
    forest_features: int | None = None  # None = ceil(sqrt(d))
    forest_bootstrap: bool = True
    boost_rounds: int = 50

    def __post_init__(self):
        if self.name not in MODEL_NAMES:
            raise ValueError(f"unknown model kind {self.name!r}")
        if self.knn_k < 1 or self.forest_trees < 1 or self.boost_rounds < 1:
            raise ValueError("knn_k, forest_trees and boost_rounds must be >= 1")
        if self.svm_c <= 0:
            raise ValueError("svm_c must be > 0")
        if self.svm_epochs < 1 or self.tree_min_split < 2:
            raise ValueError("svm_epochs must be >= 1 and tree_min_split >= 2")


def default_model_kinds() -> list[ModelKind]:
    """The six families in the usual reporting order."""
    order = ("naive_bayes", "knn", "svm_linear", "random_forest", "decision_tree", "adaboost")
    return [ModelKind(name) for name in order]


def encode_labels(labels) -> np.ndarray:
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        if lab == "fake":
            out[i] = FAKE
        elif lab == "real":
            out[i] = REAL
        else:
            raise ValueError(f"unknown label {lab!r}")
    return out


def _check_features(features, expected_dim=None) -> np.ndarray:
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"features must be 2-D, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError("features contain NaN or infinite values")
    if expected_dim is not None and X.shape[1] != expected_dim:
        raise ValueError(f"feature dimension {X.shape[1]} != training dimension {expected_dim}")
    return X


class TrainedModel:
    """Base: holds kind/dim/seed, validates inputs, defers to _predict."""

    def __init__(self, kind: ModelKind, dim: int, seed: int):
        self.kind = kind
        self.dim = dim
        self.seed = seed

    def predict(self, features) -> np.ndarray:
        X = _check_features(features, expected_dim=self.dim)
        if X.shape[0] == 0:
            return np.empty(0, dtype=np.int64)
        return self._predict(X)

    def _predict(self, X) -> np.ndarray:
        raise NotImplementedError


class _ConstantModel(TrainedModel):
    def __init__(self, kind, dim, seed, label):
        super().__init__(kind, dim, seed)
        self.label = int(label)

    def _predict(self, X):
        return np.full(X.shape[0], self.label, dtype=np.int64)


class _GaussianNB(TrainedModel):
    VAR_FLOOR = 1e-9

    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        self.log_prior = np.empty(2)
        self.mean = np.empty((2, dim))
        self.var = np.empty((2, dim))
        for c in (FAKE, REAL):
            Xc = X[y == c]
            self.log_prior[c] = math.log(Xc.shape[0] / X.shape[0])
            self.mean[c] = Xc.mean(axis=0)
            self.var[c] = np.maximum(Xc.var(axis=0), self.VAR_FLOOR)

    def _predict(self, X):
        scores = np.empty((X.shape[0], 2))
        for c in (FAKE, REAL):
            diff = X - self.mean[c]
            scores[:, c] = self.log_prior[c] - 0.5 * (
                np.log(2.0 * np.pi * self.var[c]).sum()
                + (diff * diff / self.var[c]).sum(axis=1))
        return np.argmax(scores, axis=1).astype(np.int64)  # tie -> fake


class _KNN(TrainedModel):
    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        self.train_X = X
        self.train_y = y
        self.k = min(kind.knn_k, X.shape[0])

    def _predict(self, X):
        t_sq = (self.train_X * self.train_X).sum(axis=1)
        x_sq = (X * X).sum(axis=1)
        d2 = x_sq[:, None] + t_sq[None, :] - 2.0 * X @ self.train_X.T
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes_real = self.train_y[nearest].sum(axis=1)
        return (2 * votes_real > self.k).astype(np.int64)  # tie -> fake


class _LinearSVM(TrainedModel):
    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        targets = np.where(y == REAL, 1.0, -1.0)
        n = X.shape[0]
        lam = 1.0 / (kind.svm_c * n)
        rng = np.random.default_rng(seed)
        order = np.concatenate([rng.permutation(n) for _ in range(kind.svm_epochs)])
        self.w, self.b = _svm.hinge_sgd(np.ascontiguousarray(X), targets,
                                        order.astype(np.int64), kind.svm_epochs, lam)

    def _predict(self, X):
        return (X @ self.w + self.b > 0.0).astype(np.int64)  # zero margin -> fake


class _Tree:
    """CART arrays built with the Gini split kernel; shared by DT and RF."""

    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, X, y, rows, max_depth, min_split, n_feats, rng):
        feature, threshold, left, right, value = [], [], [], [], []
        d = X.shape[1]
        all_feats = np.arange(d, dtype=np.int64)
        stack = [(rows, 0, -1, False)]  # rows, depth, parent index, is_right_child
        while stack:
            node_rows, depth, parent, is_right = stack.pop()
            idx = len(feature)
            if parent >= 0:
                (right if is_right else left)[parent] = idx
            n = node_rows.shape[0]
            ones = int(y[node_rows].sum())
            majority = REAL if 2 * ones > n else FAKE
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            value.append(majority)
            if ones == 0 or ones == n or n < min_split:
                continue
            if max_depth is not None and depth >= max_depth:
                continue
            if n_feats is None or n_feats >= d:
                feats = all_feats
            else:
                feats = np.sort(rng.choice(d, size=n_feats, replace=False)).astype(np.int64)
            f, thr, dec = _trees.best_gini_split(X, y, node_rows, feats)
            if f < 0 or dec <= 0.0:
                continue
            feature[idx] = int(f)
            threshold[idx] = float(thr)
            go_left = X[node_rows, f] <= thr
            stack.append((node_rows[~go_left], depth + 1, idx, True))
            stack.append((node_rows[go_left], depth + 1, idx, False))
        self.feature = np.array(feature, dtype=np.int64)
        self.threshold = np.array(threshold)
        self.left = np.array(left, dtype=np.int64)
        self.right = np.array(right, dtype=np.int64)
        self.value = np.array(value, dtype=np.int64)

    def predict(self, X):
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            internal = self.feature[node] >= 0
            if not internal.any():
                break
            rows = np.nonzero(internal)[0]
            feats = self.feature[node[rows]]
            go_left = X[rows, feats] <= self.threshold[node[rows]]
            node[rows] = np.where(go_left, self.left[node[rows]], self.right[node[rows]])
        return self.value[node]


class _DecisionTree(TrainedModel):
    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        rows = np.arange(X.shape[0], dtype=np.int64)
        self.tree = _Tree(np.ascontiguousarray(X), y, rows,
                          kind.tree_max_depth, kind.tree_min_split, None, None)

    def _predict(self, X):
        return self.tree.predict(X)


class _RandomForest(TrainedModel):
    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        X = np.ascontiguousarray(X)
        n = X.shape[0]
        n_feats = kind.forest_features
        if n_feats is None:
            n_feats = int(math.ceil(math.sqrt(dim)))
        rng = np.random.default_rng(seed)
        tree_seeds = rng.integers(0, 2**63 - 1, size=kind.forest_trees)
        self.trees = []
        for ts in tree_seeds:
            tree_rng = np.random.default_rng(int(ts))
            if kind.forest_bootstrap:
                rows = np.sort(tree_rng.integers(0, n, size=n)).astype(np.int64)
            else:
                rows = np.arange(n, dtype=np.int64)
            self.trees.append(_Tree(X, y, rows, kind.tree_max_depth,
                                    kind.tree_min_split, n_feats, tree_rng))

    def _predict(self, X):
        votes_real = np.zeros(X.shape[0], dtype=np.int64)
        for tree in self.trees:
            votes_real += tree.predict(X)
        return (2 * votes_real > len(self.trees)).astype(np.int64)  # tie -> fake


class _AdaBoost(TrainedModel):
    """Discrete AdaBoost over depth-1 stumps.

    training_exp_loss[t] is mean(exp(-y * F_t)) after round t; boosting
    guarantees this sequence never increases, which is what the monotonicity
    tests check (raw 0-1 training error is not monotone in general).
    """

    def __init__(self, kind, dim, seed, X, y):
        super().__init__(kind, dim, seed)
        X = np.ascontiguousarray(X)
        n = X.shape[0]
        targets = np.where(y == REAL, 1.0, -1.0)
        sort_idx = np.argsort(X, axis=0, kind="stable").astype(np.int64)
        weights = np.full(n, 1.0 / n)
        scores = np.zeros(n)
        self.stumps: list[tuple[int, float, float, float]] = []  # feat, thr, polarity, alpha
        self.training_exp_loss: list[float] = []
        eps = 1e-12
        for _ in range(kind.boost_rounds):
            f, thr, pol, err = _trees.best_weighted_stump(X, sort_idx, targets, weights)
            if f < 0 or err >= 0.5 - eps:
                break
            err = max(err, eps)
            alpha = 0.5 * math.log((1.0 - err) / err)
            h = _stump_predict(X, f, thr, pol)
            self.stumps.append((int(f), float(thr), float(pol), float(alpha)))
            weights *= np.exp(-alpha * targets * h)
            weights /= weights.sum()
            scores += alpha * h
            self.training_exp_loss.append(float(np.exp(-targets * scores).mean()))
        if not self.stumps:  # every feature constant: majority fallback
            majority = REAL if 2 * int(y.sum()) > n else FAKE
            self._fallback = majority
        else:
            self._fallback = None

    def _predict(self, X):
        if self._fallback is not None:
            return np.full(X.shape[0], self._fallback, dtype=np.int64)
        scores = np.zeros(X.shape[0])
        for f, thr, pol, alpha in self.stumps:
            scores += alpha * _stump_predict(X, f, thr, pol)
        return (scores > 0.0).astype(np.int64)  # zero score -> fake


def _stump_predict(X, feat, thr, polarity):
    raw = np.where(X[:, feat] > thr, 1.0, -1.0)
    return raw if polarity > 0 else -raw


_FITTERS = {
    "naive_bayes": _GaussianNB,
    "knn": _KNN,
    "svm_linear": _LinearSVM,
    "decision_tree": _DecisionTree,
    "random_forest": _RandomForest,
    "adaboost": _AdaBoost,
}


def fit(kind: ModelKind, features, labels, seed: int = 0) -> TrainedModel:
    """Train one model; single-class training data yields a constant predictor."""
    X = _check_features(features)
    y = np.asarray(labels, dtype=np.int64)
    if X.shape[0] == 0:
        raise ValueError("cannot fit on an empty training set")
    if y.shape[0] != X.shape[0]:
        raise ValueError(f"{X.shape[0]} feature rows but {y.shape[0]} labels")
    if not np.isin(y, (FAKE, REAL)).all():
        raise ValueError("labels must be 0 (fake) or 1 (real)")
    classes = np.unique(y)
    if classes.shape[0] == 1:
        return _ConstantModel(kind, X.shape[1], seed, classes[0])
    return _FITTERS[kind.name](kind, X.shape[1], seed, X, y)


def predict(model: TrainedModel, features) -> np.ndarray:
    return model.predict(features)


def accuracy(predicted, gold) -> float:
    """Fraction of agreeing positions; lengths must match and be >= 1."""
    p = np.asarray(predicted)
    g = np.asarray(gold)
    if p.shape != g.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {g.shape}")
    if p.size == 0:
        raise ValueError("cannot score empty label lists")
    return float(np.mean(p == g))
