#!/usr/bin/env python3
"""Time the numba-compiled kernels against their pure-numpy bodies.

The jitted dispatcher keeps the original function under ``.py_func``, so both
paths run the same source. Usage:

    python3 benchmarks/bench_kernels.py              # compare both paths
    EMOTIKON_PURE_NUMPY=1 python3 benchmarks/bench_kernels.py   # numpy only
"""

import time

import numpy as np

from emotikon._kernels import NUMBA_ENABLED, python_impl
from emotikon._kernels import kmeans as kmeans_k
from emotikon._kernels import pvdbow as pvdbow_k
from emotikon._kernels import svm as svm_k
from emotikon._kernels import trees as trees_k


def timeit(fn, args, repeats, fresh=None):
    best = np.inf
    for _ in range(repeats):
        call_args = fresh() if fresh else args
        t0 = time.perf_counter()
        fn(*call_args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, kernel, args, repeats=5, fresh=None):
    jitted = timeit(kernel, args, repeats, fresh) if NUMBA_ENABLED else None
    plain = timeit(python_impl(kernel), args, repeats, fresh)
    if jitted is None:
        print(f"{name:<24} numpy {plain * 1e3:9.2f} ms   (numba disabled)")
    else:
        print(f"{name:<24} numba {jitted * 1e3:9.2f} ms   numpy {plain * 1e3:9.2f} ms   "
              f"speedup {plain / jitted:6.1f}x")


def main():
    rng = np.random.default_rng(0)

    # PV-DBOW: one epoch over a 200-doc corpus of 200-token documents, d=100
    d, vocab_size, doc_len, n_docs, negatives = 100, 2000, 200, 200, 5
    word_vecs = rng.normal(scale=0.01, size=(vocab_size, d))
    doc_vecs = rng.normal(scale=0.01, size=(n_docs, d))
    targets = rng.integers(0, vocab_size, size=(n_docs, doc_len)).astype(np.int64)
    negs = rng.integers(0, vocab_size, size=(n_docs, doc_len * negatives)).astype(np.int64)

    def pvdbow_epoch(fn):
        total = n_docs * doc_len
        done = 0
        for i in range(n_docs):
            fn(doc_vecs[i], word_vecs, targets[i], negs[i], negatives,
               0.025, 1e-4, done, total)
            done += doc_len

    for label, fn in (("pvdbow epoch (numba)", pvdbow_k.train_document),
                      ("pvdbow epoch (numpy)", python_impl(pvdbow_k.train_document))):
        if not NUMBA_ENABLED and "numba" in label:
            continue
        t0 = time.perf_counter()
        pvdbow_epoch(fn)
        dt = time.perf_counter() - t0
        rate = n_docs * doc_len / dt
        print(f"{label:<24} {dt * 1e3:9.2f} ms   ({rate / 1e3:.0f}k events/s)")

    X = rng.normal(size=(1000, 100))
    init = rng.choice(1000, size=10, replace=False).astype(np.int64)
    bench("kmeans lloyd n=1000", kmeans_k.lloyd, (X, init, 300))

    Xs = rng.normal(size=(900, 100))
    ys = np.where(rng.integers(0, 2, size=900) == 1, 1.0, -1.0)
    order = np.concatenate([rng.permutation(900) for _ in range(100)]).astype(np.int64)
    bench("svm sgd 100 epochs", svm_k.hinge_sgd, (Xs, ys, order, 100, 1e-3))

    yt = rng.integers(0, 2, size=900).astype(np.int64)
    rows = np.arange(900, dtype=np.int64)
    feats = np.arange(100, dtype=np.int64)
    bench("gini split n=900 d=100", trees_k.best_gini_split, (Xs, yt, rows, feats))

    w = np.full(900, 1.0 / 900)
    sort_idx = np.argsort(Xs, axis=0, kind="stable").astype(np.int64)
    bench("stump search n=900", trees_k.best_weighted_stump, (Xs, sort_idx, ys, w))


if __name__ == "__main__":
    main()
