import numpy as np
import pytest

import emotikon as ek


@pytest.fixture(scope="session")
def tiny_pair():
    """Small synthetic corpus plus its paired lexicon (shared, read-only)."""
    cfg = ek.SyntheticCorpusConfig(docs_per_class=20, tokens_per_doc=(30, 50),
                                   neutral_vocab=80, emotional_vocab=16, seed=101)
    return ek.generate_synthetic_corpus(cfg), ek.generate_synthetic_lexicon(cfg), cfg


def make_blobs(n_per_class=40, dim=6, separation=12.0, seed=0):
    """Two spherical Gaussian blobs far enough apart that the Bayes rule is exact."""
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0, size=(n_per_class, dim))
    b = rng.normal(0.0, 1.0, size=(n_per_class, dim))
    b[:, 0] += separation
    X = np.vstack([a, b])
    y = np.concatenate([np.zeros(n_per_class, dtype=np.int64),
                        np.ones(n_per_class, dtype=np.int64)])
    order = rng.permutation(len(y))
    return X[order], y[order]
