import numpy as np
import pytest

import emotikon as ek
from emotikon.corpus import Corpus, Document
from emotikon.embedding import (
    DocVectors,
    EmbeddingConfig,
    PvDbowModel,
    build_vocabulary,
    objective_and_gradient,
    train_pvdbow,
)
from emotikon.errors import TrainingError, VectorFileError


def _toy_corpus(n_docs=10, seed=0):
    rng = np.random.default_rng(seed)
    vocab = [f"tok{i}" for i in range(30)]
    docs = []
    for i in range(n_docs):
        tokens = [vocab[int(rng.integers(0, len(vocab)))] for _ in range(25)]
        docs.append(Document(id=f"d{i}", tokens=tuple(tokens), sentence_count=1,
                             label="fake" if i % 2 else "real"))
    return Corpus(documents=docs)


FAST = dict(dim=8, epochs=5, min_count=1, seed=42)


def test_output_shape_and_finiteness():
    vectors = train_pvdbow(_toy_corpus(), EmbeddingConfig(**FAST))
    assert vectors.matrix.shape == (10, 8)
    assert np.isfinite(vectors.matrix).all()
    assert vectors.doc_ids == [f"d{i}" for i in range(10)]


def test_single_worker_training_is_bit_reproducible():
    corpus = _toy_corpus()
    a = train_pvdbow(corpus, EmbeddingConfig(**FAST))
    b = train_pvdbow(corpus, EmbeddingConfig(**FAST))
    assert np.array_equal(a.matrix, b.matrix)


def test_different_seeds_differ():
    corpus = _toy_corpus()
    a = train_pvdbow(corpus, EmbeddingConfig(dim=8, epochs=2, min_count=1, seed=1))
    b = train_pvdbow(corpus, EmbeddingConfig(dim=8, epochs=2, min_count=1, seed=2))
    assert not np.array_equal(a.matrix, b.matrix)


def test_empty_corpus_raises():
    with pytest.raises(TrainingError):
        train_pvdbow(Corpus(documents=[]), EmbeddingConfig(**FAST))


def test_empty_vocabulary_raises():
    corpus = _toy_corpus(n_docs=2)
    with pytest.raises(TrainingError):
        train_pvdbow(corpus, EmbeddingConfig(dim=4, epochs=1, min_count=10_000))


def test_min_count_filters_vocabulary():
    docs = [Document(id="a", tokens=("x", "x", "y"), sentence_count=1, label="fake")]
    vocab = build_vocabulary(Corpus(documents=docs), min_count=2)
    assert vocab.words == ["x"]


def test_objective_zero_vectors():
    obj, *_ = objective_and_gradient(np.zeros(6), np.zeros(6), np.zeros((1, 6)))
    assert obj == pytest.approx(2.0 * np.log(0.5))


def test_objective_dimension_mismatch():
    with pytest.raises(ValueError):
        objective_and_gradient(np.zeros(4), np.zeros(5), np.zeros((1, 4)))


def test_objective_invariant_under_zero_padding():
    rng = np.random.default_rng(3)
    v, u = rng.normal(size=5), rng.normal(size=5)
    negs = rng.normal(size=(3, 5))
    base = objective_and_gradient(v, u, negs)[0]
    pad = lambda a: np.concatenate([a, np.zeros(a.shape[:-1] + (5,))], axis=-1)
    padded = objective_and_gradient(pad(v), pad(u), pad(negs))[0]
    assert padded == pytest.approx(base)


def _fd_gradients(v, u, negs, h=1e-5):
    def obj(vv, uu, nn):
        return objective_and_gradient(vv, uu, nn)[0]

    def grad_of(x, rebuild):
        g = np.zeros_like(x)
        flat = x.ravel()
        for i in range(flat.size):
            xp, xm = flat.copy(), flat.copy()
            xp[i] += h
            xm[i] -= h
            g.ravel()[i] = (rebuild(xp.reshape(x.shape)) - rebuild(xm.reshape(x.shape))) / (2 * h)
        return g

    return (
        grad_of(v, lambda x: obj(x, u, negs)),
        grad_of(u, lambda x: obj(v, x, negs)),
        grad_of(negs, lambda x: obj(v, u, x)),
    )


def test_gradients_match_central_differences():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        d = int(rng.integers(2, 10))
        v, u = rng.normal(size=d), rng.normal(size=d)
        negs = rng.normal(size=(int(rng.integers(1, 5)), d))
        _, gd, gw, gn = objective_and_gradient(v, u, negs)
        for got, want in zip((gd, gw, gn), _fd_gradients(v, u, negs)):
            rel = np.abs(got - want) / np.maximum(np.abs(want), 1e-8)
            worst = max(worst, float(rel.max()))
    assert worst < 1e-4


def test_mean_objective_improves_with_training():
    corpus = _toy_corpus(n_docs=12, seed=5)
    model = PvDbowModel(corpus, EmbeddingConfig(dim=8, epochs=1, min_count=1, seed=9))
    start = model.mean_objective()
    model.train()
    after_one = model.mean_objective()
    model5 = PvDbowModel(corpus, EmbeddingConfig(dim=8, epochs=5, min_count=1, seed=9))
    model5.train()
    after_five = model5.mean_objective()
    assert after_one > start
    assert after_five > after_one


def test_class_separation_on_synthetic_vocabulary():
    # classes draw from mostly different vocabularies, so within-class cosine
    # similarity must dominate between-class similarity
    rng = np.random.default_rng(11)
    pools = {"fake": [f"f{i}" for i in range(40)], "real": [f"r{i}" for i in range(40)]}
    docs = []
    for i in range(30):
        label = "fake" if i < 15 else "real"
        tokens = [pools[label][int(rng.integers(0, 40))] for _ in range(40)]
        docs.append(Document(id=f"d{i}", tokens=tuple(tokens), sentence_count=1, label=label))
    corpus = Corpus(documents=docs)
    vectors = train_pvdbow(corpus, EmbeddingConfig(dim=16, epochs=30, min_count=1, seed=13))
    m = vectors.matrix / np.linalg.norm(vectors.matrix, axis=1, keepdims=True)
    sim = m @ m.T
    same = np.array([[a.label == b.label for b in corpus] for a in corpus])
    off_diag = ~np.eye(len(corpus), dtype=bool)
    within = sim[same & off_diag].mean()
    between = sim[~same].mean()
    assert within > between


def test_vector_file_round_trip(tmp_path):
    vectors = train_pvdbow(_toy_corpus(), EmbeddingConfig(**FAST))
    path = tmp_path / "vecs.txt"
    vectors.save(path)
    loaded = DocVectors.load(path)
    assert loaded.doc_ids == vectors.doc_ids
    assert np.array_equal(loaded.matrix, vectors.matrix)  # %.17g is lossless
    header = path.read_text().splitlines()[0]
    assert header == "10 8"


def test_vector_file_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("not a header\n")
    with pytest.raises(VectorFileError):
        DocVectors.load(path)
    path.write_text("2 3\nd0 0.0 1.0\n")
    with pytest.raises(VectorFileError):
        DocVectors.load(path)


def test_multi_worker_training_runs():
    corpus = _toy_corpus(n_docs=16, seed=2)
    vectors = train_pvdbow(corpus, EmbeddingConfig(dim=8, epochs=2, min_count=1,
                                                   seed=3, workers=2))
    assert np.isfinite(vectors.matrix).all()


def test_config_validation():
    with pytest.raises(ValueError):
        EmbeddingConfig(dim=0)
    with pytest.raises(ValueError):
        EmbeddingConfig(min_alpha=0.5, alpha=0.1)
    with pytest.raises(ValueError):
        EmbeddingConfig(negatives=0)
