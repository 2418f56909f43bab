"""PV-DBOW document vectors trained with negative-sampling SGD.

Every (document, word) occurrence is a training event: the document vector
is pushed toward the word's output vector and away from noise words drawn
from the unigram distribution raised to a configurable exponent. Document
vectors start uniform in [-0.5/d, 0.5/d]; word output vectors start at zero.
The learning rate decays linearly per processed token.

With workers=1 training is bit-reproducible for a fixed seed. With more
workers, epochs are sharded across threads that update the shared matrices
without locks (the usual asynchronous-SGD trade: scheduling order is not
deterministic, individual updates stay correct).
"""

from __future__ import annotations

import concurrent.futures
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ._kernels import pvdbow as _pk
from .corpus import Corpus
from .errors import TrainingError, VectorFileError


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 100
    epochs: int = 50
    negatives: int = 5
    alpha: float = 0.025
    min_alpha: float = 0.0001
    min_count: int = 2
    noise_exponent: float = 0.75
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.negatives < 1:
            raise ValueError("negatives must be >= 1")
        if not 0.0 < self.min_alpha <= self.alpha:
            raise ValueError("need 0 < min_alpha <= alpha")
        if self.min_count < 0:
            raise ValueError("min_count must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> "EmbeddingConfig":
        return cls(**data)


@dataclass
class DocVectors:
    matrix: np.ndarray  # (N, dim) float64
    doc_ids: list[str]
    config: EmbeddingConfig

    def __len__(self) -> int:
        return len(self.doc_ids)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{len(self.doc_ids)} {self.dim}\n")
            for doc_id, row in zip(self.doc_ids, self.matrix):
                fh.write(doc_id + " " + " ".join(f"{v:.17g}" for v in row) + "\n")

    @classmethod
    def load(cls, path) -> "DocVectors":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2:
                raise VectorFileError("vector file header must be 'N d'")
            try:
                n, dim = int(header[0]), int(header[1])
            except ValueError:
                raise VectorFileError("vector file header must be 'N d'") from None
            if n < 0 or dim < 1:
                raise VectorFileError(f"bad vector file header: N={n} d={dim}")
            ids, rows = [], []
            for lineno, line in enumerate(fh, start=2):
                if not line.strip():
                    continue
                parts = line.split()
                if len(parts) != dim + 1:
                    raise VectorFileError(f"line {lineno}: expected id + {dim} values")
                ids.append(parts[0])
                try:
                    rows.append([float(p) for p in parts[1:]])
                except ValueError:
                    raise VectorFileError(f"line {lineno}: non-numeric vector value") from None
        if len(ids) != n:
            raise VectorFileError(f"header says {n} rows, file has {len(ids)}")
        matrix = np.array(rows, dtype=np.float64).reshape(n, dim)
        return cls(matrix=matrix, doc_ids=ids, config=EmbeddingConfig(dim=dim))


@dataclass
class Vocabulary:
    words: list[str]
    counts: np.ndarray
    index: dict[str, int]

    def __len__(self) -> int:
        return len(self.words)


def build_vocabulary(corpus: Corpus, min_count: int) -> Vocabulary:
    """Frequency-filtered vocabulary, ordered by (count desc, word) for determinism."""
    freq = Counter()
    for doc in corpus:
        freq.update(doc.tokens)
    kept = sorted((w for w, c in freq.items() if c >= min_count),
                  key=lambda w: (-freq[w], w))
    counts = np.array([freq[w] for w in kept], dtype=np.float64)
    return Vocabulary(words=kept, counts=counts, index={w: i for i, w in enumerate(kept)})


def encode_documents(corpus: Corpus, vocab: Vocabulary) -> list[np.ndarray]:
    return [
        np.array([vocab.index[t] for t in doc.tokens if t in vocab.index], dtype=np.int64)
        for doc in corpus
    ]


class PvDbowModel:
    """Training state: document matrix, word output matrix, noise distribution."""

    def __init__(self, corpus: Corpus, config: EmbeddingConfig):
        if len(corpus) == 0:
            raise TrainingError("cannot train on an empty corpus")
        self.config = config
        self.vocab = build_vocabulary(corpus, config.min_count)
        if len(self.vocab) == 0:
            raise TrainingError(
                f"vocabulary is empty after min_count={config.min_count} filtering")
        self.doc_ids = corpus.doc_ids()
        self.encoded = encode_documents(corpus, self.vocab)
        self.total_tokens = int(sum(len(e) for e in self.encoded))
        if self.total_tokens == 0:
            raise TrainingError("no trainable tokens after vocabulary filtering")

        weights = self.vocab.counts ** config.noise_exponent
        self.noise_probs = weights / weights.sum()
        self._noise_cum = np.cumsum(self.noise_probs)
        self._noise_cum[-1] = 1.0  # guard against cumsum rounding

        rng = np.random.default_rng(config.seed)
        d = config.dim
        self.doc_vectors = rng.uniform(-0.5 / d, 0.5 / d, size=(len(corpus), d))
        self.word_vectors = np.zeros((len(self.vocab), d))
        self._order_rng = rng

    def _draw_negatives(self, rng, n_events: int) -> np.ndarray:
        u = rng.random(n_events * self.config.negatives)
        return np.searchsorted(self._noise_cum, u, side="right").astype(np.int64)

    def train(self) -> None:
        cfg = self.config
        total = self.total_tokens * cfg.epochs
        done = 0
        for _ in range(cfg.epochs):
            order = self._order_rng.permutation(len(self.encoded))
            batch = []
            for di in order:
                targets = self.encoded[di]
                if len(targets) == 0:
                    continue
                negatives = self._draw_negatives(self._order_rng, len(targets))
                batch.append((di, targets, negatives, done))
                done += len(targets)
            if cfg.workers == 1:
                for di, targets, negatives, offset in batch:
                    _pk.train_document(self.doc_vectors[di], self.word_vectors,
                                       targets, negatives, cfg.negatives,
                                       cfg.alpha, cfg.min_alpha, offset, total)
            else:
                shards = [batch[w::cfg.workers] for w in range(cfg.workers)]
                with concurrent.futures.ThreadPoolExecutor(cfg.workers) as pool:
                    list(pool.map(self._train_shard, shards))

    def _train_shard(self, shard) -> None:
        cfg = self.config
        total = self.total_tokens * cfg.epochs
        for di, targets, negatives, offset in shard:
            _pk.train_document(self.doc_vectors[di], self.word_vectors,
                               targets, negatives, cfg.negatives,
                               cfg.alpha, cfg.min_alpha, offset, total)

    def mean_objective(self) -> float:
        """Expected per-event objective under the noise distribution.

        For each event the negative part is evaluated exactly as
        negatives * sum_n P(n) log(sigma(-v.u_n)), so the number is free of
        sampling noise and usable as an independent progress check.
        """
        total = 0.0
        events = 0
        U = self.word_vectors
        for di, targets in enumerate(self.encoded):
            if len(targets) == 0:
                continue
            scores = U @ self.doc_vectors[di]
            log_pos = np.log(_sigmoid(scores))
            neg_term = self.config.negatives * float(self.noise_probs @ np.log(_sigmoid(-scores)))
            total += float(log_pos[targets].sum()) + len(targets) * neg_term
            events += len(targets)
        return total / events

    def vectors(self) -> DocVectors:
        return DocVectors(matrix=self.doc_vectors.copy(), doc_ids=list(self.doc_ids),
                          config=self.config)


def train_pvdbow(corpus: Corpus, config: EmbeddingConfig | None = None) -> DocVectors:
    """Train document vectors over the corpus; see PvDbowModel for internals."""
    model = PvDbowModel(corpus, config or EmbeddingConfig())
    model.train()
    return model.vectors()


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -60.0, 60.0)))


def objective_and_gradient(doc_vec, word_vec, neg_vecs):
    """Negative-sampling objective for one event plus exact analytic gradients.

    Returns (objective, grad_doc, grad_word, grad_negs). The objective is
    log sigma(v.u_w) + sum_n log sigma(-v.u_n), the quantity each SGD step
    ascends.
    """
    v = np.asarray(doc_vec, dtype=np.float64)
    u = np.asarray(word_vec, dtype=np.float64)
    negs = np.atleast_2d(np.asarray(neg_vecs, dtype=np.float64))
    if v.ndim != 1 or u.shape != v.shape or negs.shape[1] != v.shape[0]:
        raise ValueError(
            f"dimension mismatch: doc {v.shape}, word {u.shape}, negatives {negs.shape}")
    pos_sig = _sigmoid(float(v @ u))
    neg_scores = negs @ v
    neg_sig = _sigmoid(neg_scores)
    # log sigma(-x) computed directly; 1 - sigma(x) underflows to 0 for large x
    objective = float(np.log(pos_sig) + np.log(_sigmoid(-neg_scores)).sum())
    grad_doc = (1.0 - pos_sig) * u - neg_sig @ negs
    grad_word = (1.0 - pos_sig) * v
    grad_negs = -np.outer(neg_sig, v)
    return objective, grad_doc, grad_word, grad_negs
