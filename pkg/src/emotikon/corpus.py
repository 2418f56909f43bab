"""Labeled news corpora: tokenization, JSONL loading, stats, synthetic generation.

Corpus files are UTF-8 line-delimited JSON with fields ``id`` (string),
``text`` (string) and ``label`` ("fake" | "real"). Two optional fields are
honored when present: ``sentences`` (keeps the original sentence count
through a save/load round trip, since joining tokens discards terminators)
and ``emotionized`` (set by the enrichment step so it can refuse to run
twice on the same file).
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import CorpusError
from .lexicon import EmotionLexicon, RawLexiconEntry, collapse_best_sense

LABELS = ("fake", "real")

# maximal alnum runs, keeping hyphens/apostrophes that sit between them
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)
_SENTENCE_RE = re.compile(r"[.!?]+")


def tokenize(text: str) -> tuple[list[str], int]:
    """Lowercase tokens plus a sentence count (runs of ./!/?, min 1 if non-empty)."""
    if not text:
        return [], 0
    tokens = _TOKEN_RE.findall(text.lower())
    sentences = len(_SENTENCE_RE.findall(text))
    return tokens, max(sentences, 1)


@dataclass(frozen=True)
class Document:
    id: str
    tokens: tuple[str, ...]
    sentence_count: int
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise CorpusError(f"document {self.id!r}: unknown label {self.label!r}")
        if self.tokens and self.sentence_count < 1:
            raise CorpusError(f"document {self.id!r}: sentence_count must be >= 1 for non-empty text")

    @property
    def n_tokens(self) -> int:
        return len(self.tokens)


@dataclass
class Corpus:
    documents: list[Document]
    name: str = ""
    emotionized: bool = False

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def labels(self) -> list[str]:
        return [d.label for d in self.documents]

    def doc_ids(self) -> list[str]:
        return [d.id for d in self.documents]


def document_from_text(doc_id: str, text: str, label: str,
                       sentence_count: int | None = None) -> Document:
    tokens, sentences = tokenize(text)
    if sentence_count is not None:
        sentences = sentence_count
    return Document(id=doc_id, tokens=tuple(tokens), sentence_count=sentences, label=label)


def load_corpus(stream, name: str = "") -> Corpus:
    """Load a JSONL corpus; errors carry the 1-based line number."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    documents: list[Document] = []
    seen: set[str] = set()
    emotionized = False
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(record, dict):
            raise CorpusError(f"line {lineno}: expected a JSON object")
        for key in ("id", "text", "label"):
            if key not in record:
                raise CorpusError(f"line {lineno}: missing field {key!r}")
        doc_id = str(record["id"])
        if doc_id in seen:
            raise CorpusError(f"line {lineno}: duplicate document id {doc_id!r}")
        seen.add(doc_id)
        if record["label"] not in LABELS:
            raise CorpusError(f"line {lineno}: unknown label {record['label']!r}")
        sentences = record.get("sentences")
        if sentences is not None and (not isinstance(sentences, int) or sentences < 0):
            raise CorpusError(f"line {lineno}: invalid sentences value {sentences!r}")
        documents.append(document_from_text(doc_id, str(record["text"]), record["label"], sentences))
        emotionized = emotionized or bool(record.get("emotionized", False))
    return Corpus(documents=documents, name=name, emotionized=emotionized)


def load_corpus_file(path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return load_corpus(fh, name=str(path))


def serialize_corpus(corpus: Corpus) -> str:
    lines = []
    for doc in corpus:
        record = {"id": doc.id, "text": " ".join(doc.tokens), "label": doc.label,
                  "sentences": doc.sentence_count}
        if corpus.emotionized:
            record["emotionized"] = True
        lines.append(json.dumps(record, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_corpus(corpus))


@dataclass(frozen=True)
class ClassStats:
    documents: int
    avg_words: float
    avg_sentences: float
    total_words: int


@dataclass(frozen=True)
class DatasetStats:
    per_class: dict[str, ClassStats]

    def as_dict(self) -> dict:
        return {label: vars(stats) for label, stats in self.per_class.items()}


def corpus_stats(corpus: Corpus) -> DatasetStats:
    per_class = {}
    for label in LABELS:
        docs = [d for d in corpus if d.label == label]
        total = sum(d.n_tokens for d in docs)
        sentences = sum(d.sentence_count for d in docs)
        n = len(docs)
        per_class[label] = ClassStats(
            documents=n,
            avg_words=total / n if n else 0.0,
            avg_sentences=sentences / n if n else 0.0,
            total_words=total,
        )
    return DatasetStats(per_class=per_class)


EMOTION_CYCLE = ("anger", "fear", "joy", "sadness")


@dataclass(frozen=True)
class SyntheticCorpusConfig:
    """Desk-scale stand-in for a crawled two-class corpus.

    Each token is drawn from the emotional pool with the class's rate and
    from the neutral pool otherwise. The paired lexicon maps every emotional
    word to an intensity >= 0.6, so those words trigger enrichment at the
    default threshold.
    """

    docs_per_class: int = 500
    tokens_per_doc: tuple[int, int] = (160, 240)
    emotion_token_rate_fake: float = 0.05
    emotion_token_rate_real: float = 0.01
    neutral_vocab: int = 800
    emotional_vocab: int = 120
    seed: int = 0

    def __post_init__(self):
        if self.docs_per_class < 0:
            raise ValueError("docs_per_class must be >= 0")
        lo, hi = self.tokens_per_doc
        if lo < 1 or hi < lo:
            raise ValueError(f"bad tokens_per_doc range {self.tokens_per_doc}")
        for rate in (self.emotion_token_rate_fake, self.emotion_token_rate_real):
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"emotion token rate {rate} outside [0, 1]")
        if self.neutral_vocab < 1 or self.emotional_vocab < 1:
            raise ValueError("vocabulary sizes must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticCorpusConfig":
        if "tokens_per_doc" in data:
            data = dict(data)
            data["tokens_per_doc"] = tuple(data["tokens_per_doc"])
        return cls(**data)


def _neutral_pool(config: SyntheticCorpusConfig) -> list[str]:
    return [f"w{i:04d}" for i in range(config.neutral_vocab)]


def _emotional_pool(config: SyntheticCorpusConfig) -> list[str]:
    return [f"emo{i:03d}" for i in range(config.emotional_vocab)]


def generate_synthetic_corpus(config: SyntheticCorpusConfig) -> Corpus:
    """Deterministic two-class corpus; pair it with generate_synthetic_lexicon."""
    rng = np.random.default_rng(config.seed)
    neutral = np.array(_neutral_pool(config))
    emotional = np.array(_emotional_pool(config))
    lo, hi = config.tokens_per_doc
    rates = {"fake": config.emotion_token_rate_fake, "real": config.emotion_token_rate_real}

    documents = []
    for label in LABELS:
        for j in range(config.docs_per_class):
            length = int(rng.integers(lo, hi + 1))
            emotional_mask = rng.random(length) < rates[label]
            neutral_draw = rng.integers(0, len(neutral), size=length)
            emotional_draw = rng.integers(0, len(emotional), size=length)
            tokens = np.where(emotional_mask, emotional[emotional_draw], neutral[neutral_draw])
            documents.append(Document(
                id=f"{label}-{j:04d}",
                tokens=tuple(tokens.tolist()),
                sentence_count=max(1, round(length / 20)),
                label=label,
            ))
    return Corpus(documents=documents, name=f"synthetic-{config.seed}")


def generate_synthetic_lexicon(config: SyntheticCorpusConfig) -> EmotionLexicon:
    """Lexicon for the synthetic emotional pool: intensities in [0.6, 0.999]."""
    entries = []
    for i, word in enumerate(_emotional_pool(config)):
        emotion = EMOTION_CYCLE[i % len(EMOTION_CYCLE)]
        intensity = round(0.6 + 0.399 * ((i * 0.6180339887498949) % 1.0), 3)
        entries.append(RawLexiconEntry(word, emotion, intensity))
    return collapse_best_sense(entries, source_name="synthetic")
