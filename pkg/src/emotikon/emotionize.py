"""Lexicon-driven text enrichment.

A single left-to-right pass over a document's tokens: each token is copied
to the output and, when its lexicon intensity meets the threshold, the
emotion label is appended right after it. Inserted labels are never
themselves scanned, so one application adds at most one token per input
token. Repeated application is a different (and unsupported) transform;
the CLI refuses corpora already marked as enriched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, Document
from .lexicon import EmotionLexicon


@dataclass(frozen=True)
class EmotionizedDocument(Document):
    inserted_count: int = 0
    trigger_positions: tuple[tuple[int, str], ...] = ()


@dataclass(frozen=True)
class EnrichmentStats:
    """Lengthening ratios: inserted tokens over original tokens."""

    lengthening: float
    per_class_lengthening: dict[str, float]
    triggered_fraction: float
    inserted_tokens: int
    original_tokens: int

    def as_dict(self) -> dict:
        return {
            "lengthening": self.lengthening,
            "per_class_lengthening": dict(self.per_class_lengthening),
            "triggered_fraction": self.triggered_fraction,
            "inserted_tokens": self.inserted_tokens,
            "original_tokens": self.original_tokens,
        }


def emotionize_document(doc: Document, lexicon: EmotionLexicon, tau: float,
                        label_prefix: str = "") -> EmotionizedDocument:
    """Insert emotion labels after tokens whose intensity is >= tau.

    label_prefix lets callers spell inserted labels as reserved tokens
    (e.g. "__emo_") when collision with natural words matters; the default
    inserts the bare label.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    if any(ch.isspace() for ch in label_prefix):
        raise ValueError(f"label_prefix {label_prefix!r} must not contain whitespace")
    out: list[str] = []
    triggers: list[tuple[int, str]] = []
    for i, token in enumerate(doc.tokens):
        out.append(token)
        hit = lexicon.entries.get(token)
        if hit is not None and hit[1] >= tau:
            out.append(label_prefix + hit[0])
            triggers.append((i, hit[0]))
    return EmotionizedDocument(
        id=doc.id,
        tokens=tuple(out),
        sentence_count=doc.sentence_count,
        label=doc.label,
        inserted_count=len(triggers),
        trigger_positions=tuple(triggers),
    )


def emotionize_corpus(corpus: Corpus, lexicon: EmotionLexicon, tau: float,
                      label_prefix: str = "") -> tuple[Corpus, EnrichmentStats]:
    """Transform every document independently; ids, labels and order are kept."""
    transformed = [emotionize_document(d, lexicon, tau, label_prefix) for d in corpus]
    original = {label: 0 for label in ("fake", "real")}
    inserted = {label: 0 for label in ("fake", "real")}
    for src, dst in zip(corpus, transformed):
        original[src.label] += src.n_tokens
        inserted[src.label] += dst.inserted_count
    total_original = sum(original.values())
    total_inserted = sum(inserted.values())
    stats = EnrichmentStats(
        lengthening=total_inserted / total_original if total_original else 0.0,
        per_class_lengthening={
            label: (inserted[label] / original[label] if original[label] else 0.0)
            for label in original
        },
        triggered_fraction=total_inserted / total_original if total_original else 0.0,
        inserted_tokens=total_inserted,
        original_tokens=total_original,
    )
    out = Corpus(documents=transformed, name=corpus.name, emotionized=True)
    return out, stats
