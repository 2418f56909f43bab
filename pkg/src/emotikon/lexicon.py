"""Emotion-intensity lexicons: parsing, best-sense collapse, thresholded lookup.

A lexicon file is UTF-8 text with one record per line, three tab-separated
fields: word, emotion label, intensity score in [0, 1]. An optional header
line (detected by a non-numeric third field) is skipped. After parsing, the
raw multi-sense entries are collapsed so each word keeps only its single
highest-intensity emotion; intensity ties go to the lexicographically
smallest emotion label.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import LexiconError


@dataclass(frozen=True)
class RawLexiconEntry:
    word: str
    emotion: str
    intensity: float


@dataclass(frozen=True)
class EmotionLexicon:
    """One (emotion, intensity) pair per word, after best-sense collapse."""

    entries: dict[str, tuple[str, float]]
    source_name: str = ""
    emotion_set: frozenset[str] = field(default_factory=frozenset)
    raw_count: int = 0
    dropped_count: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def lookup(self, word: str, tau: float) -> str | None:
        return lookup(self, word, tau)

    def count_at_threshold(self, tau: float) -> int:
        """Number of collapsed entries whose intensity is >= tau."""
        return sum(1 for _, s in self.entries.values() if s >= tau)


def _validate_entry(word: str, emotion: str, intensity: float, lineno: int) -> None:
    if not word:
        raise LexiconError(f"line {lineno}: empty word")
    if any(ch.isspace() for ch in word):
        raise LexiconError(f"line {lineno}: multi-word term {word!r} not supported")
    if not emotion:
        raise LexiconError(f"line {lineno}: empty emotion label")
    if any(ch.isspace() for ch in emotion):
        # labels are inserted as single tokens downstream
        raise LexiconError(f"line {lineno}: emotion label {emotion!r} contains whitespace")
    if not 0.0 <= intensity <= 1.0:
        raise LexiconError(f"line {lineno}: intensity {intensity} outside [0, 1]")


def parse_lexicon(content: str) -> list[RawLexiconEntry]:
    """Parse lexicon-file text into raw entries, words lowercased.

    Raises LexiconError naming the line number for any malformed record.
    """
    entries: list[RawLexiconEntry] = []
    first_record = True
    for lineno, line in enumerate(content.splitlines(), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise LexiconError(f"line {lineno}: expected 3 tab-separated fields, got {len(fields)}")
        word, emotion, score_text = (f.strip() for f in fields)
        if first_record:
            first_record = False
            try:
                float(score_text)
            except ValueError:
                continue  # header row
        try:
            intensity = float(score_text)
        except ValueError:
            raise LexiconError(f"line {lineno}: score {score_text!r} is not a number") from None
        word = word.lower()
        _validate_entry(word, emotion, intensity, lineno)
        entries.append(RawLexiconEntry(word, emotion, intensity))
    return entries


def parse_lexicon_file(path) -> list[RawLexiconEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def serialize_entries(entries: list[RawLexiconEntry]) -> str:
    """Inverse of parse_lexicon (headerless): parse(serialize(e)) == e.

    Scores use repr so they survive the round trip at full precision.
    """
    return "".join(f"{e.word}\t{e.emotion}\t{e.intensity!r}\n" for e in entries)


def collapse_best_sense(entries: list[RawLexiconEntry], source_name: str = "") -> EmotionLexicon:
    """Keep one entry per word: max intensity, ties to the smallest emotion label."""
    best: dict[str, tuple[str, float]] = {}
    for e in entries:
        kept = best.get(e.word)
        if kept is None or e.intensity > kept[1] or (e.intensity == kept[1] and e.emotion < kept[0]):
            best[e.word] = (e.emotion, e.intensity)
    return EmotionLexicon(
        entries=best,
        source_name=source_name,
        emotion_set=frozenset(emo for emo, _ in best.values()),
        raw_count=len(entries),
        dropped_count=len(entries) - len(best),
    )


def lookup(lexicon: EmotionLexicon, word: str, tau: float) -> str | None:
    """The stored emotion iff word is present with intensity >= tau, else None."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    hit = lexicon.entries.get(word)
    if hit is not None and hit[1] >= tau:
        return hit[0]
    return None


def inspect_summary(entries: list[RawLexiconEntry], tau: float | None = None,
                    source_name: str = "") -> dict:
    """Counts and per-emotion histograms for `lexicon inspect`."""
    lex = collapse_best_sense(entries, source_name)
    raw_hist = Counter(e.emotion for e in entries)
    collapsed_hist = Counter(emo for emo, _ in lex.entries.values())
    summary = {
        "source": source_name,
        "raw_entries": len(entries),
        "distinct_words": len(lex),
        "dropped_entries": lex.dropped_count,
        "dropped_fraction": lex.dropped_count / len(entries) if entries else 0.0,
        "emotions_raw": dict(sorted(raw_hist.items())),
        "emotions_collapsed": dict(sorted(collapsed_hist.items())),
    }
    if tau is not None:
        raw_at_tau = sum(1 for e in entries if e.intensity >= tau)
        kept_at_tau = lex.count_at_threshold(tau)
        summary["tau"] = tau
        summary["raw_entries_at_tau"] = raw_at_tau
        summary["collapsed_entries_at_tau"] = kept_at_tau
        summary["dropped_at_tau"] = raw_at_tau - kept_at_tau
        summary["dropped_fraction_at_tau"] = (raw_at_tau - kept_at_tau) / raw_at_tau if raw_at_tau else 0.0
    return summary
