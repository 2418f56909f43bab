"""Cross-validation, experiment grids and Acc/Pur comparison tables.

Reports have one row per (method, dimension[, k or ms]), a baseline column
for the raw corpus and one column per enrichment threshold. Child seeds for every stage are a stable
hash of (master seed, stage, cell key), so each cell is independently
reproducible. Fold plans, fit seeds and K-Means init seeds are shared across
representations: when two representations carry identical token streams they
produce identical cells.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .classify import ModelKind, accuracy, default_model_kinds, encode_labels, fit
from .cluster import kmeans_single, dbscan as dbscan_run, purity
from .corpus import Corpus
from .embedding import DocVectors, EmbeddingConfig, train_pvdbow
from .emotionize import emotionize_corpus
from .errors import ConfigError, DataError
from .lexicon import EmotionLexicon


def child_seed(master: int, *parts) -> int:
    """Stable 63-bit seed derived from the master seed and a cell key."""
    key = "\x1f".join([str(master), *map(str, parts)])
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") >> 1


@dataclass(frozen=True)
class FoldPlan:
    k: int
    folds: tuple[np.ndarray, ...]
    seed: int

    @property
    def n(self) -> int:
        return sum(len(f) for f in self.folds)


def kfold_split(n: int, k: int, seed: int) -> FoldPlan:
    """Seeded uniform shuffle, then contiguous chunks with sizes differing by <= 1."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    order = np.random.default_rng(seed).permutation(n)
    return FoldPlan(k=k, folds=tuple(np.array_split(order, k)), seed=seed)


class CrossvalResult(NamedTuple):
    mean: float
    std: float
    fold_accuracies: tuple[float, ...]


def crossval_accuracy(vectors, labels, kind: ModelKind, plan: FoldPlan,
                      seed: int = 0) -> CrossvalResult:
    """Unweighted mean accuracy over the plan's folds (fit on each complement)."""
    X = vectors.matrix if isinstance(vectors, DocVectors) else np.asarray(vectors, dtype=np.float64)
    y = np.asarray(labels)
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"{X.shape[0]} vectors but {y.shape[0]} labels")
    if plan.n != X.shape[0]:
        raise ValueError(f"fold plan covers {plan.n} items, data has {X.shape[0]}")
    scores = []
    for fi, fold in enumerate(plan.folds):
        train_idx = np.concatenate([f for fj, f in enumerate(plan.folds) if fj != fi])
        model = fit(kind, X[train_idx], y[train_idx], seed=child_seed(seed, "fold", fi))
        scores.append(accuracy(model.predict(X[fold]), y[fold]))
    arr = np.array(scores)
    return CrossvalResult(float(arr.mean()), float(arr.std()), tuple(scores))


@dataclass(frozen=True)
class ExperimentGrid:
    taus: tuple[float, ...] = (0.0, 0.2, 0.4, 0.6, 0.8)
    dims: tuple[int, ...] = (100, 300)
    models: tuple[ModelKind, ...] = tuple(default_model_kinds())
    kmeans_k: tuple[int, ...] = (2, 4, 7, 10, 15, 20)
    dbscan_eps: float | None = None
    dbscan_min_samples: tuple[int, ...] = (20, 40, 60, 80, 100)
    n_inits: int = 1000
    folds: int = 10
    seed: int = 0
    label_prefix: str = ""
    embedding_options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.taus or not self.dims:
            raise ValueError("taus and dims must be non-empty")
        for t in self.taus:
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"tau {t} outside [0, 1]")
        if self.n_inits < 1 or self.folds < 2:
            raise ValueError("need n_inits >= 1 and folds >= 2")

    def tau_columns(self) -> list[str]:
        return [f"tau={t:g}" for t in self.taus]


@dataclass(frozen=True)
class RowKey:
    method: str
    dim: int | None
    param: str = ""


@dataclass(frozen=True)
class Cell:
    value: float
    std: float
    count: int


@dataclass
class ResultTable:
    columns: list[str]  # "baseline" first, then tau columns
    rows: list[RowKey]
    cells: dict[tuple[RowKey, str], Cell]

    def cell(self, row: RowKey, column: str) -> Cell | None:
        return self.cells.get((row, column))

    def values_for_row(self, row: RowKey) -> dict[str, Cell]:
        return {c: self.cells[(row, c)] for c in self.columns if (row, c) in self.cells}


BASELINE = "baseline"


def _representations(corpus: Corpus, lexicon: EmotionLexicon, grid: ExperimentGrid):
    reps = [(BASELINE, corpus)]
    for tau, col in zip(grid.taus, grid.tau_columns()):
        enriched, _ = emotionize_corpus(corpus, lexicon, tau, grid.label_prefix)
        reps.append((col, enriched))
    return reps


def compute_grid_embeddings(corpus: Corpus, lexicon: EmotionLexicon,
                            grid: ExperimentGrid) -> dict[tuple[str, int], DocVectors]:
    """Train one embedding per (representation column, dimension).

    The seed depends only on (master seed, dimension): representations with
    identical token streams train to identical vectors, which is what makes
    cross-representation differences attributable to the text transform.
    """
    out: dict[tuple[str, int], DocVectors] = {}
    for col, rep_corpus in _representations(corpus, lexicon, grid):
        for dim in grid.dims:
            options = dict(grid.embedding_options)
            options["dim"] = dim
            options["seed"] = child_seed(grid.seed, "embed", dim)
            options.setdefault("workers", 1)
            out[(col, dim)] = train_pvdbow(rep_corpus, EmbeddingConfig(**options))
    return out


def _check_two_classes(corpus: Corpus) -> np.ndarray:
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    labels = encode_labels(corpus.labels())
    if np.unique(labels).shape[0] < 2:
        raise ValueError("corpus must contain both fake and real documents")
    return labels


def run_classification_experiment(corpus: Corpus, lexicon: EmotionLexicon,
                                  grid: ExperimentGrid,
                                  embeddings: dict | None = None) -> ResultTable:
    """Mean k-fold accuracy per (model, dim) row and representation column."""
    labels = _check_two_classes(corpus)
    if embeddings is None:
        embeddings = compute_grid_embeddings(corpus, lexicon, grid)
    plan = kfold_split(len(corpus), grid.folds, child_seed(grid.seed, "folds"))
    columns = [BASELINE] + grid.tau_columns()
    rows, cells = [], {}
    for model in grid.models:
        for dim in grid.dims:
            row = RowKey(method=model.name, dim=dim)
            rows.append(row)
            fit_seed = child_seed(grid.seed, "fit", model.name, dim)
            for col in columns:
                res = crossval_accuracy(embeddings[(col, dim)], labels, model, plan, seed=fit_seed)
                cells[(row, col)] = Cell(res.mean, res.std, len(res.fold_accuracies))
    return ResultTable(columns=columns, rows=rows, cells=cells)


def run_clustering_experiment(corpus: Corpus, lexicon: EmotionLexicon,
                              grid: ExperimentGrid,
                              embeddings: dict | None = None) -> ResultTable:
    """K-Means purity averaged over n_inits seeded runs; DBSCAN purity from
    one deterministic run per (eps, min_samples)."""
    labels = _check_two_classes(corpus)
    if grid.dbscan_min_samples and grid.dbscan_eps is None:
        raise ConfigError("dbscan rows requested but no eps given")
    if embeddings is None:
        embeddings = compute_grid_embeddings(corpus, lexicon, grid)
    columns = [BASELINE] + grid.tau_columns()
    rows, cells = [], {}
    for k in grid.kmeans_k:
        for dim in grid.dims:
            row = RowKey(method="kmeans", dim=dim, param=f"k={k}")
            rows.append(row)
            for col in columns:
                vectors = embeddings[(col, dim)].matrix
                purities = np.array([
                    purity(kmeans_single(vectors, k, seed=child_seed(grid.seed, "kmeans", dim, k, i)),
                           labels)
                    for i in range(grid.n_inits)
                ])
                cells[(row, col)] = Cell(float(purities.mean()), float(purities.std()),
                                         grid.n_inits)
    for ms in grid.dbscan_min_samples:
        for dim in grid.dims:
            row = RowKey(method="dbscan", dim=dim, param=f"ms={ms}")
            rows.append(row)
            for col in columns:
                clustering = dbscan_run(embeddings[(col, dim)].matrix, grid.dbscan_eps, ms)
                cells[(row, col)] = Cell(purity(clustering, labels), 0.0, 1)
    return ResultTable(columns=columns, rows=rows, cells=cells)


def load_external_predictions(path) -> dict[str, str]:
    """CSV of doc_id,predicted_label rows (optional header tolerated)."""
    preds: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if not record:
                continue
            if len(record) != 2:
                raise DataError(f"{path}: line {lineno}: expected doc_id,predicted_label")
            doc_id, label = record[0].strip(), record[1].strip()
            if lineno == 1 and label not in ("fake", "real"):
                continue  # header row
            if label not in ("fake", "real"):
                raise DataError(f"{path}: line {lineno}: unknown label {label!r}")
            if doc_id in preds:
                raise DataError(f"{path}: line {lineno}: duplicate prediction for {doc_id!r}")
            preds[doc_id] = label
    return preds


def score_external_predictions(corpus: Corpus, predictions: dict[str, str]) -> float:
    missing = [d.id for d in corpus if d.id not in predictions]
    if missing:
        raise DataError(f"predictions missing for {len(missing)} documents (first: {missing[0]!r})")
    return accuracy([predictions[d.id] for d in corpus], corpus.labels())


def append_external_row(table: ResultTable, corpus: Corpus, predictions: dict[str, str],
                        name: str = "external") -> None:
    """Score representation-independent predictions into a baseline-only row."""
    row = RowKey(method=name, dim=None)
    table.rows.append(row)
    table.cells[(row, BASELINE)] = Cell(score_external_predictions(corpus, predictions), 0.0, 1)


# -- report serialization -----------------------------------------------------

def emit_report(table: ResultTable, format: str) -> str:
    if format == "csv":
        return _emit_csv(table)
    if format == "json":
        return _emit_json(table)
    if format == "markdown":
        return _emit_markdown(table)
    raise ValueError(f"unknown report format {format!r}")


def _emit_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["method", "dim", "param"]
    for col in table.columns:
        header += [col, f"{col}_std", f"{col}_n"]
    writer.writerow(header)
    for row in table.rows:
        record = [row.method, "" if row.dim is None else str(row.dim), row.param]
        for col in table.columns:
            cell = table.cell(row, col)
            if cell is None:
                record += ["", "", ""]
            else:
                record += [f"{cell.value:.6f}", f"{cell.std:.6f}", str(cell.count)]
        writer.writerow(record)
    return buf.getvalue()


def parse_report_csv(text: str) -> ResultTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty report") from None
    if header[:3] != ["method", "dim", "param"] or (len(header) - 3) % 3 != 0:
        raise DataError("unrecognized report header")
    columns = [header[3 + 3 * i] for i in range((len(header) - 3) // 3)]
    rows, cells = [], {}
    for record in reader:
        if not record:
            continue
        row = RowKey(method=record[0], dim=int(record[1]) if record[1] else None, param=record[2])
        rows.append(row)
        for i, col in enumerate(columns):
            value, std, count = record[3 + 3 * i: 6 + 3 * i]
            if value == "":
                continue
            cells[(row, col)] = Cell(float(value), float(std), int(count))
    return ResultTable(columns=columns, rows=rows, cells=cells)


def _emit_json(table: ResultTable) -> str:
    payload = {
        "columns": list(table.columns),
        "rows": [
            {
                "method": row.method,
                "dim": row.dim,
                "param": row.param,
                "cells": {
                    col: {"value": cell.value, "std": cell.std, "n": cell.count}
                    for col, cell in table.values_for_row(row).items()
                },
            }
            for row in table.rows
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit_markdown(table: ResultTable) -> str:
    lines = []
    header = ["method", "d", "param"] + list(table.columns)
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + "|".join([" --- "] * len(header)) + "|")
    for row in table.rows:
        present = table.values_for_row(row)
        best = max((c.value for c in present.values()), default=None)
        record = [row.method, "" if row.dim is None else str(row.dim), row.param]
        for col in table.columns:
            cell = present.get(col)
            if cell is None:
                record.append("")
            elif best is not None and cell.value == best:
                record.append(f"**{cell.value:.4f}**")
            else:
                record.append(f"{cell.value:.4f}")
        lines.append("| " + " | ".join(record) + " |")
    return "\n".join(lines) + "\n"
