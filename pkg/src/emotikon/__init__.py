"""Emotion-lexicon text enrichment and its effect on fake-news identification."""

from .classify import ModelKind, accuracy, default_model_kinds, fit, predict
from .cluster import Clustering, NOISE, dbscan, kdistance, kmeans_single, purity
from .corpus import (
    Corpus,
    DatasetStats,
    Document,
    SyntheticCorpusConfig,
    corpus_stats,
    generate_synthetic_corpus,
    generate_synthetic_lexicon,
    load_corpus,
    load_corpus_file,
    save_corpus,
    tokenize,
)
from .embedding import DocVectors, EmbeddingConfig, PvDbowModel, objective_and_gradient, train_pvdbow
from .emotionize import EmotionizedDocument, EnrichmentStats, emotionize_corpus, emotionize_document
from .evaluate import (
    ExperimentGrid,
    FoldPlan,
    ResultTable,
    child_seed,
    crossval_accuracy,
    emit_report,
    kfold_split,
    run_classification_experiment,
    run_clustering_experiment,
)
from .lexicon import EmotionLexicon, RawLexiconEntry, collapse_best_sense, lookup, parse_lexicon

__version__ = "0.1.0"

__all__ = [
    "Clustering",
    "Corpus",
    "DatasetStats",
    "DocVectors",
    "Document",
    "EmbeddingConfig",
    "EmotionLexicon",
    "EmotionizedDocument",
    "EnrichmentStats",
    "ExperimentGrid",
    "FoldPlan",
    "ModelKind",
    "NOISE",
    "PvDbowModel",
    "RawLexiconEntry",
    "ResultTable",
    "SyntheticCorpusConfig",
    "accuracy",
    "child_seed",
    "collapse_best_sense",
    "corpus_stats",
    "crossval_accuracy",
    "dbscan",
    "default_model_kinds",
    "emit_report",
    "emotionize_corpus",
    "emotionize_document",
    "fit",
    "generate_synthetic_corpus",
    "generate_synthetic_lexicon",
    "kdistance",
    "kfold_split",
    "kmeans_single",
    "load_corpus",
    "load_corpus_file",
    "lookup",
    "objective_and_gradient",
    "parse_lexicon",
    "predict",
    "purity",
    "run_classification_experiment",
    "run_clustering_experiment",
    "save_corpus",
    "tokenize",
    "train_pvdbow",
]
