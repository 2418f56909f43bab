"""Single entry point: lexicon/corpus tools, enrichment, embedding, models, experiments.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 runtime failure.
Every randomized subcommand takes --seed (default 0); EMOTIKON_WORKERS caps
default parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import corpus as corpus_mod
from . import evaluate as evaluate_mod
from .classify import MODEL_NAMES, ModelKind
from .cluster import dbscan, kdistance_quantiles, kmeans_single, purity
from .embedding import DocVectors, EmbeddingConfig, train_pvdbow
from .emotionize import emotionize_corpus
from .errors import ConfigError, DataError
from .lexicon import collapse_best_sense, inspect_summary, parse_lexicon_file


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _default_workers() -> int:
    raw = os.environ.get("EMOTIKON_WORKERS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="emotikon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_lex = sub.add_parser("lexicon", help="emotion-intensity lexicon tools")
    lex_sub = p_lex.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p_ins = lex_sub.add_parser("inspect", help="entry counts and per-emotion histograms")
    p_ins.add_argument("path")
    p_ins.add_argument("--tau", type=float, default=None)
    p_ins.add_argument("--format", choices=("text", "json"), default="text")
    p_ins.set_defaults(func=cmd_lexicon_inspect)

    p_cor = sub.add_parser("corpus", help="corpus loading, stats and synthesis")
    cor_sub = p_cor.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p_stats = cor_sub.add_parser("stats", help="per-class document/word/sentence stats")
    p_stats.add_argument("path")
    p_stats.add_argument("--format", choices=("text", "json"), default="text")
    p_stats.set_defaults(func=cmd_corpus_stats)
    p_synth = cor_sub.add_parser("synth", help="generate a synthetic labeled corpus")
    p_synth.add_argument("--config", required=True, help="JSON SyntheticCorpusConfig")
    p_synth.add_argument("--out", required=True)
    p_synth.add_argument("--lexicon-out", default=None,
                         help="also write the paired synthetic lexicon (TSV)")
    p_synth.set_defaults(func=cmd_corpus_synth)

    p_emo = sub.add_parser("emotionize", help="insert emotion labels after triggering words")
    p_emo.add_argument("--corpus", required=True)
    p_emo.add_argument("--lexicon", required=True)
    p_emo.add_argument("--tau", type=float, required=True)
    p_emo.add_argument("--out", required=True)
    p_emo.add_argument("--stats", default=None, help="write enrichment stats JSON here")
    p_emo.add_argument("--label-prefix", default="")
    p_emo.set_defaults(func=cmd_emotionize)

    p_embed = sub.add_parser("embed", help="train PV-DBOW document vectors")
    p_embed.add_argument("--corpus", required=True)
    p_embed.add_argument("--dim", type=int, default=100)
    p_embed.add_argument("--seed", type=int, default=0)
    p_embed.add_argument("--out", required=True)
    p_embed.add_argument("--epochs", type=int, default=None)
    p_embed.add_argument("--negatives", type=int, default=None)
    p_embed.add_argument("--min-count", type=int, default=None)
    p_embed.add_argument("--workers", type=int, default=None)
    p_embed.set_defaults(func=cmd_embed)

    p_cls = sub.add_parser("classify", help="k-fold accuracy of one model on vectors")
    p_cls.add_argument("--vectors", required=True)
    p_cls.add_argument("--corpus", required=True, help="corpus supplying gold labels")
    p_cls.add_argument("--model", choices=MODEL_NAMES)
    p_cls.add_argument("--external-predictions", default=None,
                       help="score a doc_id,predicted_label CSV instead of fitting")
    p_cls.add_argument("--folds", type=int, default=10)
    p_cls.add_argument("--seed", type=int, default=0)
    p_cls.add_argument("--format", choices=("text", "json"), default="text")
    p_cls.set_defaults(func=cmd_classify)

    p_clu = sub.add_parser("cluster", help="clustering and purity")
    clu_sub = p_clu.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p_km = clu_sub.add_parser("kmeans", help="seeded K-Means runs")
    p_km.add_argument("--vectors", required=True)
    p_km.add_argument("--k", type=int, required=True)
    p_km.add_argument("--inits", type=int, default=1000)
    p_km.add_argument("--seed", type=int, default=0)
    p_km.add_argument("--corpus", default=None, help="corpus supplying labels for purity")
    p_km.add_argument("--out", default=None, help="assignment CSV (doc_id,cluster_id)")
    p_km.add_argument("--format", choices=("text", "json"), default="text")
    p_km.set_defaults(func=cmd_cluster_kmeans)
    p_db = clu_sub.add_parser("dbscan", help="density clustering")
    p_db.add_argument("--vectors", required=True)
    p_db.add_argument("--eps", type=float, required=True)
    p_db.add_argument("--min-samples", type=int, required=True)
    p_db.add_argument("--corpus", default=None)
    p_db.add_argument("--out", default=None)
    p_db.add_argument("--format", choices=("text", "json"), default="text")
    p_db.set_defaults(func=cmd_cluster_dbscan)
    p_kd = clu_sub.add_parser("kdist", help="k-distance quantiles to guide eps")
    p_kd.add_argument("--vectors", required=True)
    p_kd.add_argument("--k", type=int, required=True)
    p_kd.add_argument("--format", choices=("text", "json"), default="text")
    p_kd.set_defaults(func=cmd_cluster_kdist)

    p_exp = sub.add_parser("experiment", help="grid experiments and reports")
    exp_sub = p_exp.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p_run = exp_sub.add_parser("run", help="run the full grid from a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out-dir", default=None, help="overrides the config's out_dir")
    p_run.add_argument("--workers", type=int, default=None)
    p_run.set_defaults(func=cmd_experiment_run)

    return parser


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_lexicon_inspect(args) -> int:
    entries = parse_lexicon_file(args.path)
    if args.tau is not None and not 0.0 <= args.tau <= 1.0:
        raise UsageError(f"--tau must be in [0, 1], got {args.tau}")
    summary = inspect_summary(entries, tau=args.tau, source_name=str(args.path))
    lines = [
        f"source: {summary['source']}",
        f"raw entries: {summary['raw_entries']}",
        f"distinct words: {summary['distinct_words']}",
        f"dropped by best-sense collapse: {summary['dropped_entries']}"
        f" ({summary['dropped_fraction']:.1%})",
        "collapsed entries per emotion:",
    ]
    for emotion, count in summary["emotions_collapsed"].items():
        lines.append(f"  {emotion}: {count}")
    if args.tau is not None:
        lines += [
            f"raw entries with intensity >= {args.tau:g}: {summary['raw_entries_at_tau']}",
            f"collapsed entries with intensity >= {args.tau:g}: {summary['collapsed_entries_at_tau']}",
            f"dropped at threshold: {summary['dropped_at_tau']}"
            f" ({summary['dropped_fraction_at_tau']:.1%})",
        ]
    _emit(args, summary, lines)
    return 0


def cmd_corpus_stats(args) -> int:
    corpus = corpus_mod.load_corpus_file(args.path)
    stats = corpus_mod.corpus_stats(corpus)
    lines = [f"{'class':<6} {'docs':>6} {'avg words':>10} {'avg sents':>10} {'total words':>12}"]
    for label, cs in stats.per_class.items():
        lines.append(f"{label:<6} {cs.documents:>6} {cs.avg_words:>10.1f} "
                     f"{cs.avg_sentences:>10.1f} {cs.total_words:>12}")
    _emit(args, stats.as_dict(), lines)
    return 0


def cmd_corpus_synth(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON ({exc.msg})") from None
    try:
        config = corpus_mod.SyntheticCorpusConfig.from_dict(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{args.config}: {exc}") from None
    corpus = corpus_mod.generate_synthetic_corpus(config)
    corpus_mod.save_corpus(corpus, args.out)
    print(f"wrote {len(corpus)} documents to {args.out}")
    if args.lexicon_out:
        lexicon = corpus_mod.generate_synthetic_lexicon(config)
        with open(args.lexicon_out, "w", encoding="utf-8") as fh:
            for word in sorted(lexicon.entries):
                emotion, intensity = lexicon.entries[word]
                fh.write(f"{word}\t{emotion}\t{intensity:g}\n")
        print(f"wrote paired lexicon ({len(lexicon)} entries) to {args.lexicon_out}")
    return 0


def cmd_emotionize(args) -> int:
    if not 0.0 <= args.tau <= 1.0:
        raise UsageError(f"--tau must be in [0, 1], got {args.tau}")
    corpus = corpus_mod.load_corpus_file(args.corpus)
    if corpus.emotionized:
        raise DataError(f"{args.corpus} is already emotionized; refusing to re-apply")
    lexicon = collapse_best_sense(parse_lexicon_file(args.lexicon), source_name=str(args.lexicon))
    enriched, stats = emotionize_corpus(corpus, lexicon, args.tau, args.label_prefix)
    corpus_mod.save_corpus(enriched, args.out)
    print(f"wrote {len(enriched)} documents to {args.out} "
          f"(lengthening {stats.lengthening:.2%})")
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(stats.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_embed(args) -> int:
    corpus = corpus_mod.load_corpus_file(args.corpus)
    options = {"dim": args.dim, "seed": args.seed}
    if args.epochs is not None:
        options["epochs"] = args.epochs
    if args.negatives is not None:
        options["negatives"] = args.negatives
    if args.min_count is not None:
        options["min_count"] = args.min_count
    options["workers"] = args.workers if args.workers is not None else _default_workers()
    vectors = train_pvdbow(corpus, EmbeddingConfig(**options))
    vectors.save(args.out)
    print(f"wrote {len(vectors)} x {vectors.dim} vectors to {args.out}")
    return 0


def _aligned_labels(vectors: DocVectors, corpus) -> np.ndarray:
    by_id = {d.id: d.label for d in corpus}
    missing = [i for i in vectors.doc_ids if i not in by_id]
    if missing:
        raise DataError(f"corpus lacks labels for {len(missing)} vector ids (first: {missing[0]!r})")
    from .classify import encode_labels

    return encode_labels([by_id[i] for i in vectors.doc_ids])


def cmd_classify(args) -> int:
    corpus = corpus_mod.load_corpus_file(args.corpus)
    if args.external_predictions:
        preds = evaluate_mod.load_external_predictions(args.external_predictions)
        acc = evaluate_mod.score_external_predictions(corpus, preds)
        _emit(args, {"accuracy": acc, "source": "external"}, [f"external accuracy: {acc:.4f}"])
        return 0
    if not args.model:
        raise UsageError("provide --model or --external-predictions")
    vectors = DocVectors.load(args.vectors)
    labels = _aligned_labels(vectors, corpus)
    plan = evaluate_mod.kfold_split(len(vectors), args.folds, evaluate_mod.child_seed(args.seed, "folds"))
    res = evaluate_mod.crossval_accuracy(vectors, labels, ModelKind(args.model), plan, seed=args.seed)
    payload = {"model": args.model, "folds": args.folds, "mean_accuracy": res.mean,
               "std": res.std, "fold_accuracies": list(res.fold_accuracies)}
    _emit(args, payload, [f"{args.model}: mean accuracy {res.mean:.4f} (std {res.std:.4f}, "
                          f"{args.folds} folds)"])
    return 0


def _write_assignment(path, doc_ids, assignment) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("doc_id,cluster_id\n")
        for doc_id, cid in zip(doc_ids, assignment):
            fh.write(f"{doc_id},{int(cid)}\n")


def cmd_cluster_kmeans(args) -> int:
    vectors = DocVectors.load(args.vectors)
    if args.inits < 1:
        raise UsageError("--inits must be >= 1")
    labels = None
    if args.corpus:
        labels = _aligned_labels(vectors, corpus_mod.load_corpus_file(args.corpus))
    best = None
    purities = []
    for i in range(args.inits):
        clustering = kmeans_single(vectors.matrix, args.k, seed=evaluate_mod.child_seed(args.seed, "kmeans", i))
        if best is None or clustering.inertia < best.inertia:
            best = clustering
        if labels is not None:
            purities.append(purity(clustering, labels))
    payload = {"k": args.k, "inits": args.inits, "best_inertia": best.inertia}
    lines = [f"k={args.k} inits={args.inits} best inertia {best.inertia:.4f}"]
    if labels is not None:
        payload["mean_purity"] = float(np.mean(purities))
        payload["purity_std"] = float(np.std(purities))
        payload["best_run_purity"] = purity(best, labels)
        lines.append(f"mean purity {payload['mean_purity']:.4f} "
                     f"(std {payload['purity_std']:.4f}), best run {payload['best_run_purity']:.4f}")
    if args.out:
        _write_assignment(args.out, vectors.doc_ids, best.assignment)
        lines.append(f"wrote assignment of best run to {args.out}")
    _emit(args, payload, lines)
    return 0


def cmd_cluster_dbscan(args) -> int:
    vectors = DocVectors.load(args.vectors)
    clustering = dbscan(vectors.matrix, args.eps, args.min_samples)
    n_noise = int((clustering.assignment == -1).sum())
    payload = {"eps": args.eps, "min_samples": args.min_samples,
               "clusters": clustering.n_clusters, "noise_points": n_noise}
    lines = [f"eps={args.eps:g} ms={args.min_samples}: {clustering.n_clusters} clusters, "
             f"{n_noise} noise points"]
    if args.corpus:
        labels = _aligned_labels(vectors, corpus_mod.load_corpus_file(args.corpus))
        payload["purity"] = purity(clustering, labels)
        lines.append(f"purity {payload['purity']:.4f}")
    if args.out:
        _write_assignment(args.out, vectors.doc_ids, clustering.assignment)
        lines.append(f"wrote assignment to {args.out}")
    _emit(args, payload, lines)
    return 0


def cmd_cluster_kdist(args) -> int:
    vectors = DocVectors.load(args.vectors)
    quantiles = kdistance_quantiles(vectors.matrix, args.k)
    payload = {"k": args.k, "quantiles": {str(q): v for q, v in quantiles.items()}}
    lines = [f"distance to {args.k}-th nearest neighbor:"]
    lines += [f"  q{q:g}: {v:.4f}" for q, v in quantiles.items()]
    _emit(args, payload, lines)
    return 0


def cmd_experiment_run(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON ({exc.msg})") from None
    if args.workers is not None:
        config.setdefault("embedding", {})["workers"] = args.workers
    else:
        config.setdefault("embedding", {}).setdefault("workers", _default_workers())
    out_dir = Path(args.out_dir or config.get("out_dir") or ".")
    written = run_experiment_config(config, out_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


def run_experiment_config(config: dict, out_dir: Path) -> list[Path]:
    """Execute the configured grid and write CSV/JSON/markdown reports."""
    for key in ("corpus", "lexicon"):
        if key not in config:
            raise ConfigError(f"experiment config missing {key!r}")
    corpus = corpus_mod.load_corpus_file(config["corpus"])
    lexicon = collapse_best_sense(parse_lexicon_file(config["lexicon"]),
                                  source_name=str(config["lexicon"]))
    grid = _grid_from_config(config)
    tasks = config.get("tasks", ["classification", "clustering"])

    out_dir.mkdir(parents=True, exist_ok=True)
    embeddings = evaluate_mod.compute_grid_embeddings(corpus, lexicon, grid)
    written: list[Path] = []
    if "classification" in tasks and grid.models:
        table = evaluate_mod.run_classification_experiment(corpus, lexicon, grid, embeddings)
        if config.get("external_predictions"):
            preds = evaluate_mod.load_external_predictions(config["external_predictions"])
            evaluate_mod.append_external_row(table, corpus, preds)
        written += _write_reports(table, out_dir, "classification")
    if "clustering" in tasks and (grid.kmeans_k or grid.dbscan_min_samples):
        table = evaluate_mod.run_clustering_experiment(corpus, lexicon, grid, embeddings)
        written += _write_reports(table, out_dir, "clustering")
    return written


def _grid_from_config(config: dict) -> evaluate_mod.ExperimentGrid:
    kwargs = {}
    for key in ("taus", "dims", "kmeans_k", "n_inits", "folds", "seed", "label_prefix"):
        if key in config:
            value = config[key]
            kwargs[key] = tuple(value) if isinstance(value, list) else value
    if "models" in config:
        options = config.get("model_options", {})
        try:
            kwargs["models"] = tuple(ModelKind(name, **options) for name in config["models"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad models config: {exc}") from None
    elif "model_options" in config:
        options = config["model_options"]
        kwargs["models"] = tuple(ModelKind(k.name, **options) for k in
                                 evaluate_mod.ExperimentGrid().models)
    if "dbscan" in config:
        dbs = config["dbscan"]
        if not isinstance(dbs, dict) or "eps" not in dbs or "min_samples" not in dbs:
            raise ConfigError("dbscan config needs {'eps': float, 'min_samples': [..]}")
        kwargs["dbscan_eps"] = float(dbs["eps"])
        kwargs["dbscan_min_samples"] = tuple(dbs["min_samples"])
    elif "kmeans_k" in config:
        kwargs.setdefault("dbscan_min_samples", ())
    if "embedding" in config:
        options = dict(config["embedding"])
        try:  # probe: dim/seed are overridden per cell, validate the rest now
            EmbeddingConfig(**{**options, "dim": 8, "seed": 0})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad embedding config: {exc}") from None
        kwargs["embedding_options"] = options
    try:
        return evaluate_mod.ExperimentGrid(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad experiment config: {exc}") from None


def _write_reports(table, out_dir: Path, stem: str) -> list[Path]:
    paths = []
    for fmt, ext in (("csv", "csv"), ("json", "json"), ("markdown", "md")):
        path = out_dir / f"{stem}.{ext}"
        path.write_text(evaluate_mod.emit_report(table, fmt), encoding="utf-8")
        paths.append(path)
    return paths


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures map to 3
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
