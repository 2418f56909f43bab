import numpy as np
import pytest

import emotikon as ek
from emotikon.classify import ModelKind, encode_labels
from emotikon.errors import ConfigError, DataError
from emotikon.evaluate import (
    BASELINE,
    Cell,
    ExperimentGrid,
    ResultTable,
    RowKey,
    child_seed,
    crossval_accuracy,
    emit_report,
    kfold_split,
    load_external_predictions,
    parse_report_csv,
    run_classification_experiment,
    run_clustering_experiment,
    score_external_predictions,
)

from conftest import make_blobs


def test_kfold_singletons():
    plan = kfold_split(10, 10, seed=0)
    assert all(len(f) == 1 for f in plan.folds)


def test_kfold_even_split():
    plan = kfold_split(1000, 10, seed=1)
    assert [len(f) for f in plan.folds] == [100] * 10


def test_kfold_k_greater_than_n():
    with pytest.raises(ValueError):
        kfold_split(5, 10, seed=0)
    with pytest.raises(ValueError):
        kfold_split(5, 1, seed=0)


def test_kfold_properties_small_range():
    for n in (2, 3, 7, 20, 53):
        for k in range(2, n + 1):
            plan = kfold_split(n, k, seed=n * 1000 + k)
            joined = np.concatenate(plan.folds)
            assert np.array_equal(np.sort(joined), np.arange(n))  # disjoint cover
            sizes = [len(f) for f in plan.folds]
            assert max(sizes) - min(sizes) <= 1


def test_kfold_deterministic():
    a = kfold_split(50, 5, seed=3)
    b = kfold_split(50, 5, seed=3)
    for fa, fb in zip(a.folds, b.folds):
        assert np.array_equal(fa, fb)


def test_crossval_perfect_on_blobs():
    X, y = make_blobs(n_per_class=30, seed=0)
    plan = kfold_split(len(y), 10, seed=1)
    for kind in ek.default_model_kinds():
        res = crossval_accuracy(X, y, kind, plan, seed=2)
        assert res.mean == 1.0, kind.name


def test_crossval_random_labels_near_half():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(300, 8))
    y = rng.integers(0, 2, size=300)
    plan = kfold_split(300, 10, seed=6)
    res = crossval_accuracy(X, y, ModelKind("naive_bayes"), plan, seed=7)
    sigma = 0.5 / np.sqrt(300)
    assert abs(res.mean - 0.5) < 3 * sigma


def test_crossval_loo_duplicated_points_knn1():
    rng = np.random.default_rng(8)
    base = rng.normal(size=(20, 4))
    X = np.repeat(base, 2, axis=0)  # each point has an exact duplicate
    y = np.repeat(rng.integers(0, 2, size=20), 2)
    plan = kfold_split(40, 40, seed=9)
    res = crossval_accuracy(X, y, ModelKind("knn", knn_k=1), plan, seed=10)
    assert res.mean == 1.0


def test_crossval_single_class_complement_handled():
    X = np.vstack([np.zeros((1, 2)), np.ones((9, 2)) + np.random.default_rng(0).normal(size=(9, 2)) * 0.1])
    y = np.array([0] + [1] * 9)
    plan = kfold_split(10, 2, seed=11)
    res = crossval_accuracy(X, y, ModelKind("naive_bayes"), plan, seed=12)
    assert 0.0 <= res.mean <= 1.0  # no exception; constant model covers the gap


def _small_grid(**overrides):
    defaults = dict(
        taus=(0.0, 0.6),
        dims=(12,),
        models=(ModelKind("naive_bayes"), ModelKind("knn")),
        kmeans_k=(2, 3),
        dbscan_eps=1.0,
        dbscan_min_samples=(2,),
        n_inits=3,
        folds=4,
        seed=5,
        embedding_options={"epochs": 3, "min_count": 1},
    )
    defaults.update(overrides)
    return ExperimentGrid(**defaults)


def test_classification_grid_completeness(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    grid = _small_grid()
    table = run_classification_experiment(corpus, lexicon, grid)
    assert len(table.rows) == 2  # 2 models x 1 dim
    assert table.columns == ["baseline", "tau=0", "tau=0.6"]
    for row in table.rows:
        for col in table.columns:
            cell = table.cell(row, col)
            assert cell is not None and 0.0 <= cell.value <= 1.0
            assert cell.count == 4


def test_clustering_grid_completeness(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    grid = _small_grid()
    table = run_clustering_experiment(corpus, lexicon, grid)
    methods = [(r.method, r.param) for r in table.rows]
    assert methods == [("kmeans", "k=2"), ("kmeans", "k=3"), ("dbscan", "ms=2")]
    for row in table.rows:
        for col in table.columns:
            cell = table.cell(row, col)
            assert cell is not None and 0.5 <= cell.value <= 1.0  # balanced corpus bound
        expected_n = grid.n_inits if row.method == "kmeans" else 1
        assert table.cell(row, BASELINE).count == expected_n


def test_clustering_requires_eps_when_dbscan_rows_present(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    with pytest.raises(ConfigError):
        run_clustering_experiment(corpus, lexicon, _small_grid(dbscan_eps=None))


def test_null_effect_when_tau_above_all_intensities(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    # paired lexicon intensities top out below 0.999; tau=1.0 inserts nothing
    grid = _small_grid(taus=(1.0,), kmeans_k=(2,), dbscan_min_samples=())
    table = run_classification_experiment(corpus, lexicon, grid)
    for row in table.rows:
        assert table.cell(row, "tau=1").value == table.cell(row, BASELINE).value
    ctable = run_clustering_experiment(corpus, lexicon, grid)
    for row in ctable.rows:
        assert ctable.cell(row, "tau=1").value == ctable.cell(row, BASELINE).value


def test_single_class_corpus_rejected(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    fakes = ek.Corpus(documents=[d for d in corpus if d.label == "fake"])
    with pytest.raises(ValueError):
        run_classification_experiment(fakes, lexicon, _small_grid())


def test_experiment_deterministic(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    grid = _small_grid(n_inits=1)
    t1 = run_classification_experiment(corpus, lexicon, grid)
    t2 = run_classification_experiment(corpus, lexicon, grid)
    assert emit_report(t1, "csv") == emit_report(t2, "csv")


def _table_one_cell():
    row = RowKey(method="naive_bayes", dim=100)
    return ResultTable(columns=["baseline"], rows=[row],
                       cells={(row, "baseline"): Cell(0.8123, 0.01, 10)})


def test_emit_csv_single_cell():
    text = emit_report(_table_one_cell(), "csv")
    lines = text.strip().splitlines()
    assert lines[0] == "method,dim,param,baseline,baseline_std,baseline_n"
    assert lines[1] == "naive_bayes,100,,0.812300,0.010000,10"


def test_csv_round_trip_byte_identical(tiny_pair):
    corpus, lexicon, _ = tiny_pair
    table = run_classification_experiment(corpus, lexicon, _small_grid())
    text = emit_report(table, "csv")
    assert emit_report(parse_report_csv(text), "csv") == text


def test_markdown_flags_row_maximum():
    row = RowKey(method="knn", dim=100)
    cells = {
        (row, "baseline"): Cell(0.75, 0.0, 10),
        (row, "tau=0.6"): Cell(0.925, 0.0, 10),
    }
    table = ResultTable(columns=["baseline", "tau=0.6"], rows=[row], cells=cells)
    md = emit_report(table, "markdown")
    assert "**0.9250**" in md
    assert "**0.7500**" not in md


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit_report(_table_one_cell(), "xml")


def test_external_predictions_round_trip(tmp_path, tiny_pair):
    corpus, _, _ = tiny_pair
    path = tmp_path / "preds.csv"
    rows = ["doc_id,predicted_label"]
    rows += [f"{d.id},{d.label}" for d in corpus]  # oracle predictions
    path.write_text("\n".join(rows) + "\n")
    preds = load_external_predictions(path)
    assert score_external_predictions(corpus, preds) == 1.0


def test_external_predictions_missing_doc(tmp_path, tiny_pair):
    corpus, _, _ = tiny_pair
    path = tmp_path / "preds.csv"
    path.write_text(f"{corpus.documents[0].id},fake\n")
    preds = load_external_predictions(path)
    with pytest.raises(DataError):
        score_external_predictions(corpus, preds)


def test_external_predictions_bad_label(tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("a,fake\nb,satire\n")
    with pytest.raises(DataError):
        load_external_predictions(path)


def test_child_seed_stable_and_distinct():
    assert child_seed(0, "embed", 100) == child_seed(0, "embed", 100)
    assert child_seed(0, "embed", 100) != child_seed(0, "embed", 300)
    assert child_seed(0, "embed", 100) != child_seed(1, "embed", 100)


def test_grid_validation():
    with pytest.raises(ValueError):
        ExperimentGrid(taus=())
    with pytest.raises(ValueError):
        ExperimentGrid(taus=(1.5,))
    with pytest.raises(ValueError):
        ExperimentGrid(folds=1)
