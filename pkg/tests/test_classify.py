import numpy as np
import pytest

from emotikon.classify import (
    MODEL_NAMES,
    ModelKind,
    accuracy,
    default_model_kinds,
    encode_labels,
    fit,
)

from conftest import make_blobs


ALL_KINDS = [ModelKind(name) for name in MODEL_NAMES]


def _kind_id(kind):
    return kind.name


@pytest.mark.parametrize("kind", ALL_KINDS, ids=_kind_id)
def test_separable_blobs_perfect_holdout(kind):
    X_train, y_train = make_blobs(n_per_class=30, seed=1)
    X_test, y_test = make_blobs(n_per_class=15, seed=2)
    model = fit(kind, X_train, y_train, seed=5)
    assert accuracy(model.predict(X_test), y_test) == 1.0


@pytest.mark.parametrize("kind", ALL_KINDS, ids=_kind_id)
def test_single_class_training_predicts_that_class(kind):
    X = np.random.default_rng(0).normal(size=(8, 4))
    model = fit(kind, X, np.ones(8, dtype=int), seed=0)
    assert (model.predict(X) == 1).all()


@pytest.mark.parametrize("kind", ALL_KINDS, ids=_kind_id)
def test_fit_predict_deterministic(kind):
    X, y = make_blobs(n_per_class=20, separation=2.0, seed=3)
    X_test = np.random.default_rng(4).normal(size=(30, X.shape[1]))
    p1 = fit(kind, X, y, seed=9).predict(X_test)
    p2 = fit(kind, X, y, seed=9).predict(X_test)
    assert np.array_equal(p1, p2)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=_kind_id)
def test_empty_and_nan_inputs_rejected(kind):
    with pytest.raises(ValueError):
        fit(kind, np.empty((0, 3)), np.empty(0, dtype=int))
    X = np.ones((4, 3))
    X[1, 2] = np.nan
    with pytest.raises(ValueError):
        fit(kind, X, np.array([0, 1, 0, 1]))


@pytest.mark.parametrize("kind", ALL_KINDS, ids=_kind_id)
def test_predict_dimension_mismatch(kind):
    X, y = make_blobs(n_per_class=10, seed=6)
    model = fit(kind, X, y, seed=0)
    with pytest.raises(ValueError):
        model.predict(np.ones((3, X.shape[1] + 1)))


def test_predict_empty_input_gives_empty_labels():
    X, y = make_blobs(n_per_class=10, seed=6)
    model = fit(ModelKind("naive_bayes"), X, y)
    assert model.predict(np.empty((0, X.shape[1]))).shape == (0,)


def test_knn_k1_reproduces_training_labels():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(25, 5))  # distinct points almost surely
    y = rng.integers(0, 2, size=25)
    model = fit(ModelKind("knn", knn_k=1), X, y)
    assert np.array_equal(model.predict(X), y)


def test_knn_vote_tie_breaks_to_fake():
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    y = np.array([0, 0, 1, 1])
    model = fit(ModelKind("knn", knn_k=4), X, y)
    assert model.predict(np.array([[5.5]]))[0] == 0


@pytest.mark.parametrize("name", ["naive_bayes", "knn"])
def test_row_permutation_does_not_change_predictions(name):
    X, y = make_blobs(n_per_class=25, separation=3.0, seed=10)
    X_test = np.random.default_rng(11).normal(size=(40, X.shape[1])) * 2.0
    base = fit(ModelKind(name), X, y, seed=0).predict(X_test)
    perm = np.random.default_rng(12).permutation(len(y))
    shuffled = fit(ModelKind(name), X[perm], y[perm], seed=0).predict(X_test)
    assert np.array_equal(base, shuffled)


def test_adaboost_exponential_loss_never_increases():
    X, y = make_blobs(n_per_class=30, separation=1.5, seed=13)
    model = fit(ModelKind("adaboost", boost_rounds=40), X, y, seed=0)
    trace = np.array(model.training_exp_loss)
    assert len(trace) > 1
    assert (np.diff(trace) <= 1e-12).all()


def test_adaboost_training_error_drops_on_separable_data():
    X, y = make_blobs(n_per_class=30, seed=14)
    model = fit(ModelKind("adaboost"), X, y, seed=0)
    assert accuracy(model.predict(X), y) == 1.0


def test_forest_single_tree_no_bootstrap_equals_decision_tree():
    X, y = make_blobs(n_per_class=25, separation=2.0, seed=15)
    X_test = np.random.default_rng(16).normal(size=(50, X.shape[1])) * 3.0
    tree = fit(ModelKind("decision_tree"), X, y, seed=0)
    forest = fit(ModelKind("random_forest", forest_trees=1, forest_bootstrap=False,
                           forest_features=X.shape[1]), X, y, seed=0)
    assert np.array_equal(tree.predict(X_test), forest.predict(X_test))


def test_decision_tree_fits_training_data():
    rng = np.random.default_rng(17)
    X = rng.normal(size=(40, 4))
    y = rng.integers(0, 2, size=40)
    model = fit(ModelKind("decision_tree"), X, y)
    assert accuracy(model.predict(X), y) == 1.0  # distinct points, unlimited depth


def test_accuracy_trivials():
    assert accuracy([1] * 10, [1] * 10) == 1.0
    assert accuracy([0, 1], [1, 0]) == 0.0
    assert accuracy([1] * 8 + [0] * 2, [1] * 10) == pytest.approx(0.8)


def test_accuracy_errors():
    with pytest.raises(ValueError):
        accuracy([1, 0], [1])
    with pytest.raises(ValueError):
        accuracy([], [])


def test_encode_labels():
    assert encode_labels(["fake", "real", "fake"]).tolist() == [0, 1, 0]
    with pytest.raises(ValueError):
        encode_labels(["satire"])


def test_default_model_kinds_covers_all_six():
    assert sorted(k.name for k in default_model_kinds()) == sorted(MODEL_NAMES)


def test_hyperparameter_validation():
    with pytest.raises(ValueError):
        ModelKind("knn", knn_k=0)
    with pytest.raises(ValueError):
        ModelKind("svm_linear", svm_c=0.0)
    with pytest.raises(ValueError):
        ModelKind("bogus")
