from __future__ import annotations

import numpy as np
import pytest
from sklearn.preprocessing import StandardScaler

from app.classify.knn import KNNConfig, knn_predict, select_k
from app.classify.pipeline import AccuracyStat, EvaluationProtocol, evaluate_pipeline, score_split
from app.errors import ConfigError, DimensionError
from app.ingestion.splits import k_folds
from app.reduction.model import ReductionConfig
from conftest import gaussian_dataset


# =========================
#   KNN
# =========================

def test_query_equal_to_training_row():
    train = np.array([[0.0, 1.0], [5.0, 5.0], [9.0, 2.0]])

    assert knn_predict(train, [3, 1, 2], [[5.0, 5.0]], KNNConfig(k=1)).tolist() == [1]


def test_nearest_point_geometry():
    pred = knn_predict([[0.0, 0.0], [10.0, 10.0]], [1, 2], [[1.0, 1.0]], KNNConfig(k=1))

    assert pred.tolist() == [1]


def test_six_point_line_with_k3():
    train = np.array([0, 1, 2, 10, 11, 12], dtype=float)[:, None]

    pred = knn_predict(train, [1, 1, 1, 2, 2, 2], [[3.0]], KNNConfig(k=3))

    assert pred.tolist() == [1]


def test_vote_tie_goes_to_smallest_label():
    # 3 voisins de 3 classes différentes
    train = np.array([[1.0], [-1.0], [2.0]])

    pred = knn_predict(train, [3, 2, 1], [[0.0]], KNNConfig(k=3))

    assert pred.tolist() == [1]


def test_permuting_training_rows_without_ties():
    rng = np.random.default_rng(0)
    train = rng.normal(size=(30, 2))
    labels = rng.integers(1, 4, size=30)
    query = rng.normal(size=(10, 2))
    perm = rng.permutation(30)

    np.testing.assert_array_equal(
        knn_predict(train, labels, query, KNNConfig(k=5)),
        knn_predict(train[perm], labels[perm], query, KNNConfig(k=5)),
    )


def test_k_larger_than_train():
    with pytest.raises(ConfigError):
        knn_predict([[0.0], [1.0]], [1, 2], [[0.5]], KNNConfig(k=3))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        knn_predict([[0.0, 1.0]], [1], [[0.5]], KNNConfig(k=1))


@pytest.mark.parametrize("k", [0, 2, -1])
def test_k_must_be_odd_positive(k):
    with pytest.raises(ConfigError):
        KNNConfig(k=k)


def test_select_k_leave_one_out():
    x = np.array([0, 1, 2, 3, 4, 10, 11, 12, 13, 14], dtype=float)[:, None]
    labels = np.array([1, 1, 2, 1, 1, 2, 2, 2, 2, 2])

    # k=1 : 8/10, k=3 et k=5 : 9/10 -> plus petit k
    assert select_k(x, labels, (1, 3, 5)) == 3


def test_select_k_without_usable_candidate():
    assert select_k([[0.0]], [1], (3, 5)) == 1


def test_leave_one_out_self_classification_by_brute_force():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(15, 2))
    labels = rng.integers(1, 3, size=15)

    correct = 0
    for i in range(15):
        mask = np.arange(15) != i
        correct += int(knn_predict(x[mask], labels[mask], x[i : i + 1], KNNConfig(k=1))[0] == labels[i])

    distances = np.linalg.norm(x[:, None, :] - x[None, :, :], axis=2)
    np.fill_diagonal(distances, np.inf)
    expected = int(np.sum(labels[np.argmin(distances, axis=1)] == labels))
    assert correct == expected


# =========================
#   Pipeline
# =========================

def test_accuracy_stat_recomputable():
    stat = AccuracyStat.from_scores([50.0, 75.0, 100.0])

    assert stat.mean == pytest.approx(75.0)
    assert stat.std_dev == pytest.approx(np.std([50.0, 75.0, 100.0]))
    assert stat.fold_scores == [50.0, 75.0, 100.0]


def test_protocol_seeds():
    assert EvaluationProtocol(folds=5, repeats=3, seed=10).seeds == [10, 11, 12]


@pytest.mark.parametrize("method", ["pca", "srda", "lda"])
def test_alpha_zero_equals_no_dcg_stage(separable, method):
    protocol = EvaluationProtocol(folds=5, repeats=2, seed=1)
    reduction = ReductionConfig(method=method)

    with_zero = evaluate_pipeline(separable, 0, reduction, KNNConfig(k=1), protocol)
    without = evaluate_pipeline(separable, None, reduction, KNNConfig(k=1), protocol)

    assert with_zero.fold_scores == without.fold_scores


def test_srda_pipeline_on_single_feature_three_classes():
    d = gaussian_dataset([[0.0], [5.0], [10.0]], n_per_class=15, seed=2)
    protocol = EvaluationProtocol(folds=3, repeats=1, seed=0)

    stat = evaluate_pipeline(d, 0, ReductionConfig(method="srda"), KNNConfig(k=1), protocol)

    assert set(stat.out_dims) == {1}
    assert stat.mean > 80.0


def test_pipeline_scores_shape_and_range(separable):
    protocol = EvaluationProtocol(folds=4, repeats=3, seed=0)

    stat = evaluate_pipeline(separable, 2, ReductionConfig(method="pca"), None, protocol, k_candidates=(1, 3))

    assert len(stat.fold_scores) == 12
    assert all(0.0 <= s <= 100.0 for s in stat.fold_scores)
    assert stat.mean == pytest.approx(np.mean(stat.fold_scores), abs=1e-9)
    assert stat.std_dev == pytest.approx(np.std(stat.fold_scores), abs=1e-9)
    assert set(stat.k_used) <= {1, 3}
    assert len(stat.out_dims) == 12


def test_pipeline_is_deterministic(separable):
    protocol = EvaluationProtocol(folds=5, repeats=1, seed=7)
    reduction = ReductionConfig(method="srda")

    first = evaluate_pipeline(separable, 4, reduction, None, protocol)
    second = evaluate_pipeline(separable, 4, reduction, None, protocol)

    assert first == second


def test_score_split_reports_k_and_dimension(separable):
    train, test = k_folds(separable, k=4, seed=0)[0]

    result = score_split(train, test, 3, ReductionConfig(method="pca", out_dim=2), KNNConfig(k=3))

    assert result.k == 3
    assert result.out_dim == 2
    assert 0.0 <= result.accuracy <= 100.0


def test_standardize_fitted_on_train_only(separable):
    train, test = k_folds(separable, k=4, seed=2)[0]
    scaler = StandardScaler().fit(train.features)
    reduction = ReductionConfig(method="pca", out_dim=2)

    inline = score_split(train, test, 5, reduction, KNNConfig(k=1), standardize=True)
    manual = score_split(
        train.with_features(scaler.transform(train.features)),
        test.with_features(scaler.transform(test.features)),
        5,
        reduction,
        KNNConfig(k=1),
    )

    assert inline == manual


def test_well_separated_classes_score_high():
    d = gaussian_dataset([[0.0, 0.0], [20.0, 20.0]], n_per_class=20, std=1.0, seed=3)

    stat = evaluate_pipeline(d, 0, ReductionConfig(method="pca"), KNNConfig(k=1), EvaluationProtocol(folds=5, repeats=1))

    assert stat.mean == 100.0
