from __future__ import annotations

import numpy as np
import pytest

from app.errors import FoldError, ParseError, SchemaError, StratificationError
from app.ingestion.csv_loader import Dataset, load_csv, make_dataset
from app.ingestion.splits import SplitSpec, fold_indices, k_folds, stratified_split


# =========================
#   load_csv
# =========================

def test_minimal_file_label_encoding_by_sort_order(tmp_path):
    path = tmp_path / "mini.csv"
    path.write_text("1,2,B\n3,4,A\n")

    d = load_csv(path, label_column=3)

    assert d.n_samples == 2
    assert d.n_features == 2
    assert d.encoding.class_names == ("A", "B")
    assert d.labels.tolist() == [2, 1]
    np.testing.assert_array_equal(d.features, [[1, 2], [3, 4]])


def test_two_row_file_labels_follow_sort_order(tmp_path):
    path = tmp_path / "mini.csv"
    path.write_text("1,2,A\n3,4,B\n")

    d = load_csv(path, label_column=3)

    assert d.labels.tolist() == [1, 2]
    assert d.encoding.mapping == {"A": 1, "B": 2}


def test_negative_label_column_and_dropped_id(tmp_path):
    path = tmp_path / "ids.csv"
    path.write_text("101,5.0,1.0,x\n102,6.0,2.0,y\n103,7.0,3.0,x\n")

    d = load_csv(path, label_column=-1, drop_columns=[1])

    assert d.n_features == 2
    np.testing.assert_array_equal(d.features[:, 0], [5.0, 6.0, 7.0])


def test_header_and_named_label(tmp_path):
    path = tmp_path / "named.csv"
    path.write_text("a,b,cls\n1,2,u\n3,4,v\n")

    d = load_csv(path, label_column="cls", has_header=True)

    assert d.n_features == 2
    assert d.encoding.class_names == ("u", "v")


def test_missing_values_dropped_and_counted(tmp_path):
    path = tmp_path / "missing.csv"
    path.write_text("1,2,A\n?,4,B\n5,6,B\n7,,A\n")

    d = load_csv(path, label_column=3, missing_policy="drop_row")

    assert d.n_samples == 2
    assert d.dropped_rows == 2
    assert d.row_ids.tolist() == [0, 2]


def test_missing_value_error_names_row_and_column(tmp_path):
    path = tmp_path / "missing.csv"
    path.write_text("1,2,A\n3,oops,B\n")

    with pytest.raises(ParseError) as excinfo:
        load_csv(path, label_column=3, missing_policy="error")

    assert excinfo.value.row == 1
    assert excinfo.value.column == 1


def test_single_class_is_schema_error(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("1,2,A\n3,4,A\n")

    with pytest.raises(SchemaError):
        load_csv(path, label_column=3)


def test_label_encoding_stable_across_loads(tmp_path):
    path = tmp_path / "stable.csv"
    path.write_text("1,z\n2,a\n3,m\n4,a\n")

    first = load_csv(path, label_column=2)
    second = load_csv(path, label_column=2)

    assert first.encoding == second.encoding
    np.testing.assert_array_equal(first.labels, second.labels)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_dataset_rejects_non_finite_features(bad):
    features = np.array([[1.0, 2.0], [3.0, bad], [5.0, 6.0]])

    with pytest.raises(SchemaError):
        make_dataset(features, ["a", "b", "a"])


def test_dataset_rejects_labels_outside_encoding():
    d = make_dataset(np.zeros((2, 1)), ["a", "b"])

    with pytest.raises(SchemaError):
        Dataset(features=np.zeros((2, 1)), labels=[1, 3], encoding=d.encoding)
    with pytest.raises(SchemaError):
        Dataset(features=np.zeros((2, 1)), labels=[0, 1], encoding=d.encoding)


def test_single_row_cannot_form_dataset():
    with pytest.raises(SchemaError):
        make_dataset(np.zeros((1, 2)), ["a"])


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_csv("does/not/exist.csv")


# =========================
#   Splits
# =========================

def _ten_samples():
    features = np.arange(20, dtype=float).reshape(10, 2)
    return make_dataset(features, [1] * 5 + [2] * 5)


def test_stratified_split_exact_divisibility():
    d = _ten_samples()

    for seed in range(5):
        train, test = stratified_split(d, SplitSpec(train_fraction=0.8, seed=seed))
        assert np.bincount(train.labels).tolist() == [0, 4, 4]
        assert test.n_samples == 2


def test_stratified_split_deterministic_and_round_trip():
    d = _ten_samples()
    spec = SplitSpec(train_fraction=0.6, seed=11)

    train_a, test_a = stratified_split(d, spec)
    train_b, test_b = stratified_split(d, spec)

    np.testing.assert_array_equal(train_a.row_ids, train_b.row_ids)
    np.testing.assert_array_equal(test_a.row_ids, test_b.row_ids)

    row_ids = np.concatenate([train_a.row_ids, test_a.row_ids])
    features = np.vstack([train_a.features, test_a.features])
    order = np.argsort(row_ids)
    np.testing.assert_array_equal(features[order], d.features)


def test_stratified_split_haberman_sized():
    rng = np.random.default_rng(0)
    d = make_dataset(rng.normal(size=(306, 3)), [1] * 225 + [2] * 81)

    train, _ = stratified_split(d, SplitSpec(train_fraction=0.7, seed=1))

    assert abs(train.n_samples - 214) <= 1
    counts = np.bincount(train.labels)[1:]
    assert abs(counts[0] - 0.7 * 225) <= 1
    assert abs(counts[1] - 0.7 * 81) <= 1


def test_stratified_split_rejects_singleton_class():
    d = make_dataset(np.arange(8, dtype=float).reshape(4, 2), [1, 1, 1, 2])

    with pytest.raises(StratificationError):
        stratified_split(d, SplitSpec(train_fraction=0.5, seed=0))


def test_k_folds_exact_sizes():
    d = _ten_samples()

    folds = k_folds(d, k=5, seed=0)

    assert len(folds) == 5
    assert all(val.n_samples == 2 for _, val in folds)


def test_k_folds_leave_one_out():
    d = _ten_samples()

    folds = fold_indices(d, k=10, seed=3)

    assert all(len(val) == 1 for _, val in folds)
    assert sorted(int(val[0]) for _, val in folds) == list(range(10))


def test_k_folds_haberman_sized_cover_all_rows():
    rng = np.random.default_rng(1)
    labels = [1] * 225 + [2] * 81
    d = make_dataset(rng.normal(size=(306, 3)), labels)

    folds = fold_indices(d, k=10, seed=5)

    sizes = {len(val) for _, val in folds}
    assert sizes <= {30, 31}
    union = np.sort(np.concatenate([val for _, val in folds]))
    np.testing.assert_array_equal(union, np.arange(306))
    fold_labels = np.concatenate([d.labels[val] for _, val in folds])
    assert sorted(fold_labels.tolist()) == sorted(labels)


def test_k_folds_deterministic():
    d = _ten_samples()

    first = fold_indices(d, k=5, seed=9)
    second = fold_indices(d, k=5, seed=9)

    for (tr_a, va_a), (tr_b, va_b) in zip(first, second):
        np.testing.assert_array_equal(tr_a, tr_b)
        np.testing.assert_array_equal(va_a, va_b)


def test_k_folds_more_than_samples():
    with pytest.raises(FoldError):
        k_folds(_ten_samples(), k=11, seed=0)


def test_summary_counts_classes(tmp_path):
    path = tmp_path / "counts.csv"
    path.write_text("1,a\n2,b\n3,b\n?,a\n")

    summary = load_csv(path, label_column=2).summary()

    assert summary["class_counts"] == [1, 2]
    assert summary["dropped_rows"] == 1
    assert summary["class_names"] == ["a", "b"]
