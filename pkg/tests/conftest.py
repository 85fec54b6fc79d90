from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from app.ingestion.csv_loader import Dataset, make_dataset

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "raw"


def gaussian_dataset(
    means: list[list[float]],
    n_per_class: int = 30,
    std: float = 1.0,
    seed: int = 0,
    name: str = "gaussians",
) -> Dataset:
    """Une gaussienne sphérique par classe, labels 1..Nc."""
    rng = np.random.default_rng(seed)
    features, labels = [], []
    for label, mean in enumerate(means, start=1):
        features.append(rng.normal(mean, std, size=(n_per_class, len(mean))))
        labels.extend([label] * n_per_class)
    return make_dataset(np.vstack(features), labels, name=name)


def write_dataset_csv(path: Path, d: Dataset) -> Path:
    lines = [
        ",".join([*(repr(float(v)) for v in row), f"c{label}"])
        for row, label in zip(d.features, d.labels)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_config(path: Path, dataset_path: Path, **values) -> Path:
    entries = {
        "CONFIG_VERSION": 1,
        "DATASET_PATH": dataset_path,
        "LABEL_COLUMN": -1,
        "SEED": 3,
        "REDUCTION_METHOD": "pca",
        "KNN_K": 1,
        "FOLDS": 3,
        "REPEATS": 1,
        "STRATEGY": "grid",
        "ALPHA_MIN": -2,
        "ALPHA_MAX": 3,
    }
    entries.update({k.upper(): v for k, v in values.items()})
    path.write_text("".join(f"DCG_{k}={v}\n" for k, v in entries.items()), encoding="utf-8")
    return path


@pytest.fixture
def separable() -> Dataset:
    return gaussian_dataset([[0.0, 0.0, 0.0], [4.0, 4.0, 1.0]], n_per_class=20, std=1.0, seed=7)


@pytest.fixture
def synthetic_config(tmp_path: Path, separable: Dataset) -> Path:
    csv_path = write_dataset_csv(tmp_path / "synthetic.csv", separable)
    return write_config(tmp_path / "synthetic.env", csv_path)


def uci_path(filename: str) -> Path:
    return DATA_DIR / filename


def requires_uci(filename: str):
    return pytest.mark.skipif(
        not uci_path(filename).exists(),
        reason=f"{filename} absent de data/raw (voir README)",
    )
