"""
app/ingestion/splits.py

Découpages déterministes d'un Dataset : split train/test stratifié et
k-folds (stratifiés quand chaque classe a au moins k échantillons).
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass

import numpy as np
from sklearn.model_selection import KFold, StratifiedKFold, train_test_split

from app.errors import ConfigError, FoldError, StratificationError
from app.ingestion.csv_loader import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.7
    seed: int = 0
    stratified: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction doit être dans (0, 1), reçu {self.train_fraction}")
        if self.seed < 0:
            raise ConfigError("seed doit être un entier non signé")


def stratified_split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    indices = np.arange(d.n_samples)
    stratify = None
    if spec.stratified:
        counts = np.bincount(d.labels)[1:]
        present = counts[counts > 0]
        if present.min() < 2:
            raise StratificationError(
                f"Split stratifié impossible : une classe n'a qu'un seul échantillon ({d.name})"
            )
        stratify = d.labels

    try:
        train_idx, test_idx = train_test_split(
            indices,
            train_size=spec.train_fraction,
            random_state=spec.seed,
            shuffle=True,
            stratify=stratify,
        )
    except ValueError as e:
        raise StratificationError(f"Split impossible pour {d.name}: {e}") from e

    # ordre d'origine conservé dans chaque partie
    train_idx = np.sort(train_idx)
    test_idx = np.sort(test_idx)
    return d.subset(train_idx), d.subset(test_idx)


def fold_indices(d: Dataset, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Indices (train, validation) de chaque fold, triés."""
    if k < 2:
        raise FoldError(f"k doit être >= 2, reçu {k}")
    if k > d.n_samples:
        raise FoldError(f"k={k} supérieur au nombre d'échantillons ({d.n_samples})")

    counts = np.bincount(d.labels)[1:]
    if counts[counts > 0].min() >= k:
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    else:
        logger.warning(
            "Classe avec moins de %d échantillons dans %s : folds non stratifiés",
            k,
            d.name,
        )
        splitter = KFold(n_splits=k, shuffle=True, random_state=seed)

    return [
        (np.sort(train_idx), np.sort(val_idx))
        for train_idx, val_idx in splitter.split(d.features, d.labels)
    ]


def k_folds(d: Dataset, k: int, seed: int) -> list[tuple[Dataset, Dataset]]:
    return [(d.subset(tr), d.subset(va)) for tr, va in fold_indices(d, k, seed)]


def partition_fingerprint(d: Dataset, k: int, seeds: list[int]) -> str:
    """
    Empreinte SHA-256 de toutes les partitions utilisées (une par seed),
    enregistrée dans les rapports pour prouver que baseline et DCG
    consomment exactement les mêmes folds.
    """
    h = hashlib.sha256()
    for seed in seeds:
        h.update(f"seed={seed};".encode())
        for _, val_idx in fold_indices(d, k, seed):
            h.update(np.asarray(d.row_ids[val_idx], dtype=np.int64).tobytes())
            h.update(b"|")
    return h.hexdigest()
