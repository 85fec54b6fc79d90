"""
app/classify/pipeline.py

Pipeline d'évaluation : DCG (train uniquement) -> réduction -> projection
-> KNN -> précision, répété sur R × k folds.

La partie validation n'est jamais décalée par la DCG : ses labels sont
supposés inconnus.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from pydantic import BaseModel
from sklearn.metrics import accuracy_score
from sklearn.preprocessing import StandardScaler

from app.classify.knn import DEFAULT_K_CANDIDATES, KNNConfig, knn_predict, select_k
from app.dcg.transform import apply_dcg
from app.ingestion.csv_loader import Dataset
from app.ingestion.splits import fold_indices
from app.reduction.fit import fit_reduction
from app.reduction.model import ProjectionModel, ReductionConfig, project

logger = logging.getLogger(__name__)


class AccuracyStat(BaseModel):
    mean: float
    std_dev: float
    fold_scores: list[float]
    k_used: list[int] = []
    out_dims: list[int] = []

    @classmethod
    def from_scores(
        cls,
        scores: Sequence[float],
        k_used: Sequence[int] = (),
        out_dims: Sequence[int] = (),
    ) -> "AccuracyStat":
        arr = np.asarray(scores, dtype=np.float64)
        return cls(
            mean=float(arr.mean()),
            std_dev=float(arr.std(ddof=0)),
            fold_scores=[float(s) for s in arr],
            k_used=list(k_used),
            out_dims=list(out_dims),
        )


@dataclass(frozen=True)
class EvaluationProtocol:
    folds: int = 10
    repeats: int = 5
    seed: int = 0
    standardize: bool = False

    @property
    def seeds(self) -> list[int]:
        return [self.seed + r for r in range(self.repeats)]


@dataclass(frozen=True)
class FoldResult:
    accuracy: float
    k: int
    out_dim: int


def fit_projection(
    train: Dataset,
    alpha: int | None,
    reduction: ReductionConfig,
    standardize: bool = False,
) -> ProjectionModel:
    """W appris sur `train` (décalé par la DCG), tel que l'utilise score_split."""
    train_x = train.features
    if standardize:
        train_x = StandardScaler().fit_transform(train_x)
    if alpha is not None:
        train_x = apply_dcg(train_x, train.labels, alpha)
    return fit_reduction(reduction, train_x, train.labels)


def score_split(
    train: Dataset,
    test: Dataset,
    alpha: int | None,
    reduction: ReductionConfig,
    knn: KNNConfig | None = None,
    k_candidates: Sequence[int] = DEFAULT_K_CANDIDATES,
    standardize: bool = False,
) -> FoldResult:
    """
    Entraîne sur `train` et évalue sur `test`.

    :param alpha: nombre de boucles DCG ; None retire complètement l'étape DCG
    :param knn: configuration fixe, ou None pour choisir k sur le train seul
    """
    train_x = train.features
    test_x = test.features
    if standardize:
        scaler = StandardScaler().fit(train_x)
        train_x = scaler.transform(train_x)
        test_x = scaler.transform(test_x)

    if alpha is not None:
        train_x = apply_dcg(train_x, train.labels, alpha)

    model = fit_reduction(reduction, train_x, train.labels)
    train_y = project(model, train_x)
    test_y = project(model, test_x)

    if knn is None:
        knn = KNNConfig(k=select_k(train_y, train.labels, k_candidates))

    predictions = knn_predict(train_y, train.labels, test_y, knn)
    accuracy = 100.0 * accuracy_score(test.labels, predictions)
    return FoldResult(accuracy=float(accuracy), k=knn.k, out_dim=model.out_dim)


def evaluate_pipeline(
    d: Dataset,
    alpha: int | None,
    reduction: ReductionConfig,
    knn: KNNConfig | None,
    protocol: EvaluationProtocol,
    k_candidates: Sequence[int] = DEFAULT_K_CANDIDATES,
) -> AccuracyStat:
    """
    Validation croisée stratifiée à k folds répétée R fois (seeds
    seed, seed+1, ...). Les scores sont rangés dans l'ordre des folds.
    """
    results: list[FoldResult] = []
    for seed in protocol.seeds:
        for train_idx, val_idx in fold_indices(d, protocol.folds, seed):
            results.append(
                score_split(
                    d.subset(train_idx),
                    d.subset(val_idx),
                    alpha,
                    reduction,
                    knn,
                    k_candidates,
                    protocol.standardize,
                )
            )

    stat = AccuracyStat.from_scores(
        [r.accuracy for r in results],
        k_used=[r.k for r in results],
        out_dims=[r.out_dim for r in results],
    )
    logger.debug(
        "alpha=%s %s : %.2f ± %.2f", alpha, reduction.method, stat.mean, stat.std_dev
    )
    return stat
