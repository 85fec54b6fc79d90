"""
app/dcg/separability.py

Séparabilité des classes (distance minimale entre moyennes de classes),
détection de la "loop's problem maker range" (LPMR) et statistiques par
classe utilisées pour vérifier les invariants de la transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.errors import ConfigError, DegenerateInputError, ShapeError
from app.reduction.pca import covariance_eigen


@dataclass(frozen=True, eq=False)
class SeparabilityScore:
    min_pair_distance: float
    per_pair: np.ndarray
    classes: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClassStatistics:
    label: int
    count: int
    mean: np.ndarray
    covariance: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _class_means(features: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    labels = np.asarray(labels)
    if labels.shape != (features.shape[0],):
        raise ShapeError(f"{labels.shape[0]} labels pour {features.shape[0]} lignes")
    classes = np.unique(labels)
    if classes.shape[0] < 2:
        raise DegenerateInputError("La séparabilité nécessite au moins 2 classes")
    means = np.stack([features[labels == c].mean(axis=0) for c in classes])
    return classes, means


def _score_from_means(classes: np.ndarray, means: np.ndarray) -> SeparabilityScore:
    diff = means[:, np.newaxis, :] - means[np.newaxis, :, :]
    per_pair = np.sqrt(np.sum(diff * diff, axis=2))
    off_diagonal = per_pair[~np.eye(per_pair.shape[0], dtype=bool)]
    return SeparabilityScore(
        min_pair_distance=float(off_diagonal.min()),
        per_pair=per_pair,
        classes=tuple(int(c) for c in classes),
    )


def separability(features: np.ndarray, labels: np.ndarray) -> SeparabilityScore:
    classes, means = _class_means(features, labels)
    return _score_from_means(classes, means)


def lpmr_table(
    features: np.ndarray,
    labels: np.ndarray,
    alpha_min: int,
    alpha_max: int,
) -> list[tuple[int, float, bool]]:
    """
    Lignes (alpha, min_pair_distance, dans_la_LPMR) pour chaque alpha entier.

    La DCG translate chaque classe en bloc : la moyenne de la classe l
    devient mu_l - alpha * l * 1, on décale donc directement les moyennes.
    """
    if alpha_min > alpha_max:
        raise ConfigError(f"Intervalle de alpha vide : [{alpha_min}, {alpha_max}]")
    classes, means = _class_means(features, labels)
    baseline = _score_from_means(classes, means).min_pair_distance

    rows = []
    for alpha in range(alpha_min, alpha_max + 1):
        shifted = means - (alpha * classes.astype(np.int64))[:, np.newaxis]
        distance = _score_from_means(classes, shifted).min_pair_distance
        rows.append((alpha, distance, distance < baseline))
    return rows


def scan_lpmr(features: np.ndarray, labels: np.ndarray, alpha_range: tuple[int, int]) -> set[int]:
    alpha_min, alpha_max = alpha_range
    return {alpha for alpha, _, inside in lpmr_table(features, labels, alpha_min, alpha_max) if inside}


def dispersion_threshold(features: np.ndarray, labels: np.ndarray) -> int:
    """
    Seuil T au-delà duquel la séparabilité croît strictement avec alpha :
    ceil(max ||mu_a - mu_b|| / min |l_a - l_b|) + 1.
    """
    classes, means = _class_means(features, labels)
    score = _score_from_means(classes, means)
    gaps = np.abs(classes[:, np.newaxis] - classes[np.newaxis, :])
    min_gap = gaps[gaps > 0].min()
    return int(np.ceil(score.per_pair.max() / min_gap)) + 1


def class_statistics(features: np.ndarray, labels: np.ndarray) -> list[ClassStatistics]:
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    labels = np.asarray(labels)
    stats = []
    for c in np.unique(labels):
        rows = features[labels == c]
        if rows.shape[0] >= 2:
            cov = np.atleast_2d(np.cov(rows, rowvar=False, ddof=1))
            eigenvalues, eigenvectors = covariance_eigen(rows)
        else:
            m = features.shape[1]
            cov = np.zeros((m, m))
            eigenvalues, eigenvectors = np.zeros(m), np.eye(m)
        stats.append(
            ClassStatistics(
                label=int(c),
                count=int(rows.shape[0]),
                mean=rows.mean(axis=0),
                covariance=cov,
                eigenvalues=eigenvalues,
                eigenvectors=eigenvectors,
            )
        )
    return stats
