"""
app/classify/knn.py

Classifieur k plus proches voisins (distance euclidienne).

- égalités de distance : l'échantillon d'entraînement d'indice le plus
  petit passe en premier (tri stable)
- égalités de vote : le plus petit label l'emporte
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from app.errors import ConfigError, DimensionError

logger = logging.getLogger(__name__)

DEFAULT_K_CANDIDATES = (1, 3, 5, 7, 9, 11, 13, 15)


@dataclass(frozen=True)
class KNNConfig:
    k: int = 1
    metric: Literal["euclidean"] = "euclidean"
    tie_break: Literal["smallest_label"] = "smallest_label"

    def __post_init__(self) -> None:
        if self.k < 1 or self.k % 2 == 0:
            raise ConfigError(f"k doit être un entier impair positif, reçu {self.k}")
        if self.metric != "euclidean":
            raise ConfigError(f"Métrique non supportée : {self.metric}")


def pairwise_distances(query: np.ndarray, train: np.ndarray) -> np.ndarray:
    return cdist(query, train, metric="euclidean")


def _vote(neighbor_labels: np.ndarray, classes: np.ndarray) -> np.ndarray:
    # classes triées : argmax renvoie la première, donc le plus petit label
    counts = (neighbor_labels[:, :, np.newaxis] == classes[np.newaxis, np.newaxis, :]).sum(axis=1)
    return classes[np.argmax(counts, axis=1)]


def knn_predict(
    train_features: np.ndarray,
    train_labels: np.ndarray,
    query_features: np.ndarray,
    config: KNNConfig,
) -> np.ndarray:
    train_features = np.atleast_2d(np.asarray(train_features, dtype=np.float64))
    query_features = np.atleast_2d(np.asarray(query_features, dtype=np.float64))
    train_labels = np.asarray(train_labels)

    if train_features.shape[0] == 0:
        raise ConfigError("Ensemble d'entraînement vide")
    if train_features.shape[1] != query_features.shape[1]:
        raise DimensionError(
            f"Dimensions incompatibles : train {train_features.shape[1]}, requête {query_features.shape[1]}"
        )
    if config.k > train_features.shape[0]:
        raise ConfigError(f"k={config.k} supérieur à la taille du train ({train_features.shape[0]})")

    distances = pairwise_distances(query_features, train_features)
    neighbors = np.argsort(distances, axis=1, kind="stable")[:, : config.k]
    return _vote(train_labels[neighbors], np.unique(train_labels))


def select_k(
    train_features: np.ndarray,
    train_labels: np.ndarray,
    candidates: Sequence[int] = DEFAULT_K_CANDIDATES,
) -> int:
    """
    Choix de k par leave-one-out sur l'ensemble d'entraînement seul.
    À précision égale, le plus petit k est retenu.
    """
    train_features = np.atleast_2d(np.asarray(train_features, dtype=np.float64))
    train_labels = np.asarray(train_labels)
    n = train_features.shape[0]
    usable = sorted(k for k in candidates if k <= n - 1)
    if not usable:
        logger.warning("Aucun k candidat utilisable avec %d échantillons : k=1", n)
        return 1

    distances = pairwise_distances(train_features, train_features)
    np.fill_diagonal(distances, np.inf)
    order = np.argsort(distances, axis=1, kind="stable")
    classes = np.unique(train_labels)

    best_k, best_acc = usable[0], -1.0
    for k in usable:
        predictions = _vote(train_labels[order[:, :k]], classes)
        acc = float(np.mean(predictions == train_labels))
        if acc > best_acc:
            best_k, best_acc = k, acc
    return best_k
