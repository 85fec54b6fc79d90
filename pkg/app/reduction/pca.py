"""
app/reduction/pca.py

PCA par décomposition propre symétrique de la covariance d'échantillon (m×m).
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from app.errors import DimensionError
from app.reduction.model import ProjectionModel, sign_normalize

logger = logging.getLogger(__name__)


def covariance_eigen(features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Valeurs propres (ordre décroissant) et vecteurs propres en colonnes de
    la covariance d'échantillon (dénominateur N-1), signes normalisés.
    """
    cov = np.atleast_2d(np.cov(features, rowvar=False, ddof=1))
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues, kind="stable")[::-1]
    return eigenvalues[order], sign_normalize(eigenvectors[:, order])


def auto_out_dim(eigenvalues: np.ndarray, threshold: float, max_dim: int) -> int:
    """Plus petit m' conservant au moins `threshold` de la variance totale."""
    positive = np.clip(eigenvalues, 0.0, None)
    total = positive.sum()
    if total <= 0:
        return 1
    ratios = np.cumsum(positive) / total
    # tolérance pour les données de rang plein exactement à 100 %
    dim = int(np.searchsorted(ratios, threshold - 1e-12) + 1)
    return max(1, min(dim, max_dim))


def fit_pca(
    train_features: np.ndarray,
    out_dim: int | Literal["auto"] = "auto",
    variance_threshold: float = 0.95,
) -> ProjectionModel:
    train_features = np.asarray(train_features, dtype=np.float64)
    n, m = train_features.shape
    if n < 2:
        raise DimensionError(f"PCA nécessite au moins 2 échantillons, reçu {n}")

    max_dim = min(n - 1, m)
    eigenvalues, eigenvectors = covariance_eigen(train_features)

    if out_dim == "auto":
        out_dim = auto_out_dim(eigenvalues, variance_threshold, max_dim)
        logger.debug("PCA : m' automatique = %d (seuil %.2f)", out_dim, variance_threshold)
    elif out_dim > max_dim:
        raise DimensionError(f"m' = {out_dim} dépasse min(N-1, m) = {max_dim}")

    return ProjectionModel(
        w=eigenvectors[:, :out_dim].T,
        center=train_features.mean(axis=0),
        method="pca",
        eigenvalues=eigenvalues,
    )
