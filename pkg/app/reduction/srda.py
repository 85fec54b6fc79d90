"""
app/reduction/srda.py

Spectral Regression Discriminant Analysis.

Les réponses sont les vecteurs indicateurs de classe orthogonalisés
(Gram-Schmidt) contre le vecteur constant ; chaque direction de W est
ensuite obtenue par régression ridge sur les features centrées.
Aucun solveur propre n'intervient dans l'étape discriminante.
"""

from __future__ import annotations

import logging

import numpy as np
from sklearn.linear_model import Ridge

from app.errors import DegenerateInputError, NumericalError, ShapeError
from app.reduction.model import ProjectionModel

logger = logging.getLogger(__name__)

_GS_TOL = 1e-10


def srda_responses(labels: np.ndarray) -> np.ndarray:
    """
    Matrice N×(Nc-1) des réponses : indicateurs de classe orthonormalisés
    après le vecteur constant, le vecteur nul résiduel étant écarté.
    """
    labels = np.asarray(labels)
    n = labels.shape[0]
    classes = np.unique(labels)
    if classes.shape[0] < 2:
        raise DegenerateInputError("SRDA nécessite au moins 2 classes")

    basis = [np.full(n, 1.0 / np.sqrt(n))]
    responses = []
    for c in classes:
        v = (labels == c).astype(np.float64)
        for q in basis:
            v = v - (q @ v) * q
        norm = np.linalg.norm(v)
        if norm > _GS_TOL:
            v = v / norm
            basis.append(v)
            responses.append(v)
    return np.column_stack(responses)


def ridge_directions(centered: np.ndarray, responses: np.ndarray, ridge_lambda: float) -> np.ndarray:
    """
    Résout (Xcᵀ Xc + λI) wᵀ = Xcᵀ y pour chaque colonne de `responses`.

    :return: matrice (n_responses, m)
    """
    if ridge_lambda <= 0:
        raise ValueError("ridge_lambda doit être > 0")
    m = centered.shape[1]
    gram = centered.T @ centered + ridge_lambda * np.eye(m)
    if not np.all(np.isfinite(gram)):
        raise NumericalError("Matrice de Gram non finie (valeurs infinies ou NaN dans les features)")
    condition = float(np.linalg.cond(gram))
    if not np.isfinite(condition) or condition > 1.0 / np.finfo(np.float64).eps:
        raise NumericalError(
            f"Système ridge singulier malgré λ={ridge_lambda} (conditionnement {condition:.3e})",
            condition_number=condition,
        )
    logger.debug("SRDA : conditionnement du système ridge = %.3e", condition)

    responses = np.asarray(responses, dtype=np.float64).reshape(centered.shape[0], -1)
    ridge = Ridge(alpha=ridge_lambda, fit_intercept=False, solver="cholesky")
    ridge.fit(centered, responses)
    return np.atleast_2d(ridge.coef_)


def fit_srda(train_features: np.ndarray, labels: np.ndarray, ridge_lambda: float = 0.01) -> ProjectionModel:
    train_features = np.asarray(train_features, dtype=np.float64)
    labels = np.asarray(labels)
    if labels.shape != (train_features.shape[0],):
        raise ShapeError(f"{labels.shape[0]} labels pour {train_features.shape[0]} lignes")

    center = train_features.mean(axis=0)
    responses = srda_responses(labels)
    # m' <= m : au-delà, les directions ridge seraient linéairement dépendantes
    max_dim = train_features.shape[1]
    if responses.shape[1] > max_dim:
        logger.debug("SRDA : %d réponses ramenées à m = %d", responses.shape[1], max_dim)
        responses = responses[:, :max_dim]
    w = ridge_directions(train_features - center, responses, ridge_lambda)
    return ProjectionModel(w=w, center=center, method="srda")
