"""
app/reduction/lda.py

LDA classique (scikit-learn, solveur propre avec shrinkage Ledoit-Wolf
pour rester défini quand la covariance intra-classe est singulière).
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from sklearn.discriminant_analysis import LinearDiscriminantAnalysis

from app.errors import DegenerateInputError, DimensionError, NumericalError
from app.reduction.model import ProjectionModel, sign_normalize


def fit_lda(
    train_features: np.ndarray,
    labels: np.ndarray,
    out_dim: int | Literal["auto"] = "auto",
) -> ProjectionModel:
    train_features = np.asarray(train_features, dtype=np.float64)
    n_classes = np.unique(labels).shape[0]
    if n_classes < 2:
        raise DegenerateInputError("LDA nécessite au moins 2 classes")

    max_dim = min(n_classes - 1, train_features.shape[1])
    if out_dim == "auto":
        out_dim = max_dim
    elif out_dim > max_dim:
        raise DimensionError(f"m' = {out_dim} dépasse min(Nc-1, m) = {max_dim}")

    lda = LinearDiscriminantAnalysis(solver="eigen", shrinkage="auto")
    try:
        lda.fit(train_features, labels)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"LDA : échec de la décomposition propre ({e})") from e

    w = sign_normalize(lda.scalings_[:, :out_dim]).T
    return ProjectionModel(w=w, center=train_features.mean(axis=0), method="lda")
