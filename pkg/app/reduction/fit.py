from __future__ import annotations

import numpy as np

from app.reduction.lda import fit_lda
from app.reduction.model import ProjectionModel, ReductionConfig
from app.reduction.pca import fit_pca
from app.reduction.srda import fit_srda


def fit_reduction(config: ReductionConfig, features: np.ndarray, labels: np.ndarray) -> ProjectionModel:
    if config.method == "pca":
        return fit_pca(features, config.out_dim, config.variance_threshold)
    if config.method == "srda":
        # m' = min(Nc - 1, m) imposé par le nombre de réponses
        return fit_srda(features, labels, config.ridge_lambda)
    return fit_lda(features, labels, config.out_dim)
