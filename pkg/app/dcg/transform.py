"""
app/dcg/transform.py

Transformation "Dispelling Classes Gradually" (DCG).

Chaque échantillon d'entraînement est translaté de -alpha * label sur toutes
ses features : les classes se déplacent en bloc le long de la diagonale,
leurs moyennes s'écartent, la géométrie intra-classe ne change pas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from app.errors import ConfigError, ShapeError

AlphaOrigin = Literal["fixed", "grid", "hill_climb", "sga"]


@dataclass(frozen=True)
class DCGParams:
    alpha: int
    origin: AlphaOrigin = "fixed"

    @property
    def is_identity(self) -> bool:
        return self.alpha == 0


def apply_dcg(features: np.ndarray, labels: np.ndarray, alpha: int) -> np.ndarray:
    """
    Retourne features[i][j] - alpha * labels[i] pour chaque colonne j.

    Soustraire le label alpha fois revient à une seule soustraction de
    alpha * label : on utilise la forme fermée. L'entrée n'est pas modifiée.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if features.ndim != 2:
        raise ShapeError(f"features doit être une matrice N×m, reçu shape {features.shape}")
    if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
        raise ShapeError(
            f"{labels.shape[0] if labels.ndim else 0} labels pour {features.shape[0]} lignes"
        )
    if not np.isfinite(alpha) or int(alpha) != alpha:
        raise ConfigError(f"alpha doit être entier, reçu {alpha!r}")

    if alpha == 0:
        return features.copy()
    shift = int(alpha) * labels.astype(np.int64)
    return features - shift[:, np.newaxis]
