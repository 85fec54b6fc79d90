"""
app/dcg/bounds.py

Validation de la plage de alpha pour les méthodes dont une formule interne
(terme exp(-||Wx - C_i||² / σ²)) n'est fiable que dans un intervalle borné :

    θ_min < (w · (m_l - α·l·1) - C_l)² / σ² < θ_max
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from app.errors import ConfigError, MissingClassError


@dataclass(frozen=True, eq=False)
class AlphaBoundParams:
    w_row: np.ndarray
    sigma: float
    theta_min: float
    theta_max: float
    class_minima: dict[int, np.ndarray] = field(default_factory=dict)
    centers: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sigma <= 0:
            raise ConfigError(f"sigma doit être > 0, reçu {self.sigma}")
        if not self.theta_min < self.theta_max:
            raise ConfigError(f"theta_min ({self.theta_min}) doit être < theta_max ({self.theta_max})")
        object.__setattr__(self, "w_row", np.asarray(self.w_row, dtype=np.float64).reshape(-1))


def class_minima(features: np.ndarray, labels: np.ndarray) -> dict[int, np.ndarray]:
    """Minimum colonne par colonne des échantillons de chaque classe."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    labels = np.asarray(labels)
    return {int(c): features[labels == c].min(axis=0) for c in np.unique(labels)}


def bound_value(p: AlphaBoundParams, alpha: int, label: int) -> float:
    if label not in p.class_minima:
        raise MissingClassError(f"Aucun minimum de classe pour le label {label}")
    if label not in p.centers:
        raise MissingClassError(f"Aucun centre C_i pour le label {label}")
    shifted = np.asarray(p.class_minima[label], dtype=np.float64) - alpha * label
    return float((p.w_row @ shifted - p.centers[label]) ** 2 / p.sigma**2)


def validate_alpha_bound(p: AlphaBoundParams, alpha: int, label: int) -> bool:
    value = bound_value(p, alpha, label)
    return p.theta_min < value < p.theta_max


def alpha_bound_range(p: AlphaBoundParams, alpha_min: int, alpha_max: int) -> list[int]:
    """Les alpha de [alpha_min, alpha_max] valides pour toutes les classes connues."""
    labels = sorted(p.class_minima)
    return [
        alpha
        for alpha in range(alpha_min, alpha_max + 1)
        if all(validate_alpha_bound(p, alpha, label) for label in labels)
    ]
