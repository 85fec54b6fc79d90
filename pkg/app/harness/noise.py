"""
app/harness/noise.py

Injection de bruit gaussien sur un sous-ensemble aléatoire de cellules.
"""

from __future__ import annotations

import logging

import numpy as np

from app.errors import ConfigError
from app.ingestion.csv_loader import Dataset

logger = logging.getLogger(__name__)


def inject_noise(d: Dataset, fraction: float, magnitude: float, seed: int) -> Dataset:
    """
    Tire floor(fraction × N × m) cellules sans remise et leur ajoute
    N(0, (magnitude × écart-type de la colonne)²). Les labels ne changent pas.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ConfigError(f"fraction doit être dans [0, 1], reçu {fraction}")
    if magnitude < 0:
        raise ConfigError(f"magnitude doit être >= 0, reçu {magnitude}")

    features = np.array(d.features, dtype=np.float64)
    n, m = features.shape
    n_cells = int(np.floor(fraction * n * m))
    if n_cells == 0 or magnitude == 0:
        return d.with_features(features)

    rng = np.random.default_rng(seed)
    cells = rng.choice(n * m, size=n_cells, replace=False)
    rows, cols = np.divmod(cells, m)
    column_std = features.std(axis=0, ddof=1) if n > 1 else np.zeros(m)
    features[rows, cols] += rng.normal(0.0, 1.0, size=n_cells) * magnitude * column_std[cols]

    logger.info(
        "Bruit injecté dans %s : %d cellules (fraction=%.3f, magnitude=%.2f, seed=%d)",
        d.name,
        n_cells,
        fraction,
        magnitude,
        seed,
    )
    return d.with_features(features)
