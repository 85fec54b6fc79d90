from __future__ import annotations

import logging

from app.errors import ConfigError
from app.search.trace import AlphaSearchTrace, Fitness, as_memoized

logger = logging.getLogger(__name__)


def grid_search(fitness: Fitness, alpha_min: int, alpha_max: int) -> AlphaSearchTrace:
    """Évalue chaque alpha entier de [alpha_min, alpha_max] une seule fois."""
    if alpha_min > alpha_max:
        raise ConfigError(f"Intervalle de alpha vide : [{alpha_min}, {alpha_max}]")

    memo = as_memoized(fitness)
    for alpha in range(alpha_min, alpha_max + 1):
        memo(alpha)

    trace = memo.to_trace("grid")
    logger.info(
        "Grille [%d, %d] : meilleur alpha=%d (%.2f)",
        alpha_min,
        alpha_max,
        trace.best_alpha,
        trace.best_fitness,
    )
    return trace
