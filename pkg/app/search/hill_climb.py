"""
app/search/hill_climb.py

Hill climbing sur alpha entier avec redémarrages aléatoires.
"""

from __future__ import annotations

import logging

import numpy as np

from app.errors import ConfigError
from app.search.trace import AlphaSearchTrace, Fitness, as_memoized, preference_key

logger = logging.getLogger(__name__)


def hill_climb(
    fitness: Fitness,
    start_alpha: int = 0,
    max_steps: int = 100,
    restarts: int = 5,
    seed: int = 0,
    alpha_min: int = -10,
    alpha_max: int = 80,
) -> AlphaSearchTrace:
    """
    `restarts` départs au total : le premier en `start_alpha`, les suivants
    tirés uniformément dans [alpha_min, alpha_max]. À chaque pas on passe au
    meilleur voisin (alpha ± 1) tant que l'amélioration est strictement
    positive. alpha=0 est toujours évalué.
    """
    if max_steps < 1:
        raise ConfigError("max_steps doit être >= 1")
    if restarts < 1:
        raise ConfigError("restarts doit être >= 1")
    if alpha_min > alpha_max:
        raise ConfigError(f"Intervalle de alpha vide : [{alpha_min}, {alpha_max}]")

    memo = as_memoized(fitness)
    rng = np.random.default_rng(seed)
    memo(0)

    total_steps = 0
    for run in range(restarts):
        if run == 0:
            current = int(np.clip(start_alpha, alpha_min, alpha_max))
        else:
            current = int(rng.integers(alpha_min, alpha_max + 1))
        current_fit = memo(current)

        for _ in range(max_steps):
            neighbors = [a for a in (current - 1, current + 1) if alpha_min <= a <= alpha_max]
            if not neighbors:
                break
            best = max(neighbors, key=lambda a: preference_key(a, memo(a)))
            if memo(best) > current_fit:
                current, current_fit = best, memo(best)
                total_steps += 1
            else:
                break
        logger.debug("Départ %d : optimum local alpha=%d (%.2f)", run, current, current_fit)

    trace = memo.to_trace("hill_climb", steps=total_steps)
    logger.info("Hill climbing : meilleur alpha=%d (%.2f)", trace.best_alpha, trace.best_fitness)
    return trace
