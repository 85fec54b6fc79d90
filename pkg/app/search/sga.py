"""
app/search/sga.py

Algorithme génétique simple sur alpha entier.

Un individu est le code de Gray de (alpha - alpha_min) sur n bits : deux
alpha voisins ne diffèrent que d'un bit. Sélection par tournoi de taille 2,
croisement en un point, mutation bit à bit, élitisme de 1. alpha=0 fait
toujours partie de la population initiale. Un enfant dont le code dépasse
l'intervalle est remplacé par un tirage uniforme dans les bornes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from app.errors import ConfigError
from app.search.trace import AlphaSearchTrace, Fitness, as_memoized, preference_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SGAConfig:
    population: int = 20
    generations: int = 30
    mutation_rate: float = 0.05
    crossover_rate: float = 0.9
    alpha_min: int = -10
    alpha_max: int = 80
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population < 2:
            raise ConfigError("population doit être >= 2")
        if self.generations < 0:
            raise ConfigError("generations doit être >= 0")
        if not (0.0 <= self.mutation_rate <= 1.0 and 0.0 <= self.crossover_rate <= 1.0):
            raise ConfigError("mutation_rate et crossover_rate doivent être dans [0, 1]")
        if not self.alpha_min <= 0 <= self.alpha_max:
            raise ConfigError(
                f"Les bornes [{self.alpha_min}, {self.alpha_max}] doivent contenir alpha=0"
            )

    @property
    def span(self) -> int:
        return self.alpha_max - self.alpha_min

    @property
    def n_bits(self) -> int:
        return max(1, self.span.bit_length())


def encode(alpha: int, config: SGAConfig) -> np.ndarray:
    value = alpha - config.alpha_min
    gray = value ^ (value >> 1)
    return np.array([(gray >> i) & 1 for i in reversed(range(config.n_bits))], dtype=np.int8)


def decode(bits: np.ndarray, config: SGAConfig) -> int | None:
    """alpha codé par `bits`, ou None si le code dépasse alpha_max."""
    gray = 0
    for bit in bits:
        gray = (gray << 1) | int(bit)
    value, shift = gray, gray >> 1
    while shift:
        value ^= shift
        shift >>= 1
    if value > config.span:
        return None
    return config.alpha_min + value


def sga_search(fitness: Fitness, config: SGAConfig) -> AlphaSearchTrace:
    memo = as_memoized(fitness)
    rng = np.random.default_rng(config.seed)

    population = [0] + [
        int(a) for a in rng.integers(config.alpha_min, config.alpha_max + 1, size=config.population - 1)
    ]

    def tournament(scores: list[float]) -> int:
        i, j = rng.integers(0, len(population), size=2)
        return population[i] if scores[i] >= scores[j] else population[j]

    for generation in range(config.generations):
        scores = [memo(a) for a in population]
        elite = max(zip(population, scores), key=lambda item: preference_key(*item))[0]
        offspring = [elite]

        while len(offspring) < config.population:
            parent_a = encode(tournament(scores), config)
            parent_b = encode(tournament(scores), config)
            if config.n_bits > 1 and rng.random() < config.crossover_rate:
                point = int(rng.integers(1, config.n_bits))
                child_a = np.concatenate([parent_a[:point], parent_b[point:]])
                child_b = np.concatenate([parent_b[:point], parent_a[point:]])
            else:
                child_a, child_b = parent_a.copy(), parent_b.copy()

            for child in (child_a, child_b):
                if len(offspring) >= config.population:
                    break
                flips = rng.random(config.n_bits) < config.mutation_rate
                child[flips] ^= 1
                alpha = decode(child, config)
                if alpha is None:
                    alpha = int(rng.integers(config.alpha_min, config.alpha_max + 1))
                offspring.append(alpha)

        population = offspring
        logger.debug("Génération %d : élite alpha=%d (%.2f)", generation, elite, memo(elite))

    for a in population:
        memo(a)

    trace = memo.to_trace("sga", steps=config.generations)
    logger.info("SGA : meilleur alpha=%d (%.2f)", trace.best_alpha, trace.best_fitness)
    return trace
