"""
app/search/trace.py

Trace d'une recherche de alpha et mémoïsation de la fonction de fitness.
"""

from __future__ import annotations

import io
import logging
from typing import Callable, Literal

from pydantic import BaseModel

logger = logging.getLogger(__name__)

Strategy = Literal["fixed", "grid", "hill_climb", "sga"]
Fitness = Callable[[int], float]

CSV_HEADER = "alpha,accuracy_percent"


class AlphaEvaluation(BaseModel):
    alpha: int
    fitness: float


class AlphaSearchTrace(BaseModel):
    strategy: Strategy
    evaluations: list[AlphaEvaluation]
    best_alpha: int
    best_fitness: float
    steps: int | None = None

    def fitness_of(self, alpha: int) -> float | None:
        for e in self.evaluations:
            if e.alpha == alpha:
                return e.fitness
        return None

    def table(self) -> list[tuple[int, float]]:
        return sorted((e.alpha, e.fitness) for e in self.evaluations)

    def to_csv(self) -> str:
        return table_to_csv(self.table())


def table_to_csv(rows: list[tuple[int, float]]) -> str:
    buffer = io.StringIO()
    buffer.write(CSV_HEADER + "\n")
    for alpha, accuracy in rows:
        buffer.write(f"{alpha},{float(accuracy)!r}\n")
    return buffer.getvalue()


def preference_key(alpha: int, fitness: float) -> tuple[float, int, int]:
    """
    Clé de classement : meilleure fitness, puis plus petit |alpha|,
    puis alpha positif avant négatif.
    """
    return (fitness, -abs(alpha), 1 if alpha > 0 else 0)


class MemoizedFitness:
    """
    Enveloppe la fonction de fitness : chaque alpha distinct n'est évalué
    qu'une seule fois, dans l'ordre du premier appel.
    """

    def __init__(self, fitness: Fitness):
        self._fitness = fitness
        self.cache: dict[int, float] = {}
        self.calls = 0

    def __call__(self, alpha: int) -> float:
        alpha = int(alpha)
        if alpha not in self.cache:
            self.calls += 1
            value = float(self._fitness(alpha))
            self.cache[alpha] = value
            logger.debug("fitness(alpha=%d) = %.4f", alpha, value)
        return self.cache[alpha]

    def best(self) -> tuple[int, float]:
        alpha, fitness = max(self.cache.items(), key=lambda item: preference_key(*item))
        return alpha, fitness

    def to_trace(self, strategy: Strategy, steps: int | None = None) -> AlphaSearchTrace:
        best_alpha, best_fitness = self.best()
        return AlphaSearchTrace(
            strategy=strategy,
            evaluations=[AlphaEvaluation(alpha=a, fitness=f) for a, f in self.cache.items()],
            best_alpha=best_alpha,
            best_fitness=best_fitness,
            steps=steps,
        )


def as_memoized(fitness: Fitness) -> MemoizedFitness:
    return fitness if isinstance(fitness, MemoizedFitness) else MemoizedFitness(fitness)
