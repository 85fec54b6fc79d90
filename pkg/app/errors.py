"""
app/errors.py

Hiérarchie d'exceptions du toolkit DCG.

Chaque famille hérite aussi de l'exception standard correspondante
(ValueError, KeyError, ArithmeticError) pour que le code appelant
qui attrape déjà ces types continue de fonctionner.
"""

from __future__ import annotations

import numpy as np


class DCGError(Exception):
    """Racine de toutes les erreurs du projet."""

    exit_code: int = 1


# =========================
#   Configuration
# =========================

class ConfigError(DCGError, ValueError):
    exit_code = 1


# =========================
#   Données
# =========================

class DataError(DCGError, ValueError):
    exit_code = 2


class ParseError(DataError):
    def __init__(self, message: str, row: int | None = None, column: str | int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class SchemaError(DataError):
    pass


class StratificationError(DataError):
    pass


class FoldError(DataError):
    pass


class ShapeError(DataError):
    pass


class DimensionError(DataError):
    pass


class DegenerateInputError(DataError):
    pass


class MissingClassError(DCGError, KeyError):
    exit_code = 2

    def __str__(self) -> str:
        # KeyError met le message entre quotes
        return str(self.args[0]) if self.args else ""


# =========================
#   Numérique
# =========================

class NumericalError(DCGError, ArithmeticError):
    exit_code = 3

    def __init__(self, message: str, condition_number: float | None = None):
        super().__init__(message)
        self.condition_number = condition_number


class StageError(DCGError):
    """
    Erreur d'un composant remontée par le harness, avec le nom de l'étape.

    Le code de sortie est celui de l'erreur d'origine.
    """

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"Échec à l'étape '{stage}': {cause}")
        self.stage = stage
        self.cause = cause
        self.exit_code = exit_code_for(cause)


def exit_code_for(exc: BaseException) -> int:
    """
    Code de sortie CLI : 0 succès, 1 configuration, 2 données,
    3 échec numérique.
    """
    if isinstance(exc, DCGError):
        return exc.exit_code
    if isinstance(exc, (FileNotFoundError, UnicodeDecodeError)):
        return 2
    if isinstance(exc, (ArithmeticError, np.linalg.LinAlgError)):
        return 3
    return 1
