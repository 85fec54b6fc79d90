"""
app/reduction/model.py

Modèle de projection linéaire y = W (x - center) et sa sérialisation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

from app.errors import ConfigError, DimensionError

FORMAT_VERSION = 1

Method = Literal["pca", "srda", "lda"]


@dataclass(frozen=True)
class ReductionConfig:
    method: Method = "pca"
    out_dim: int | Literal["auto"] = "auto"
    ridge_lambda: float = 0.01
    variance_threshold: float = 0.95

    def __post_init__(self) -> None:
        if self.method not in ("pca", "srda", "lda"):
            raise ConfigError(f"Méthode de réduction inconnue : {self.method}")
        if self.ridge_lambda <= 0:
            raise ConfigError("ridge_lambda doit être > 0")
        if self.out_dim != "auto" and (not isinstance(self.out_dim, int) or self.out_dim < 1):
            raise ConfigError(f"out_dim doit être un entier >= 1 ou 'auto', reçu {self.out_dim!r}")


@dataclass(frozen=True, eq=False)
class ProjectionModel:
    w: np.ndarray
    center: np.ndarray
    method: Method
    eigenvalues: np.ndarray | None = None

    def __post_init__(self) -> None:
        w = np.atleast_2d(np.array(self.w, dtype=np.float64))
        center = np.array(self.center, dtype=np.float64).reshape(-1)
        if w.shape[1] != center.shape[0]:
            raise DimensionError(f"W {w.shape} incompatible avec un centre de taille {center.shape[0]}")
        if w.shape[0] > w.shape[1]:
            raise DimensionError(f"m' = {w.shape[0]} > m = {w.shape[1]}")
        w.setflags(write=False)
        center.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "center", center)
        if self.eigenvalues is not None:
            ev = np.array(self.eigenvalues, dtype=np.float64)
            ev.setflags(write=False)
            object.__setattr__(self, "eigenvalues", ev)

    @property
    def out_dim(self) -> int:
        return self.w.shape[0]

    @property
    def in_dim(self) -> int:
        return self.w.shape[1]

    # ---------------------------------------------------------------------------
    # Format texte versionné (JSON, W en row-major)
    # ---------------------------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "format_version": FORMAT_VERSION,
            "method": self.method,
            "shape": [self.out_dim, self.in_dim],
            "w": self.w.reshape(-1).tolist(),
            "center": self.center.tolist(),
            "eigenvalues": None if self.eigenvalues is None else self.eigenvalues.tolist(),
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ProjectionModel":
        payload = json.loads(text)
        if payload.get("format_version") != FORMAT_VERSION:
            raise ConfigError(f"Version de modèle non supportée : {payload.get('format_version')}")
        rows, cols = payload["shape"]
        w = np.array(payload["w"], dtype=np.float64).reshape(rows, cols)
        return cls(
            w=w,
            center=payload["center"],
            method=payload["method"],
            eigenvalues=payload.get("eigenvalues"),
        )


def project(model: ProjectionModel, features: np.ndarray) -> np.ndarray:
    """Chaque ligne devient W · (ligne - center)."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if features.shape[1] != model.in_dim:
        raise DimensionError(
            f"{features.shape[1]} colonnes, le modèle attend m = {model.in_dim}"
        )
    return (features - model.center) @ model.w.T


def sign_normalize(vectors: np.ndarray) -> np.ndarray:
    """
    Convention de signe : la composante de plus grande magnitude de chaque
    vecteur (colonne) est positive. En cas d'égalité, la première l'emporte.
    """
    vectors = np.array(vectors, dtype=np.float64)
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs
