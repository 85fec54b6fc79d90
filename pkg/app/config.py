# app/config.py

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.errors import ConfigError

CONFIG_VERSION = 1


class Settings(BaseSettings):
    # Logs
    log_level: str = "INFO"

    # Sorties (rapports, tables de sweep)
    reports_dir: str = "data/reports"

    # Dossier de base des fichiers de config passés à l'API
    api_config_dir: str = "configs"

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
    )


def _maybe_int(value: Any) -> Any:
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value)
    return value


class ExperimentConfig(BaseSettings):
    """
    Configuration d'une expérience, lue depuis un fichier plat `CLE=valeur`
    (syntaxe dotenv). Toutes les clés sont préfixées par `DCG_`.

    Exemple (configs/haberman.env) :

        DCG_CONFIG_VERSION=1
        DCG_DATASET_PATH=data/raw/haberman.data
        DCG_LABEL_COLUMN=-1
        DCG_REDUCTION_METHOD=srda
    """

    config_version: int = CONFIG_VERSION

    # Dataset
    dataset_path: str
    dataset_name: str | None = None
    label_column: int | str = -1  # position 1-based, négatif depuis la fin, ou nom de colonne
    drop_columns: list[int | str] = []
    has_header: bool = False
    missing_policy: Literal["drop_row", "error"] = "drop_row"
    seed: int = 0
    standardize: bool = False

    # Réduction
    reduction_method: Literal["pca", "srda", "lda"] = "pca"
    out_dim: int | Literal["auto"] = "auto"
    variance_threshold: float = 0.95
    ridge_lambda: float = 0.01

    # KNN
    knn_k: int | Literal["auto"] = "auto"
    knn_candidates: list[int] = [1, 3, 5, 7, 9, 11, 13, 15]

    # Protocole
    folds: int = 10
    repeats: int = 5
    holdout_fraction: float = 0.0

    # Recherche de alpha
    strategy: Literal["fixed", "grid", "hill_climb", "sga"] = "sga"
    fixed_alpha: int = 0
    alpha_min: int = -10
    alpha_max: int = 80
    hc_start: int = 0
    hc_max_steps: int = 100
    hc_restarts: int = 5
    sga_population: int = 20
    sga_generations: int = 30
    sga_mutation_rate: float = 0.05
    sga_crossover_rate: float = 0.9

    # Borne de validité de alpha (export LPMR), inactive si bound_sigma est absent
    bound_sigma: float | None = None
    bound_theta_min: float = 0.0
    bound_theta_max: float = 1.0

    # Bruit (optionnel)
    noise_fraction: float = 0.0
    noise_magnitude: float = 0.0
    noise_seed: int = 0
    noise_levels: list[tuple[float, float]] = [(0.0, 0.0), (0.05, 1.0), (0.1, 1.0), (0.2, 1.0)]

    model_config = SettingsConfigDict(env_prefix="DCG_", extra="forbid")

    @field_validator("label_column", "out_dim", "knn_k", mode="before")
    @classmethod
    def _coerce_int(cls, value: Any) -> Any:
        return _maybe_int(value)

    @field_validator("drop_columns", mode="before")
    @classmethod
    def _coerce_drop_columns(cls, value: Any) -> Any:
        if isinstance(value, list):
            return [_maybe_int(v) for v in value]
        return value

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        if self.config_version != CONFIG_VERSION:
            raise ValueError(
                f"version de config {self.config_version} non supportée (attendu {CONFIG_VERSION})"
            )
        if self.folds < 2:
            raise ValueError("folds doit être >= 2")
        if self.repeats < 1:
            raise ValueError("repeats doit être >= 1")
        if not 0.0 <= self.holdout_fraction < 1.0:
            raise ValueError("holdout_fraction doit être dans [0, 1)")
        if self.strategy != "fixed" and not self.alpha_min <= 0 <= self.alpha_max:
            raise ValueError("les bornes de alpha doivent contenir 0 (alpha_min <= 0 <= alpha_max)")
        if self.knn_k != "auto" and (self.knn_k < 1 or self.knn_k % 2 == 0):
            raise ValueError("knn_k doit être un entier impair positif ou 'auto'")
        if not self.knn_candidates or any(k < 1 or k % 2 == 0 for k in self.knn_candidates):
            raise ValueError("knn_candidates doit contenir des entiers impairs positifs")
        if self.hc_restarts < 1:
            raise ValueError("hc_restarts doit être >= 1")
        if self.ridge_lambda <= 0:
            raise ValueError("ridge_lambda doit être > 0")
        if not 0.0 < self.variance_threshold <= 1.0:
            raise ValueError("variance_threshold doit être dans (0, 1]")
        if self.sga_population < 2:
            raise ValueError("sga_population doit être >= 2")
        for name in ("sga_mutation_rate", "sga_crossover_rate", "noise_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} doit être dans [0, 1]")
        if self.noise_magnitude < 0:
            raise ValueError("noise_magnitude doit être >= 0")
        if self.bound_sigma is not None and self.bound_sigma <= 0:
            raise ValueError("bound_sigma doit être > 0")
        if not self.bound_theta_min < self.bound_theta_max:
            raise ValueError("bound_theta_min doit être < bound_theta_max")
        return self

    @property
    def name(self) -> str:
        return self.dataset_name or Path(self.dataset_path).stem


def load_experiment_config(path: str | Path | None = None, **overrides: Any) -> ExperimentConfig:
    """
    Charge une ExperimentConfig depuis un fichier `DCG_*` et applique les
    surcharges (flags CLI ou champs de requête API). Les surcharges à None
    sont ignorées.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}
    kwargs: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"Fichier de configuration introuvable : {path}")
        kwargs["_env_file"] = path

    try:
        return ExperimentConfig(**kwargs, **overrides)
    except ValidationError as e:
        raise ConfigError(f"Configuration invalide ({path}) : {e}") from e
