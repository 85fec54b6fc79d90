"""
app/api/main.py

API FastAPI du harness DCG.

- Lit les fichiers de configuration DCG_* depuis settings.api_config_dir
- Expose /compare, /sweep et /lpmr avec les mêmes surcharges que la CLI
"""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from app import __version__
from app.config import ExperimentConfig, configure_logging, load_experiment_config, settings
from app.errors import exit_code_for
from app.harness.experiment import run_alpha_sweep, run_comparison, run_lpmr
from app.harness.report import ExperimentReport, LPMRReport

logger = logging.getLogger(__name__)

app = FastAPI(
    title="DCG Feature Reduction API",
    description="Comparaison réduction de features classique / après Dispelling Classes Gradually.",
    version=__version__,
)

# code de sortie CLI -> statut HTTP
HTTP_STATUS = {1: 422, 2: 400, 3: 500}


# ---------------------------------------------------------------------------
# Modèles Pydantic
# ---------------------------------------------------------------------------

class ExperimentRequest(BaseModel):
    config_path: str
    seed: int | None = None
    alpha_min: int | None = None
    alpha_max: int | None = None
    strategy: str | None = None


class AlphaRow(BaseModel):
    alpha: int
    accuracy_percent: float


class SweepResponse(BaseModel):
    dataset: str
    rows: list[AlphaRow]


class HealthStatus(BaseModel):
    status: str
    version: str
    config_dir: str
    has_config_dir: bool


# ---------------------------------------------------------------------------
# Fonctions internes
# ---------------------------------------------------------------------------

def _resolve_config_path(config_path: str) -> Path:
    path = Path(config_path)
    if not path.is_absolute():
        path = Path(settings.api_config_dir) / path
    return path


def _load(request: ExperimentRequest, with_bounds: bool = True) -> ExperimentConfig:
    return load_experiment_config(
        _resolve_config_path(request.config_path),
        seed=request.seed,
        alpha_min=request.alpha_min if with_bounds else None,
        alpha_max=request.alpha_max if with_bounds else None,
        strategy=request.strategy,
    )


def _http_error(e: Exception) -> HTTPException:
    code = exit_code_for(e)
    logger.error("Requête en échec (code %d) : %s", code, e)
    return HTTPException(status_code=HTTP_STATUS.get(code, 500), detail=str(e))


# ---------------------------------------------------------------------------
# Évènements FastAPI
# ---------------------------------------------------------------------------

@app.on_event("startup")
def on_startup() -> None:
    configure_logging()
    logger.info("=== Démarrage de l'API DCG ===")
    logger.info("Dossier de configs : %s", settings.api_config_dir)


# ---------------------------------------------------------------------------
# Routes
# ---------------------------------------------------------------------------

@app.get("/health", response_model=HealthStatus)
def health() -> HealthStatus:
    return HealthStatus(
        status="ok",
        version=__version__,
        config_dir=settings.api_config_dir,
        has_config_dir=Path(settings.api_config_dir).is_dir(),
    )


@app.post("/compare", response_model=ExperimentReport)
def compare(request: ExperimentRequest) -> ExperimentReport:
    """
    Exemple de payload:
    {
        "config_path": "haberman_srda.env",
        "strategy": "grid",
        "alpha_min": 0,
        "alpha_max": 30
    }
    """
    try:
        return run_comparison(_load(request))
    except Exception as e:
        raise _http_error(e) from e


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: ExperimentRequest) -> SweepResponse:
    try:
        config = _load(request, with_bounds=False)
        alpha_min = config.alpha_min if request.alpha_min is None else request.alpha_min
        alpha_max = config.alpha_max if request.alpha_max is None else request.alpha_max
        rows = run_alpha_sweep(config, alpha_min, alpha_max)
    except Exception as e:
        raise _http_error(e) from e
    return SweepResponse(
        dataset=config.name,
        rows=[AlphaRow(alpha=a, accuracy_percent=acc) for a, acc in rows],
    )


@app.post("/lpmr", response_model=LPMRReport)
def lpmr(request: ExperimentRequest) -> LPMRReport:
    try:
        config = _load(request, with_bounds=False)
        alpha_min = config.alpha_min if request.alpha_min is None else request.alpha_min
        alpha_max = config.alpha_max if request.alpha_max is None else request.alpha_max
        return run_lpmr(config, alpha_min, alpha_max)
    except Exception as e:
        raise _http_error(e) from e
