"""
app/harness/report.py

Rapports d'expérience (JSON versionné, clés triées) et tables de sweep.

Schéma (format_version 1) :
    format_version, tool_version, config (dump complet de ExperimentConfig),
    baseline / dcg (AccuracyStat), best_alpha, dcg_params (alpha et stratégie
    d'origine), model (W appris au meilleur alpha, format ProjectionModel),
    trace (AlphaSearchTrace),
    holdout_baseline / holdout_dcg (précision sur le test mis de côté, ou null),
    metadata (dataset, N, m, Nc, m' et k utilisés, empreinte des partitions,
    horodatages UTC)
"""

from __future__ import annotations

import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app.classify.pipeline import AccuracyStat
from app.dcg.transform import DCGParams
from app.reduction.model import ProjectionModel
from app.search.trace import AlphaSearchTrace

logger = logging.getLogger(__name__)

REPORT_FORMAT_VERSION = 1
TIMESTAMP_FIELDS = ("started_at", "finished_at")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ReportMetadata(BaseModel):
    dataset: str
    n_samples: int
    n_features: int
    n_classes: int
    class_names: list[str]
    dropped_rows: int
    selection_samples: int
    holdout_samples: int
    out_dims: list[int]
    k_used: list[int]
    partition_fingerprint: str
    protocol: dict[str, Any]
    noise: dict[str, Any] | None = None
    started_at: str
    finished_at: str


class ExperimentReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    tool_version: str
    config: dict[str, Any]
    baseline: AccuracyStat
    dcg: AccuracyStat
    best_alpha: int
    dcg_params: DCGParams
    model: dict[str, Any]
    trace: AlphaSearchTrace
    holdout_baseline: float | None = None
    holdout_dcg: float | None = None
    metadata: ReportMetadata

    def to_json(self) -> str:
        return dump_json(self.model_dump(mode="json"))

    def to_json_without_timestamps(self) -> str:
        payload = self.model_dump(mode="json")
        for name in TIMESTAMP_FIELDS:
            payload["metadata"].pop(name, None)
        return dump_json(payload)

    def projection_model(self) -> ProjectionModel:
        return ProjectionModel.from_json(json.dumps(self.model))


class NoiseLevelResult(BaseModel):
    fraction: float
    magnitude: float
    seed: int
    baseline_mean: float
    dcg_mean: float
    best_alpha: int
    baseline_drop: float
    dcg_drop: float


class LPMRRow(BaseModel):
    alpha: int
    min_pair_distance: float
    in_lpmr: bool
    in_bound: bool | None = None


class ClassSummary(BaseModel):
    label: int
    name: str
    count: int
    mean: list[float]
    eigenvalues: list[float]


class LPMRReport(BaseModel):
    """
    Table de séparabilité par alpha. `in_bound` et `bound_range` ne sont
    renseignés que si les paramètres de borne (sigma, theta) sont configurés.
    """

    format_version: int = REPORT_FORMAT_VERSION
    dataset: str
    rows: list[LPMRRow]
    classes: list[ClassSummary]
    bound_range: list[int] | None = None

    def to_csv(self) -> str:
        lines = ["alpha,min_pair_distance,in_lpmr,in_bound"]
        for row in self.rows:
            bound = "" if row.in_bound is None else str(int(row.in_bound))
            lines.append(f"{row.alpha},{row.min_pair_distance!r},{int(row.in_lpmr)},{bound}")
        return "\n".join(lines) + "\n"


class NoiseStudyReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    tool_version: str
    clean: ExperimentReport
    levels: list[NoiseLevelResult]

    def to_json(self) -> str:
        return dump_json(self.model_dump(mode="json"))


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Écrit : %s", path)
    return path
