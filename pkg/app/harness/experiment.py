"""
app/harness/experiment.py

Orchestration des expériences : comparaison baseline / DCG, sweep de alpha,
export LPMR et étude de sensibilité au bruit.

Les deux pipelines d'un même rapport consomment exactement les mêmes folds
(mêmes seeds) ; toute l'aléa provient des seeds nommées dans la config.
"""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from typing import Iterator, Sequence

from app import __version__
from app.classify.knn import KNNConfig
from app.classify.pipeline import AccuracyStat, EvaluationProtocol, evaluate_pipeline, fit_projection, score_split
from app.config import ExperimentConfig
from app.dcg.bounds import AlphaBoundParams, alpha_bound_range, class_minima
from app.dcg.separability import ClassStatistics, class_statistics, lpmr_table
from app.dcg.transform import DCGParams
from app.errors import DCGError, StageError
from app.harness.noise import inject_noise
from app.harness.report import (
    ClassSummary,
    ExperimentReport,
    LPMRReport,
    LPMRRow,
    NoiseLevelResult,
    NoiseStudyReport,
    ReportMetadata,
    utc_now,
)
from app.ingestion.csv_loader import Dataset, load_csv
from app.ingestion.splits import SplitSpec, partition_fingerprint, stratified_split
from app.reduction.fit import fit_reduction
from app.reduction.model import ReductionConfig
from app.search.grid import grid_search
from app.search.hill_climb import hill_climb
from app.search.sga import SGAConfig, sga_search
from app.search.trace import AlphaSearchTrace, MemoizedFitness

logger = logging.getLogger(__name__)


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Rattache toute erreur de composant au nom de l'étape."""
    try:
        yield
    except StageError:
        raise
    except (DCGError, FileNotFoundError, ArithmeticError, ValueError) as e:
        logger.error("Étape '%s' en échec : %s", name, e)
        raise StageError(name, e) from e


# ---------------------------------------------------------------------------
# Construction des composants depuis la config
# ---------------------------------------------------------------------------

def reduction_config(config: ExperimentConfig) -> ReductionConfig:
    return ReductionConfig(
        method=config.reduction_method,
        out_dim=config.out_dim,
        ridge_lambda=config.ridge_lambda,
        variance_threshold=config.variance_threshold,
    )


def knn_config(config: ExperimentConfig) -> KNNConfig | None:
    return None if config.knn_k == "auto" else KNNConfig(k=config.knn_k)


def evaluation_protocol(config: ExperimentConfig) -> EvaluationProtocol:
    return EvaluationProtocol(
        folds=config.folds,
        repeats=config.repeats,
        seed=config.seed,
        standardize=config.standardize,
    )


def sga_config(config: ExperimentConfig) -> SGAConfig:
    return SGAConfig(
        population=config.sga_population,
        generations=config.sga_generations,
        mutation_rate=config.sga_mutation_rate,
        crossover_rate=config.sga_crossover_rate,
        alpha_min=config.alpha_min,
        alpha_max=config.alpha_max,
        seed=config.seed,
    )


def load_dataset(config: ExperimentConfig) -> Dataset:
    with stage("load"):
        return load_csv(
            config.dataset_path,
            label_column=config.label_column,
            missing_policy=config.missing_policy,
            drop_columns=config.drop_columns,
            has_header=config.has_header,
            name=config.name,
        )


def prepare_dataset(config: ExperimentConfig) -> Dataset:
    d = load_dataset(config)
    if config.noise_fraction > 0 and config.noise_magnitude > 0:
        with stage("noise"):
            d = inject_noise(d, config.noise_fraction, config.noise_magnitude, config.noise_seed)
    return d


class PipelineFitness:
    """
    Fitness d'un alpha = précision moyenne du pipeline complet sur le
    protocole de sélection. Les AccuracyStat complets sont conservés.
    """

    def __init__(self, d: Dataset, config: ExperimentConfig):
        self.d = d
        self.config = config
        self.reduction = reduction_config(config)
        self.knn = knn_config(config)
        self.protocol = evaluation_protocol(config)
        self.stats: dict[int, AccuracyStat] = {}

    def stat(self, alpha: int) -> AccuracyStat:
        if alpha not in self.stats:
            self.stats[alpha] = evaluate_pipeline(
                self.d,
                alpha,
                self.reduction,
                self.knn,
                self.protocol,
                self.config.knn_candidates,
            )
        return self.stats[alpha]

    def __call__(self, alpha: int) -> float:
        return self.stat(alpha).mean


def search_alpha(fitness: PipelineFitness, config: ExperimentConfig) -> AlphaSearchTrace:
    memo = MemoizedFitness(fitness)
    if config.strategy == "fixed":
        memo(0)
        memo(config.fixed_alpha)
        return memo.to_trace("fixed")
    if config.strategy == "grid":
        return grid_search(memo, config.alpha_min, config.alpha_max)
    if config.strategy == "hill_climb":
        return hill_climb(
            memo,
            start_alpha=config.hc_start,
            max_steps=config.hc_max_steps,
            restarts=config.hc_restarts,
            seed=config.seed,
            alpha_min=config.alpha_min,
            alpha_max=config.alpha_max,
        )
    return sga_search(memo, sga_config(config))


# ---------------------------------------------------------------------------
# Opérations
# ---------------------------------------------------------------------------

def run_comparison(
    config: ExperimentConfig,
    dataset: Dataset | None = None,
    noise: dict | None = None,
) -> ExperimentReport:
    """
    Compare le pipeline classique (alpha=0) et le pipeline DCG au meilleur
    alpha trouvé par la stratégie configurée.
    """
    started_at = utc_now()
    d = dataset if dataset is not None else prepare_dataset(config)
    logger.info(
        "=== Comparaison %s : %s, stratégie %s ===",
        d.name,
        config.reduction_method,
        config.strategy,
    )

    selection, holdout = d, None
    if config.holdout_fraction > 0:
        with stage("split"):
            selection, holdout = stratified_split(
                d, SplitSpec(train_fraction=1.0 - config.holdout_fraction, seed=config.seed)
            )

    fitness = PipelineFitness(selection, config)
    with stage("search"):
        trace = search_alpha(fitness, config)

    with stage("evaluate"):
        baseline = fitness.stat(0)
        dcg = fitness.stat(trace.best_alpha)
        fingerprint = partition_fingerprint(selection, config.folds, fitness.protocol.seeds)

        holdout_baseline = holdout_dcg = None
        if holdout is not None:
            scores = {
                alpha: score_split(
                    selection,
                    holdout,
                    alpha,
                    fitness.reduction,
                    fitness.knn,
                    config.knn_candidates,
                    config.standardize,
                ).accuracy
                for alpha in {0, trace.best_alpha}
            }
            holdout_baseline, holdout_dcg = scores[0], scores[trace.best_alpha]

    with stage("fit"):
        model = fit_projection(selection, trace.best_alpha, fitness.reduction, config.standardize)

    logger.info(
        "Baseline %.2f ± %.2f | DCG alpha=%d %.2f ± %.2f",
        baseline.mean,
        baseline.std_dev,
        trace.best_alpha,
        dcg.mean,
        dcg.std_dev,
    )

    return ExperimentReport(
        tool_version=__version__,
        config=config.model_dump(mode="json"),
        baseline=baseline,
        dcg=dcg,
        best_alpha=trace.best_alpha,
        dcg_params=DCGParams(alpha=trace.best_alpha, origin=config.strategy),
        model=json.loads(model.to_json()),
        trace=trace,
        holdout_baseline=holdout_baseline,
        holdout_dcg=holdout_dcg,
        metadata=ReportMetadata(
            dataset=d.name,
            n_samples=d.n_samples,
            n_features=d.n_features,
            n_classes=d.n_classes,
            class_names=list(d.encoding.class_names),
            dropped_rows=d.dropped_rows,
            selection_samples=selection.n_samples,
            holdout_samples=0 if holdout is None else holdout.n_samples,
            out_dims=sorted(set(dcg.out_dims) | set(baseline.out_dims)),
            k_used=sorted(set(dcg.k_used) | set(baseline.k_used)),
            partition_fingerprint=fingerprint,
            protocol={
                "folds": config.folds,
                "repeats": config.repeats,
                "seeds": fitness.protocol.seeds,
                "standardize": config.standardize,
                "std_dev": "population (ddof=0) sur les R×k scores de folds",
            },
            noise=noise,
            started_at=started_at,
            finished_at=utc_now(),
        ),
    )


def run_alpha_sweep(config: ExperimentConfig, alpha_min: int, alpha_max: int) -> list[tuple[int, float]]:
    """Une ligne (alpha, précision %) par alpha entier de l'intervalle."""
    d = prepare_dataset(config)
    fitness = PipelineFitness(d, config)
    with stage("sweep"):
        trace = grid_search(fitness, alpha_min, alpha_max)
    return trace.table()


def alpha_bound_params(
    d: Dataset,
    config: ExperimentConfig,
    stats: list[ClassStatistics],
) -> AlphaBoundParams:
    """
    Paramètres de la borne de validité de alpha : w est la première direction
    de W apprise sans DCG, C_l la projection de la moyenne de la classe l.
    """
    model = fit_reduction(reduction_config(config), d.features, d.labels)
    w_row = model.w[0]
    return AlphaBoundParams(
        w_row=w_row,
        sigma=config.bound_sigma,
        theta_min=config.bound_theta_min,
        theta_max=config.bound_theta_max,
        class_minima=class_minima(d.features, d.labels),
        centers={s.label: float(w_row @ s.mean) for s in stats},
    )


def run_lpmr(config: ExperimentConfig, alpha_min: int, alpha_max: int) -> LPMRReport:
    """
    Table de séparabilité sur [alpha_min, alpha_max], statistiques par classe
    et, si bound_sigma est configuré, plage de alpha respectant la borne.
    """
    d = prepare_dataset(config)
    with stage("lpmr"):
        rows = lpmr_table(d.features, d.labels, alpha_min, alpha_max)
        stats = class_statistics(d.features, d.labels)

    bound_range = None
    if config.bound_sigma is not None:
        with stage("bound"):
            params = alpha_bound_params(d, config, stats)
            bound_range = alpha_bound_range(params, alpha_min, alpha_max)
        logger.info("Borne de alpha : %d valeur(s) valides sur [%d, %d]", len(bound_range), alpha_min, alpha_max)

    inside = [alpha for alpha, _, flag in rows if flag]
    logger.info("LPMR de %s sur [%d, %d] : %d valeur(s) de alpha", d.name, alpha_min, alpha_max, len(inside))

    valid = set(bound_range or ())
    return LPMRReport(
        dataset=d.name,
        rows=[
            LPMRRow(
                alpha=alpha,
                min_pair_distance=distance,
                in_lpmr=flag,
                in_bound=None if bound_range is None else alpha in valid,
            )
            for alpha, distance, flag in rows
        ],
        classes=[
            ClassSummary(
                label=s.label,
                name=d.encoding.class_names[s.label - 1],
                count=s.count,
                mean=s.mean.tolist(),
                eigenvalues=s.eigenvalues.tolist(),
            )
            for s in stats
        ],
        bound_range=bound_range,
    )


def run_noise_study(
    config: ExperimentConfig,
    levels: Sequence[tuple[float, float]] | None = None,
) -> NoiseStudyReport:
    """
    Pour chaque niveau (fraction, magnitude), relance la comparaison sur le
    dataset bruité et mesure la baisse de précision des deux pipelines
    par rapport au dataset propre.
    """
    levels = list(levels if levels is not None else config.noise_levels)
    d = load_dataset(config)
    clean = run_comparison(config, dataset=d)

    results = []
    for fraction, magnitude in levels:
        with stage("noise"):
            noisy = inject_noise(d, fraction, magnitude, config.noise_seed)
        noise = {"fraction": fraction, "magnitude": magnitude, "seed": config.noise_seed}
        report = run_comparison(config, dataset=noisy, noise=noise)
        results.append(
            NoiseLevelResult(
                fraction=fraction,
                magnitude=magnitude,
                seed=config.noise_seed,
                baseline_mean=report.baseline.mean,
                dcg_mean=report.dcg.mean,
                best_alpha=report.best_alpha,
                baseline_drop=clean.baseline.mean - report.baseline.mean,
                dcg_drop=clean.dcg.mean - report.dcg.mean,
            )
        )
        logger.info(
            "Bruit (%.2f, %.2f) : baisse baseline %.2f, baisse DCG %.2f",
            fraction,
            magnitude,
            results[-1].baseline_drop,
            results[-1].dcg_drop,
        )

    return NoiseStudyReport(tool_version=__version__, clean=clean, levels=results)
