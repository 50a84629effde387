"""
Subcommand implementations behind the resamplepilot command line.

Every command takes a validated PipelineConfig, writes its artefacts and
returns a RunReport embedding the configuration and seed that produced it.
"""
import dataclasses
import json
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger
from tabulate import tabulate

from config.run_config import PipelineConfig
from config.settings import Config
from data_loader.dataset_loader import DatasetLoader
from models.data_models import Dataset
from models.evolution_models import GenerationRecord
from models.metrics_models import RunReport
from preprocessor.dataset_processor import fit_min_max, stratified_split
from preprocessor.synthetic import make_benchmark_suite
from sampler.hybrid_sampler import HybridSampler
from sampler.multitask_oversampler import MultiTaskOversampler
from services.convergence_service import convergence_area, summarise_convergence
from services.evaluation_service import knn_classify, score_predictions
from services.granular_ball_service import generate_balls
from utils.common import fingerprint, stage_rng
from utils.errors import DatasetError, SamplingError
from utils.logging_utils import (
    log_experiment_outcome, log_results_saving, log_system_startup, log_system_success
)

METRIC_COLUMNS = [
    "dataset", "method", "transfer_enabled", "seed", "train_rows", "test_rows",
    "resampled_majority", "resampled_minority", "auc", "g_mean", "sensitivity", "specificity",
]

def _load(cfg: PipelineConfig, allow_single_class: bool = False) -> Dataset:
    loader = DatasetLoader(cfg.label_column, cfg.minority_class, allow_single_class)
    return loader.load(cfg.input_path, cfg.input_format)

def _default_path(cfg: PipelineConfig, suffix: str) -> Path:
    stem = Path(cfg.input_path).stem or "dataset"
    return Config.OUTPUT_DIR / f"{stem}_{cfg.method}_seed{cfg.seed}{suffix}"

def _write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    log_results_saving(str(path), True)
    return path

def _write_jsonl(path: Path, records: List[Dict[str, Any]]) -> Path:
    return _write_text(path, "".join(json.dumps(r, sort_keys=True) + "\n" for r in records))

def write_report(report: RunReport, path: Path) -> Path:
    """Write a run report as indented JSON."""
    return _write_text(path, json.dumps(report.to_dict(), indent=2, default=str) + "\n")

def _finish(report: RunReport, cfg: PipelineConfig, started: float, default_report: Optional[Path]) -> RunReport:
    report.wall_time_seconds = round(time.perf_counter() - started, 3)
    if cfg.report_path or default_report is not None:
        write_report(report, Path(cfg.report_path) if cfg.report_path else default_report)
    if report.stage_counts:
        table = [[stage, c["majority"], c["minority"]] for stage, c in report.stage_counts.items()]
        logger.info("\n" + tabulate(table, headers=["stage", "majority", "minority"], tablefmt="github"))
    log_system_success(report.command, f"finished in {report.wall_time_seconds:.2f}s (seed {report.seed})")
    return report

def cmd_resample(cfg: PipelineConfig) -> RunReport:
    """Resample the input dataset with the configured method and write it as CSV."""
    log_system_startup(f"resample ({cfg.method})")
    started = time.perf_counter()
    dataset = _load(cfg)
    if cfg.scaling:
        dataset = fit_min_max(dataset).apply(dataset)

    sampler = HybridSampler(cfg.run, cfg.method, cfg.transfer_enabled, cfg.workers, cfg.smote_neighbors)
    outcome = sampler.resample(dataset)
    output = Path(cfg.output_path) if cfg.output_path else _default_path(cfg, ".csv")
    DatasetLoader.save(outcome.dataset, output)

    report = RunReport(command="resample", seed=cfg.seed, config=cfg.to_dict(), stage_counts=outcome.stage_counts)
    if outcome.balls is not None:
        report.n_balls = len(outcome.balls)
    if outcome.undersampling is not None:
        report.removals_by_phase = outcome.undersampling.removed_by_phase()
        if cfg.verbose:
            for plan in outcome.undersampling.plans:
                logger.debug(json.dumps(plan.to_dict()))
    if outcome.evolution is not None:
        if outcome.evolution.infeasible_task_ids:
            report.notes.append(
                f"{len(outcome.evolution.infeasible_task_ids)} task(s) ended without a feasible individual"
            )
        if cfg.log_path:
            _write_jsonl(Path(cfg.log_path), [r.to_dict() for r in outcome.evolution.records])
    return _finish(report, cfg, started, output.with_suffix(".report.json"))

def _check_no_leakage(test: Dataset, test_fingerprint: str, resampled: Dataset, train: Dataset) -> None:
    """The test split must be untouched and no test row may reach the resampled set."""
    if fingerprint(test.instances) != test_fingerprint:
        raise SamplingError("test split changed during resampling")
    original = {row.tobytes() for row in train.instances}
    synthetic_or_train = {row.tobytes() for row in resampled.instances}
    leaked = ({row.tobytes() for row in test.instances} & synthetic_or_train) - original
    if leaked:
        raise SamplingError(f"{len(leaked)} test row(s) found in the resampled training set")

def evaluate_once(dataset: Dataset, cfg: PipelineConfig, seed: int) -> Dict[str, Any]:
    """Split, resample the training part, score the untouched test part."""
    run = dataclasses.replace(cfg.run, master_seed=seed)
    train, test = stratified_split(dataset, cfg.train_fraction, stage_rng(seed, "split"))
    if cfg.scaling:
        scaling = fit_min_max(train)
        train, test = scaling.apply(train), scaling.apply(test)
    test_fingerprint = fingerprint(test.instances)

    sampler = HybridSampler(run, cfg.method, cfg.transfer_enabled, cfg.workers, cfg.smote_neighbors)
    resampled = sampler.resample(train).dataset
    _check_no_leakage(test, test_fingerprint, resampled, train)

    k = min(cfg.knn_neighbors, resampled.n_rows)
    metrics = score_predictions(knn_classify(resampled, test, k))
    row = {
        "dataset": Path(cfg.input_path).stem or dataset.source,
        "method": cfg.method,
        "transfer_enabled": cfg.transfer_enabled,
        "seed": seed,
        "train_rows": train.n_rows,
        "test_rows": test.n_rows,
        "resampled_majority": resampled.majority_count,
        "resampled_minority": resampled.minority_count,
    }
    row.update(metrics)
    return row

def cmd_evaluate(cfg: PipelineConfig) -> RunReport:
    """One metrics row per seed (seed, seed + 1, ...), appended to the metrics CSV."""
    log_system_startup(f"evaluate ({cfg.method}, {cfg.n_seeds} seed(s))")
    started = time.perf_counter()
    dataset = _load(cfg).require_both_classes()

    rows = []
    for offset in range(cfg.n_seeds):
        row = evaluate_once(dataset, cfg, cfg.seed + offset)
        rows.append(row)
        print(" ".join(f"{key}={row[key]}" for key in METRIC_COLUMNS))
        log_experiment_outcome(f"{row['dataset']}/{cfg.method}/seed{row['seed']}",
                               f"AUC={row['auc']:.4f} G-Mean={row['g_mean']:.4f}")

    metrics_path = Path(cfg.metrics_path) if cfg.metrics_path else Config.OUTPUT_DIR / "metrics.csv"
    metrics_path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows, columns=METRIC_COLUMNS).to_csv(
        metrics_path, mode="a", header=not metrics_path.exists(), index=False, lineterminator="\n"
    )
    log_results_saving(str(metrics_path), True)

    report = RunReport(command="evaluate", seed=cfg.seed, config=cfg.to_dict(), rows=rows)
    report.metrics = {
        "mean_auc": float(np.mean([r["auc"] for r in rows])),
        "mean_g_mean": float(np.mean([r["g_mean"] for r in rows])),
    }
    return _finish(report, cfg, started, None)

def run_ablation(dataset: Dataset, cfg: PipelineConfig) -> Tuple[List[GenerationRecord], List[Dict[str, Any]], Dict[str, float]]:
    """Evolve with and without transfer on the same seed; return records, per-generation summary and areas."""
    records = []
    for transfer in (True, False):
        oversampler = MultiTaskOversampler(cfg.run, transfer_enabled=transfer, n_workers=cfg.workers)
        records.extend(oversampler.evolve(dataset).records)
    summary = summarise_convergence(records)
    areas = {
        arm: convergence_area([row for row in summary if row["arm"] == arm])
        for arm in ("with_kt", "without_kt")
    }
    return records, summary, areas

def cmd_ablate(cfg: PipelineConfig) -> RunReport:
    """Convergence records of both transfer arms, written as JSON lines."""
    log_system_startup("knowledge-transfer ablation")
    started = time.perf_counter()
    dataset = _load(cfg).require_both_classes()
    if cfg.scaling:
        dataset = fit_min_max(dataset).apply(dataset)

    records, summary, areas = run_ablation(dataset, cfg)
    log_path = Path(cfg.log_path or cfg.output_path) if (cfg.log_path or cfg.output_path) \
        else _default_path(cfg, ".ablation.jsonl")
    _write_jsonl(log_path, [r.to_dict() for r in records])

    report = RunReport(command="ablate", seed=cfg.seed, config=cfg.to_dict())
    report.rows = summary
    report.metrics = {f"area_{arm}": area for arm, area in areas.items()}
    winner = "with_kt" if areas["with_kt"] >= areas["without_kt"] else "without_kt"
    report.notes.append(f"larger mean-best θ area: {winner}")
    log_experiment_outcome(f"ablation/seed{cfg.seed}", f"{winner} (areas {areas})")
    return _finish(report, cfg, started, log_path.with_suffix(".report.json"))

def dump_balls(balls, fmt: str = "table") -> str:
    """Ball set as a github table or JSON lines."""
    records = balls.to_records()
    if fmt == "jsonl":
        return "".join(json.dumps(r) + "\n" for r in records)
    table = [
        [r["id"], r["size"], r["label"], f"{r['radius']:.6g}", f"{r['quality']:.3f}",
         " ".join(str(m) for m in r["members"])]
        for r in records
    ]
    return tabulate(table, headers=["id", "size", "label", "radius", "quality", "members"], tablefmt="github") + "\n"

def cmd_gb_inspect(cfg: PipelineConfig, fmt: str = "table") -> RunReport:
    """Generate granular balls on the input and dump them."""
    log_system_startup("granular-ball inspection")
    started = time.perf_counter()
    dataset = _load(cfg, allow_single_class=True)
    if cfg.scaling:
        dataset = fit_min_max(dataset).apply(dataset)
    balls = generate_balls(dataset, cfg.run.gb_quality_threshold, stage_rng(cfg.seed, "granular_balls"))
    text = dump_balls(balls, fmt)
    if cfg.output_path:
        _write_text(Path(cfg.output_path), text)
    else:
        print(text, end="")

    report = RunReport(command="gb-inspect", seed=cfg.seed, config=cfg.to_dict(), n_balls=len(balls))
    report.notes.append(f"{balls.n_splits} splits, min quality {balls.min_quality():.3f}")
    return _finish(report, cfg, started, None)

def cmd_synth(output_dir: Path, n_cases: int, seed: int, max_rows: int = 500, max_features: int = 10) -> List[Path]:
    """Write the synthetic benchmark suite as CSV files."""
    log_system_startup(f"synthetic suite ({n_cases} cases)")
    suite = make_benchmark_suite(n_cases, stage_rng(seed, "synthetic_suite"), max_rows, max_features)
    paths = []
    for dataset in suite:
        path = Path(output_dir) / f"{dataset.source}.csv"
        try:
            DatasetLoader.save(dataset, path)
        except DatasetError:
            logger.error(f"Could not write {path}")
            raise
        paths.append(path)
    log_system_success("synth", f"wrote {len(paths)} datasets to {output_dir}")
    return paths
