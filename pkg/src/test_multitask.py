"""Tests for the multi-task GP oversampler."""
import dataclasses
import time

import numpy as np
import pytest
from loguru import logger

from cli.commands import evaluate_once, run_ablation
from config.run_config import PipelineConfig, RunConfig
from conftest import make_dataset
from models.data_models import Dataset
from models.evolution_models import FitnessValue
from preprocessor.synthetic import make_benchmark_suite, make_two_gaussian
from sampler.hybrid_sampler import HybridSampler
from sampler.multitask_oversampler import MultiTaskOversampler, evolve_all
from services.convergence_service import convergence_area, summarise_convergence
from services.fitness_service import evaluate_fitness, fitness_key
from utils.common import stage_rng
from utils.errors import ConfigError, DatasetValidationError


def _key(record) -> tuple:
    return fitness_key(FitnessValue(record.best_d, record.best_theta, record.feasible))


class TestEvolve:
    """Output shape, balance and per-task records."""

    def test_one_row_per_missing_minority(self, imbalanced: Dataset, fast_run_config: RunConfig):
        synthetic = evolve_all(imbalanced, fast_run_config)
        assert synthetic.shape == (imbalanced.majority_count - imbalanced.minority_count, imbalanced.n_features)
        assert np.all(np.isfinite(synthetic))

    def test_oversample_balances(self, imbalanced: Dataset, fast_run_config: RunConfig):
        balanced, result = MultiTaskOversampler(fast_run_config).oversample(imbalanced)
        assert balanced.majority_count == balanced.minority_count
        np.testing.assert_array_equal(balanced.instances[:imbalanced.n_rows], imbalanced.instances)
        np.testing.assert_array_equal(balanced.instances[imbalanced.n_rows:], result.synthetic)

    def test_records_cover_every_task_and_generation(self, imbalanced: Dataset, fast_run_config: RunConfig):
        result = MultiTaskOversampler(fast_run_config).evolve(imbalanced)
        n_tasks = len(result.tasks)
        assert len(result.records) == n_tasks * fast_run_config.generations
        assert {r.generation for r in result.records} == set(range(1, fast_run_config.generations + 1))
        assert {r.arm for r in result.records} == {"with_kt"}
        assert all(r.auxiliary_id is not None and r.auxiliary_id != r.task_id for r in result.records)

    def test_elitism_never_loses_the_best(self, imbalanced: Dataset, fast_run_config: RunConfig):
        result = MultiTaskOversampler(fast_run_config).evolve(imbalanced)
        by_task = {}
        for record in result.records:
            by_task.setdefault(record.task_id, []).append(record)
        for records in by_task.values():
            keys = [_key(r) for r in sorted(records, key=lambda r: r.generation)]
            assert all(a <= b for a, b in zip(keys, keys[1:]))

    def test_synthetic_rows_match_final_best(self, imbalanced: Dataset, fast_run_config: RunConfig):
        result = MultiTaskOversampler(fast_run_config).evolve(imbalanced)
        last = {r.task_id: r for r in result.records if r.generation == fast_run_config.generations}
        for task, row in zip(result.tasks, result.synthetic):
            fitness = evaluate_fitness(row, task.maj_target, task.min_target)
            assert fitness.d_score == pytest.approx(last[task.id].best_d)
            assert fitness.feasible == last[task.id].feasible

    def test_without_transfer(self, imbalanced: Dataset, fast_run_config: RunConfig):
        result = MultiTaskOversampler(fast_run_config, transfer_enabled=False).evolve(imbalanced)
        assert {r.arm for r in result.records} == {"without_kt"}
        assert all(r.auxiliary_id is None for r in result.records)
        assert result.synthetic.shape[0] == len(result.tasks)

    def test_balanced_input_needs_nothing(self, fast_run_config: RunConfig):
        d = make_dataset([[0.0], [1.0], [5.0], [6.0]], [0, 0, 1, 1])
        balanced, result = MultiTaskOversampler(fast_run_config).oversample(d)
        assert balanced is d
        assert result.synthetic.shape == (0, 1)
        assert result.records == []

    def test_single_class_rejected(self, fast_run_config: RunConfig):
        with pytest.raises(DatasetValidationError):
            evolve_all(make_dataset([[0.0], [1.0]], [0, 0]), fast_run_config)

    def test_invalid_config_rejected(self):
        with pytest.raises(ConfigError):
            MultiTaskOversampler(RunConfig(rate_mutation=0.5))

    def test_two_minority_rows(self, fast_run_config: RunConfig, rng: np.random.Generator):
        points = np.vstack([rng.normal(size=(12, 3)), rng.normal(3.0, 0.5, size=(2, 3))])
        d = make_dataset(points, [0] * 12 + [1] * 2)
        assert evolve_all(d, fast_run_config).shape == (10, 3)


class TestDeterminism:
    """Same seed, same output, whatever the worker count."""

    def test_repeatable(self, imbalanced: Dataset, fast_run_config: RunConfig):
        np.testing.assert_array_equal(
            evolve_all(imbalanced, fast_run_config), evolve_all(imbalanced, fast_run_config)
        )

    @pytest.mark.parametrize("transfer", [True, False])
    def test_worker_count_does_not_matter(self, imbalanced: Dataset, fast_run_config: RunConfig, transfer: bool):
        one = evolve_all(imbalanced, fast_run_config, transfer, n_workers=1)
        four = evolve_all(imbalanced, fast_run_config, transfer, n_workers=4)
        np.testing.assert_array_equal(one, four)

    def test_seed_changes_output(self, imbalanced: Dataset, fast_run_config: RunConfig):
        other = dataclasses.replace(fast_run_config, master_seed=fast_run_config.master_seed + 1)
        assert not np.array_equal(evolve_all(imbalanced, fast_run_config), evolve_all(imbalanced, other))


@pytest.mark.slow
class TestBenchmarkRuns:
    """Default hyperparameters on the synthetic suite."""

    @pytest.fixture(scope="class")
    def suite(self):
        return make_benchmark_suite(20, stage_rng(0, "synthetic_suite"))

    def test_every_dataset_balances(self, suite, record_property):
        sampler = HybridSampler(RunConfig(), n_workers=4)
        timings = {}
        for d in suite:
            started = time.perf_counter()
            outcome = sampler.resample(d)
            timings[d.source] = round(time.perf_counter() - started, 2)
            balanced = outcome.stage_counts["undersampled"]
            assert balanced["majority"] == balanced["minority"], d.source
            assert outcome.dataset.majority_count == outcome.dataset.minority_count
        logger.info(f"evosampling seconds per dataset: {timings}")
        record_property("seconds_per_dataset", timings)
        record_property("slowest_dataset_seconds", max(timings.values()))

    def test_ablation_arms_share_tasks(self, suite):
        d = suite[0]
        with_kt = MultiTaskOversampler(RunConfig()).evolve(d)
        without_kt = MultiTaskOversampler(RunConfig(), transfer_enabled=False).evolve(d)
        assert [t.maj_target_index for t in with_kt.tasks] == [t.maj_target_index for t in without_kt.tasks]
        summary = summarise_convergence(with_kt.records + without_kt.records)
        assert {row["arm"] for row in summary} == {"with_kt", "without_kt"}
        for arm in ("with_kt", "without_kt"):
            assert convergence_area([row for row in summary if row["arm"] == arm]) > 0.0

    def test_transfer_wins_most_seeds(self, suite, record_property):
        d = min(suite, key=lambda case: case.majority_count - case.minority_count)
        wins, margins = 0, []
        for seed in range(10):
            cfg = PipelineConfig(run=dataclasses.replace(RunConfig(), master_seed=seed), workers=4)
            _, _, areas = run_ablation(d, cfg)
            margins.append(areas["with_kt"] - areas["without_kt"])
            if margins[-1] >= 0.0:
                wins += 1
            else:
                logger.warning(f"seed {seed}: without_kt area ahead by {-margins[-1]:.4f} on {d.source}")
        record_property("transfer_wins", wins)
        record_property("area_margins", margins)
        assert wins > 5, f"with_kt ahead on {wins}/10 seeds"


@pytest.mark.slow
class TestDownstreamGain:
    """1-NN G-Mean after evosampling against the untouched training split."""

    def test_gmean_improves_on_overlapping_gaussians(self, record_property):
        d = make_two_gaussian(150, 10.0, 2, 2.0, np.random.default_rng(2024), source="overlap-ir10")
        gains = []
        for seed in range(10):
            scores = {}
            for method in ("none", "evosampling"):
                cfg = PipelineConfig(method=method, knn_neighbors=1, workers=4)
                scores[method] = evaluate_once(d, cfg, seed)["g_mean"]
            gains.append(scores["evosampling"] - scores["none"])
        record_property("g_mean_gains", gains)
        assert sum(gain >= 0.0 for gain in gains) >= 8, gains
        assert float(np.mean(gains)) > 0.0
