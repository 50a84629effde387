"""
Resampling pipeline: GP oversampling followed by granular-ball undersampling,
with SMOTE and identity as comparison methods.
"""
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Optional

from loguru import logger

from config.run_config import RunConfig
from config.settings import Config
from models.ball_models import BallSet
from models.data_models import Dataset
from services.granular_ball_service import generate_balls
from services.smote_service import smote
from utils.common import stage_rng
from utils.errors import ResamplePilotError
from utils.logging_utils import log_stage_counts, log_system_error
from sampler.gb_undersampler import GranularBallUndersampler, UndersampleResult
from sampler.multitask_oversampler import EvolutionResult, MultiTaskOversampler

@dataclass
class ResampleOutcome:
    """Resampled training set plus every intermediate artefact worth reporting."""
    dataset: Dataset
    stage_counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    evolution: Optional[EvolutionResult] = None
    balls: Optional[BallSet] = None
    undersampling: Optional[UndersampleResult] = None

@contextmanager
def pipeline_stage(name: str):
    """Log and re-raise toolkit errors with the failing stage's name attached."""
    try:
        yield
    except ResamplePilotError as e:
        log_system_error(f"Stage '{name}'", str(e))
        e.stage = name
        raise

class HybridSampler:
    """Applies one resampling method to a training set."""

    def __init__(self, run_config: RunConfig, method: str = "evosampling", transfer_enabled: bool = True,
                 n_workers: int = 1, smote_neighbors: int = Config.SMOTE_NEIGHBORS):
        self.cfg = run_config
        self.method = method
        self.transfer_enabled = transfer_enabled
        self.n_workers = n_workers
        self.smote_neighbors = smote_neighbors

    def resample(self, train: Dataset) -> ResampleOutcome:
        outcome = ResampleOutcome(dataset=train, stage_counts={"input": train.class_counts()})
        log_stage_counts("input", train.class_counts())
        if self.method == "none":
            return outcome
        if self.method == "smote":
            return self._smote(train, outcome)
        return self._evosampling(train, outcome)

    def _smote(self, train: Dataset, outcome: ResampleOutcome) -> ResampleOutcome:
        with pipeline_stage("smote"):
            k = min(self.smote_neighbors, train.minority_count - 1)
            if k != self.smote_neighbors:
                logger.warning(f"SMOTE k lowered from {self.smote_neighbors} to {k} for {train.minority_count} minority rows")
            outcome.dataset = smote(train, k, rng=stage_rng(self.cfg.master_seed, "smote"))
        outcome.stage_counts["oversampled"] = outcome.dataset.class_counts()
        log_stage_counts("oversampled", outcome.dataset.class_counts())
        return outcome

    def _evosampling(self, train: Dataset, outcome: ResampleOutcome) -> ResampleOutcome:
        with pipeline_stage("oversampling"):
            oversampler = MultiTaskOversampler(self.cfg, self.transfer_enabled, self.n_workers)
            oversampled, outcome.evolution = oversampler.oversample(train)
        outcome.stage_counts["oversampled"] = oversampled.class_counts()
        log_stage_counts("oversampled", oversampled.class_counts())

        with pipeline_stage("granular_balls"):
            outcome.balls = generate_balls(
                oversampled, self.cfg.gb_quality_threshold, stage_rng(self.cfg.master_seed, "granular_balls")
            )
        with pipeline_stage("undersampling"):
            outcome.undersampling = GranularBallUndersampler(self.cfg.gb_neighbors).run(
                outcome.balls, oversampled, stage_rng(self.cfg.master_seed, "undersampling")
            )
        outcome.dataset = outcome.undersampling.dataset
        outcome.stage_counts["undersampled"] = outcome.dataset.class_counts()
        log_stage_counts("undersampled", outcome.dataset.class_counts())
        return outcome
