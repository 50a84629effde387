"""
Run-level configuration: evolutionary hyperparameters and pipeline settings.

Values come from built-in defaults, then a flat json5 key-value file, then the
seed environment variable, then command-line flags.
"""
import dataclasses
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional, Union

import json5
from loguru import logger

from config.settings import Config
from utils.errors import ConfigError

METHODS = ("evosampling", "smote", "none")
INPUT_FORMATS = ("auto", "keel", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Hyperparameters of the multi-task GP oversampler and GB undersampler."""
    population_size_per_task: int = Config.POPULATION_SIZE_PER_TASK
    generations: int = Config.GENERATIONS
    tournament_size: int = Config.TOURNAMENT_SIZE
    rate_standard_crossover: float = Config.RATE_STANDARD_CROSSOVER
    rate_transfer_crossover: float = Config.RATE_TRANSFER_CROSSOVER
    rate_mutation: float = Config.RATE_MUTATION
    max_depth: int = Config.MAX_TREE_DEPTH
    elite_fraction_for_transfer: float = Config.ELITE_FRACTION_FOR_TRANSFER
    auxiliary_update_period: int = Config.AUXILIARY_UPDATE_PERIOD
    gb_quality_threshold: float = Config.GB_QUALITY_THRESHOLD
    gb_neighbors: int = Config.GB_NEIGHBORS
    master_seed: int = Config.DEFAULT_SEED

    def validate(self) -> "RunConfig":
        """Check invariants; return self so calls can be chained."""
        rate_sum = self.rate_standard_crossover + self.rate_transfer_crossover + self.rate_mutation
        if abs(rate_sum - 1.0) > 1e-9:
            raise ConfigError(f"operator rates must sum to 1, got {rate_sum}")
        for name in ("rate_standard_crossover", "rate_transfer_crossover", "rate_mutation"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        for name in ("population_size_per_task", "generations", "tournament_size",
                     "max_depth", "auxiliary_update_period", "gb_neighbors"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.population_size_per_task < 2:
            raise ConfigError("population_size_per_task must be at least 2")
        if self.tournament_size > self.population_size_per_task:
            raise ConfigError("tournament_size cannot exceed population_size_per_task")
        if self.max_depth < 2:
            raise ConfigError("max_depth must be at least 2")
        if not 0.0 < self.elite_fraction_for_transfer <= 1.0:
            raise ConfigError("elite_fraction_for_transfer must be in (0, 1]")
        if not 0.5 < self.gb_quality_threshold <= 1.0:
            raise ConfigError("gb_quality_threshold must be in (0.5, 1]")
        return self


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a CLI subcommand needs, reproducible from (config file, seed)."""
    run: RunConfig = field(default_factory=RunConfig)
    input_path: str = ""
    input_format: str = "auto"
    label_column: Union[str, int] = Config.CSV_LABEL_COLUMN
    minority_class: Optional[str] = None
    method: str = "evosampling"
    transfer_enabled: bool = True
    scaling: bool = False
    output_path: str = ""
    report_path: str = ""
    metrics_path: str = ""
    log_path: str = ""
    train_fraction: float = Config.TRAIN_FRACTION
    knn_neighbors: int = Config.KNN_NEIGHBORS
    smote_neighbors: int = Config.SMOTE_NEIGHBORS
    n_seeds: int = 1
    workers: int = Config.DEFAULT_WORKERS
    verbose: bool = False
    config_path: str = ""

    @property
    def seed(self) -> int:
        return self.run.master_seed

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "PipelineConfig":
        """Load a flat key-value json5 file; unknown keys are rejected."""
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = json5.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except ValueError as e:
            raise ConfigError(f"config file {path} is not valid json5: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path} must contain a single object")
        logger.debug(f"Loaded config file {path} with {len(raw)} keys")
        return cls().with_overrides(config_path=str(path), **raw)

    def with_overrides(self, **values: Any) -> "PipelineConfig":
        """Return a copy with the given flat keys replaced; None values are ignored."""
        run_names = {f.name for f in fields(RunConfig)}
        own_names = {f.name for f in fields(PipelineConfig)} - {"run"}
        run_updates: Dict[str, Any] = {}
        own_updates: Dict[str, Any] = {}
        for key, value in values.items():
            if value is None:
                continue
            if key in ("seed", "master_seed"):
                run_updates["master_seed"] = int(value)
            elif key in run_names:
                run_updates[key] = value
            elif key in own_names:
                own_updates[key] = value
            else:
                raise ConfigError(f"unknown configuration key: {key}")
        try:
            run = dataclasses.replace(self.run, **_coerce(RunConfig, run_updates))
            return dataclasses.replace(self, run=run, **_coerce(PipelineConfig, own_updates))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid configuration value: {e}") from e

    def validate(self, require_input: bool = True) -> "PipelineConfig":
        """Check invariants of the pipeline and the embedded RunConfig."""
        self.run.validate()
        if self.method not in METHODS:
            raise ConfigError(f"unknown method '{self.method}', expected one of {METHODS}")
        if self.input_format not in INPUT_FORMATS:
            raise ConfigError(f"unknown input format '{self.input_format}'")
        if require_input and not self.input_path:
            raise ConfigError("input path is required")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train_fraction must be in (0, 1)")
        for name in ("knn_neighbors", "smote_neighbors", "n_seeds", "workers"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Flat dictionary used to embed the configuration in run reports."""
        flat = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "run"}
        flat.update(dataclasses.asdict(self.run))
        return flat


def _coerce(cls, updates: Dict[str, Any]) -> Dict[str, Any]:
    """Cast raw file/flag values to the declared field types."""
    types = {f.name: f.type for f in fields(cls)}
    coerced = {}
    for key, value in updates.items():
        declared = types[key]
        if declared in (int, "int"):
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(f"{key} must be an integer, got {value!r}")
            coerced[key] = int(value)
        elif declared in (float, "float"):
            coerced[key] = float(value)
        elif declared in (bool, "bool"):
            coerced[key] = _as_bool(key, value)
        elif declared in (str, "str"):
            coerced[key] = str(value)
        elif key == "label_column":
            coerced[key] = int(value) if isinstance(value, int) or str(value).isdigit() else str(value)
        else:
            coerced[key] = value
    return coerced


def _as_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"{key} must be a boolean, got {value!r}")
