"""
Data models for datasets flowing through the resampling pipeline.
"""
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence, Tuple
import numpy as np

from utils.errors import DatasetValidationError

class ClassLabel(IntEnum):
    """Binary class role; Minority is the positive class for metrics."""
    MAJORITY = 0
    MINORITY = 1

@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Immutable feature matrix with binary labels.

    Attributes:
        instances: (n, d) float array, one Instance per row
        labels: (n,) int array of ClassLabel values
        feature_names: one name per column
        source: provenance text
        class_names: original class names as (majority_name, minority_name)
    """
    instances: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...]
    source: str = ""
    class_names: Tuple[str, str] = ("negative", "positive")

    def __post_init__(self):
        instances = np.array(self.instances, dtype=np.float64, copy=True)
        labels = np.array(self.labels, dtype=np.int64, copy=True)
        if instances.ndim != 2:
            if instances.size == 0 and labels.size == 0:
                raise DatasetValidationError("dataset has no instances")
            raise DatasetValidationError(f"instances must be a 2-D matrix, got shape {instances.shape}")
        if labels.ndim != 1 or labels.shape[0] != instances.shape[0]:
            raise DatasetValidationError(
                f"labels length {labels.shape} does not match {instances.shape[0]} instances"
            )
        if instances.shape[0] == 0:
            raise DatasetValidationError("dataset has no instances")
        if len(self.feature_names) != instances.shape[1]:
            raise DatasetValidationError(
                f"{len(self.feature_names)} feature names for {instances.shape[1]} features"
            )
        if not np.all(np.isfinite(instances)):
            raise DatasetValidationError("instances contain NaN or infinite values")
        if not np.all(np.isin(labels, (ClassLabel.MAJORITY, ClassLabel.MINORITY))):
            raise DatasetValidationError("labels must be Majority (0) or Minority (1)")
        instances.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "instances", instances)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", tuple(str(n) for n in self.feature_names))
        object.__setattr__(self, "class_names", (str(self.class_names[0]), str(self.class_names[1])))

    @property
    def n_rows(self) -> int:
        return int(self.instances.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.instances.shape[1])

    @property
    def minority_count(self) -> int:
        return int(np.count_nonzero(self.labels == ClassLabel.MINORITY))

    @property
    def majority_count(self) -> int:
        return int(np.count_nonzero(self.labels == ClassLabel.MAJORITY))

    @property
    def imbalance_ratio(self) -> float:
        """|Maj| / |Min|; infinite when the minority class is absent."""
        if self.minority_count == 0:
            return float("inf")
        return self.majority_count / self.minority_count

    @property
    def minority_instances(self) -> np.ndarray:
        return self.instances[self.labels == ClassLabel.MINORITY]

    @property
    def majority_instances(self) -> np.ndarray:
        return self.instances[self.labels == ClassLabel.MAJORITY]

    def class_counts(self) -> dict:
        return {"majority": self.majority_count, "minority": self.minority_count}

    def require_both_classes(self) -> "Dataset":
        """Raise unless both classes are present; return self for chaining."""
        if self.minority_count == 0 or self.majority_count == 0:
            raise DatasetValidationError(
                f"both classes are required, got {self.majority_count} majority / {self.minority_count} minority"
            )
        return self

    def subset(self, rows: Sequence[int], source: Optional[str] = None) -> "Dataset":
        """Dataset restricted to the given row indices, in the given order."""
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(
            instances=self.instances[rows],
            labels=self.labels[rows],
            feature_names=self.feature_names,
            source=self.source if source is None else source,
            class_names=self.class_names,
        )

    def with_minority(self, synthetic: np.ndarray, source: Optional[str] = None) -> "Dataset":
        """Dataset with synthetic rows appended and labelled Minority."""
        synthetic = np.asarray(synthetic, dtype=np.float64).reshape(-1, self.n_features)
        return Dataset(
            instances=np.vstack([self.instances, synthetic]),
            labels=np.concatenate([self.labels, np.full(synthetic.shape[0], ClassLabel.MINORITY)]),
            feature_names=self.feature_names,
            source=self.source if source is None else source,
            class_names=self.class_names,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.feature_names == other.feature_names
            and self.source == other.source
            and self.class_names == other.class_names
            and self.instances.shape == other.instances.shape
            and np.array_equal(self.instances, other.instances)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None
