"""
Dataset preprocessing: class bookkeeping, stratified splitting and optional
min-max scaling.
"""
import math
from dataclasses import dataclass
from typing import Tuple
import numpy as np
from loguru import logger

from models.data_models import ClassLabel, Dataset
from utils.errors import DatasetValidationError

def class_partition(d: Dataset) -> Tuple[np.ndarray, np.ndarray]:
    """Row indices of each class as (majority_indices, minority_indices), original order."""
    majority = np.flatnonzero(d.labels == ClassLabel.MAJORITY)
    minority = np.flatnonzero(d.labels == ClassLabel.MINORITY)
    return majority, minority

def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))

def stratified_split(d: Dataset, train_fraction: float, rng: np.random.Generator) -> Tuple[Dataset, Dataset]:
    """
    Split a dataset into train and test keeping per-class proportions.

    Each class contributes round(train_fraction * class size) rows to train,
    rounding halves up; the rest go to test. Rows keep their original order
    inside each split.

    Raises:
        DatasetValidationError: a class cannot appear in both splits
    """
    if not 0.0 < train_fraction < 1.0:
        raise DatasetValidationError(f"train_fraction must be in (0, 1), got {train_fraction}")

    train_rows = []
    for role, rows in zip((ClassLabel.MAJORITY, ClassLabel.MINORITY), class_partition(d)):
        n_train = _round_half_up(train_fraction * rows.shape[0])
        if rows.shape[0] < 2 or n_train < 1 or n_train >= rows.shape[0]:
            raise DatasetValidationError(
                f"{role.name.lower()} class has {rows.shape[0]} rows; too few for a "
                f"{train_fraction:.2f} stratified split"
            )
        train_rows.append(rng.permutation(rows)[:n_train])

    in_train = np.zeros(d.n_rows, dtype=bool)
    in_train[np.concatenate(train_rows)] = True
    train = d.subset(np.flatnonzero(in_train), source=f"{d.source}#train")
    test = d.subset(np.flatnonzero(~in_train), source=f"{d.source}#test")
    logger.debug(
        f"Stratified split {train_fraction:.2f}: train {train.class_counts()}, test {test.class_counts()}"
    )
    return train, test

@dataclass(frozen=True)
class MinMaxScaling:
    """Per-feature affine map onto [0, 1] fitted on one dataset."""
    minimum: np.ndarray
    span: np.ndarray

    def apply(self, d: Dataset) -> Dataset:
        """Rescale a dataset with the fitted minimum and span."""
        if d.n_features != self.minimum.shape[0]:
            raise DatasetValidationError(
                f"scaling fitted on {self.minimum.shape[0]} features, dataset has {d.n_features}"
            )
        return Dataset(
            instances=(d.instances - self.minimum) / self.span,
            labels=d.labels,
            feature_names=d.feature_names,
            source=d.source,
            class_names=d.class_names,
        )

def fit_min_max(d: Dataset) -> MinMaxScaling:
    """Fit min-max scaling; constant features keep a span of 1."""
    minimum = d.instances.min(axis=0)
    span = d.instances.max(axis=0) - minimum
    span = np.where(span > 0, span, 1.0)
    return MinMaxScaling(minimum=minimum, span=span)
