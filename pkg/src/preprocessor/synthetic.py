"""
Synthetic imbalanced datasets for experiments and tests.

The benchmark suite spreads imbalance ratios over the range found in the
public imbalanced benchmark collection (roughly 9 to 86) at desk scale.
"""
import math
from typing import List
import numpy as np

from models.data_models import ClassLabel, Dataset
from utils.errors import DatasetValidationError

SUITE_IR_RANGE = (9.0, 86.0)

def make_two_gaussian(
    n_majority: int,
    imbalance_ratio: float,
    n_features: int,
    separation: float,
    rng: np.random.Generator,
    source: str = "two-gaussian",
) -> Dataset:
    """
    Two overlapping unit-variance Gaussian classes.

    The minority mean sits `separation` units from the origin along the main
    diagonal; the minority size is round(n_majority / imbalance_ratio), at
    least 2. Rows are shuffled.
    """
    if n_majority < 2 or n_features < 1 or imbalance_ratio < 1.0:
        raise DatasetValidationError(
            f"invalid two-Gaussian request: n_majority={n_majority}, "
            f"n_features={n_features}, imbalance_ratio={imbalance_ratio}"
        )
    n_minority = max(2, int(round(n_majority / imbalance_ratio)))
    direction = np.ones(n_features) / math.sqrt(n_features)
    majority = rng.normal(0.0, 1.0, size=(n_majority, n_features))
    minority = rng.normal(0.0, 1.0, size=(n_minority, n_features)) + separation * direction
    instances = np.vstack([majority, minority])
    labels = np.concatenate([
        np.full(n_majority, ClassLabel.MAJORITY),
        np.full(n_minority, ClassLabel.MINORITY),
    ])
    order = rng.permutation(instances.shape[0])
    return Dataset(
        instances=instances[order],
        labels=labels[order],
        feature_names=tuple(f"f{j + 1}" for j in range(n_features)),
        source=source,
        class_names=("negative", "positive"),
    )

def make_benchmark_suite(
    n_cases: int,
    rng: np.random.Generator,
    max_rows: int = 500,
    max_features: int = 10,
    separation: float = 1.5,
) -> List[Dataset]:
    """
    Desk-scale suite of two-Gaussian datasets with geometrically spaced IRs.

    Every case has at most max_rows rows and max_features features, at least
    4 minority rows, and an imbalance ratio inside SUITE_IR_RANGE.
    """
    if n_cases < 1:
        raise DatasetValidationError("n_cases must be positive")
    low, high = SUITE_IR_RANGE
    min_rows = int(math.ceil(4 * (high + 1)))
    if max_rows < min_rows:
        raise DatasetValidationError(f"max_rows must be at least {min_rows} to reach IR {high}")
    targets = np.geomspace(low, high, n_cases) if n_cases > 1 else np.array([low])

    suite = []
    for case, target_ir in enumerate(targets):
        n_features = 2 + case % max(1, max_features - 1)
        total = int(rng.integers(max_rows // 2, max_rows + 1))
        n_minority = max(4, int(round(total / (target_ir + 1))))
        n_majority = min(int(math.floor(n_minority * target_ir)), max_rows - n_minority)
        # make_two_gaussian rounds n_majority / IR; pass the exact ratio back
        suite.append(make_two_gaussian(
            n_majority,
            n_majority / n_minority,
            min(n_features, max_features),
            separation,
            rng,
            source=f"suite-{case:02d}-ir{target_ir:.1f}",
        ))
    return suite
