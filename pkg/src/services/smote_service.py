"""
SMOTE oversampling baseline.
"""
from typing import Tuple
import numpy as np
from loguru import logger
from scipy.spatial.distance import cdist

from config.settings import Config
from models.data_models import Dataset
from utils.errors import SamplingError

def smote(
    train: Dataset,
    k: int = Config.SMOTE_NEIGHBORS,
    n_to_generate: int = None,
    rng: np.random.Generator = None,
) -> Dataset:
    """
    Interpolate new minority rows between minority rows and their neighbours.

    Each sample picks a minority row x_i uniformly, one of its k nearest
    minority neighbours x_j uniformly, and emits x_i + (x_j - x_i) * u with u
    uniform in [0, 1). n_to_generate defaults to |Maj| - |Min|.

    Raises:
        SamplingError: fewer than two minority rows or k >= |Min|
    """
    minority = train.minority_instances
    m = minority.shape[0]
    if m < 2:
        raise SamplingError(f"SMOTE needs at least 2 minority rows, got {m}")
    if not 1 <= k <= m - 1:
        raise SamplingError(f"SMOTE k={k} must be in [1, {m - 1}] for {m} minority rows")
    if n_to_generate is None:
        n_to_generate = max(0, train.majority_count - train.minority_count)
    if n_to_generate == 0:
        return train
    rng = rng if rng is not None else np.random.default_rng(Config.DEFAULT_SEED)
    synthetic, _, _ = smote_samples(minority, k, n_to_generate, rng)
    logger.debug(f"SMOTE generated {n_to_generate} rows from {m} minority rows (k={k})")
    return train.with_minority(synthetic, source=f"{train.source}+smote")

def smote_samples(
    minority: np.ndarray, k: int, n_samples: int, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Synthetic rows plus the row indices of each generating pair (x_i, x_j)."""
    distances = cdist(minority, minority)
    np.fill_diagonal(distances, np.inf)
    neighbors = np.argsort(distances, axis=1, kind="stable")[:, :k]

    base = rng.integers(minority.shape[0], size=n_samples)
    partner = neighbors[base, rng.integers(k, size=n_samples)]
    gap = rng.random(n_samples)[:, None]
    x_i, x_j = minority[base], minority[partner]
    synthetic = x_i + (x_j - x_i) * gap
    # keep rounding noise inside the pair's bounding box
    synthetic = np.clip(synthetic, np.minimum(x_i, x_j), np.maximum(x_i, x_j))
    return synthetic, base, partner
