"""Shared fixtures for the ResamplePilot test suite."""
import numpy as np
import pytest

from config.run_config import RunConfig
from models.data_models import Dataset
from preprocessor.synthetic import make_two_gaussian
from utils.logging_utils import log_system_startup, setup_logger

KEEL_TEXT = """@relation toy
@attribute f1 real [0.0, 10.0]
@attribute f2 real [0.0, 10.0]
@attribute Class {positive, negative}
@inputs f1, f2
@outputs Class
@data
1.0, 2.0, negative
2.0, 3.0, negative
3.0, 1.0, negative
9.0, 9.0, positive
"""

CSV_TEXT = "f1,f2,class\n1.0,2.0,negative\n2.0,3.0,negative\n3.0,1.0,negative\n9.0,9.0,positive\n"

def make_dataset(points, labels, source="") -> Dataset:
    """Dataset from nested lists; labels given as 0 (Majority) / 1 (Minority)."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    return Dataset(
        instances=points,
        labels=np.asarray(labels, dtype=int),
        feature_names=tuple(f"f{j + 1}" for j in range(points.shape[1])),
        source=source,
    )

@pytest.fixture(scope="session", autouse=True)
def test_logger():
    """Route test-run logs to the test log file."""
    setup_logger("test_resample_pilot")
    log_system_startup("ResamplePilot test suite")

@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)

@pytest.fixture
def keel_text() -> str:
    return KEEL_TEXT

@pytest.fixture
def csv_text() -> str:
    return CSV_TEXT

@pytest.fixture
def imbalanced() -> Dataset:
    """30 majority and 5 minority rows from two overlapping Gaussians."""
    return make_two_gaussian(30, 6.0, 2, 2.0, np.random.default_rng(7))

@pytest.fixture
def fast_run_config() -> RunConfig:
    """Small populations and few generations for quick evolution tests."""
    return RunConfig(
        population_size_per_task=8,
        generations=6,
        auxiliary_update_period=2,
        master_seed=3,
    )

