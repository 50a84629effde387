"""
Centralized configuration settings for the ResamplePilot resampling toolkit.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Config:
    """Main configuration class containing all system settings."""

    # Base paths
    BASE_DIR = Path(__file__).parent.parent.parent
    LOGS_DIR = BASE_DIR / "logs"
    OUTPUT_DIR = BASE_DIR / "output"

    # Seeding
    SEED_ENV_VAR = "RESAMPLEPILOT_SEED"
    DEFAULT_SEED = 0

    # Multi-task GP oversampling (parameter table defaults)
    POPULATION_SIZE_PER_TASK = 30
    GENERATIONS = 50
    TOURNAMENT_SIZE = 3
    RATE_STANDARD_CROSSOVER = 0.50
    RATE_TRANSFER_CROSSOVER = 0.30
    RATE_MUTATION = 0.20
    MAX_TREE_DEPTH = 10
    ELITE_FRACTION_FOR_TRANSFER = 0.30
    AUXILIARY_UPDATE_PERIOD = 10
    OPERATOR_RETRY_LIMIT = 8
    MUTATION_SUBTREE_DEPTH = 4
    CONSTANT_RANGE = (-1.0, 1.0)

    # Granular-ball undersampling
    GB_QUALITY_THRESHOLD = 1.0
    GB_NEIGHBORS = 3

    # Baselines and evaluation harness
    SMOTE_NEIGHBORS = 5
    KNN_NEIGHBORS = 5
    TRAIN_FRACTION = 0.7

    # System Settings
    DEFAULT_WORKERS = 1
    LOG_ROTATION = "500 MB"
    CSV_LABEL_COLUMN = "class"

    # Log file names - centralized configuration
    MAIN_LOG_FILE = "resample_pilot.log"
    TEST_LOG_FILE = "test_resample_pilot.log"

    # Log retention settings
    LOG_RETENTION_DAYS = "30 days"
    LOG_COMPRESSION = "zip"

    @classmethod
    def env_seed(cls):
        """Return the seed from the environment, or None when unset."""
        raw = os.getenv(cls.SEED_ENV_VAR)
        if raw is None or not raw.strip():
            return None
        return int(raw.strip())
