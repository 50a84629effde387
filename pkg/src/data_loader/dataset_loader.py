from pathlib import Path
from typing import Optional, Union
from loguru import logger

from models.data_models import Dataset
from utils.errors import DatasetError
from utils.logging_utils import log_data_loading, log_results_saving
from data_loader.keel_loader import parse_keel
from data_loader.csv_loader import parse_csv, write_csv

class DatasetLoader:
    def __init__(self, label_column: Union[str, int] = "class", minority_class: Optional[str] = None,
                 allow_single_class: bool = False):
        """Initialize the dataset loader."""
        self.label_column = label_column
        self.minority_class = minority_class
        self.allow_single_class = allow_single_class

    @staticmethod
    def detect_format(path: Path, input_format: str = "auto") -> str:
        """Resolve 'auto' from the file suffix: .dat is KEEL, anything else CSV."""
        if input_format != "auto":
            return input_format
        return "keel" if path.suffix.lower() == ".dat" else "csv"

    def load(self, path: Union[str, Path], input_format: str = "auto") -> Dataset:
        """Load a KEEL or CSV file from disk."""
        path = Path(path)
        fmt = self.detect_format(path, input_format)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            log_data_loading(str(path), False)
            raise DatasetError(f"cannot read {path}: {e}") from e

        try:
            if fmt == "keel":
                dataset = parse_keel(
                    text, source=str(path), minority_class=self.minority_class,
                    allow_single_class=self.allow_single_class,
                )
            else:
                dataset = parse_csv(
                    text, self.label_column, source=str(path), minority_class=self.minority_class,
                    allow_single_class=self.allow_single_class,
                )
        except DatasetError as e:
            log_data_loading(str(path), False)
            logger.error(f"Error parsing {path}: {str(e)}")
            raise

        log_data_loading(str(path), True)
        logger.info(
            f"Loaded {dataset.n_rows} rows x {dataset.n_features} features "
            f"(majority '{dataset.class_names[0]}': {dataset.majority_count}, "
            f"minority '{dataset.class_names[1]}': {dataset.minority_count}, IR {dataset.imbalance_ratio:.2f})"
        )
        return dataset

    @staticmethod
    def save(dataset: Dataset, path: Union[str, Path]) -> Path:
        """Write a dataset as CSV, creating parent directories."""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(write_csv(dataset))
        except OSError as e:
            log_results_saving(str(path), False)
            raise DatasetError(f"cannot write {path}: {e}") from e
        log_results_saving(str(path), True)
        return path
