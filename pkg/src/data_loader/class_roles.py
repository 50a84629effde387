"""
Class-role normalization shared by the KEEL and CSV parsers.
"""
from collections import Counter
from typing import List, Optional, Sequence, Tuple
import numpy as np

from models.data_models import ClassLabel, Dataset
from utils.errors import DatasetValidationError

def resolve_class_roles(
    raw_labels: Sequence[str], minority_class: Optional[str] = None, allow_single_class: bool = False
) -> Tuple[str, str]:
    """
    Decide which class name is Minority.

    The rarer class is Minority; on equal counts the name that sorts first
    lexicographically is Minority. An explicit minority_class overrides both.
    With allow_single_class, one-class data maps entirely to Majority and the
    minority name is empty.

    Returns:
        (majority_name, minority_name)
    """
    counts = Counter(raw_labels)
    if len(counts) == 1 and allow_single_class and minority_class is None:
        return next(iter(counts)), ""
    if len(counts) < 2:
        raise DatasetValidationError(
            f"dataset must contain two classes, found {sorted(counts) or 'none'}"
        )
    if len(counts) > 2:
        raise DatasetValidationError(f"only binary datasets are supported, found classes {sorted(counts)}")
    names = sorted(counts)
    if minority_class is not None:
        if minority_class not in counts:
            raise DatasetValidationError(f"minority class '{minority_class}' not present; classes are {names}")
        majority = names[1] if names[0] == minority_class else names[0]
        return majority, minority_class
    minority = min(names, key=lambda name: (counts[name], name))
    majority = names[1] if names[0] == minority else names[0]
    return majority, minority

def build_dataset(
    rows: List[List[float]],
    raw_labels: List[str],
    feature_names: Sequence[str],
    source: str = "",
    minority_class: Optional[str] = None,
    allow_single_class: bool = False,
) -> Dataset:
    """Assemble a Dataset from parsed rows, mapping class names to roles."""
    if not feature_names:
        raise DatasetValidationError("dataset has no feature columns")
    if not rows:
        raise DatasetValidationError("dataset has no data rows")
    majority, minority = resolve_class_roles(raw_labels, minority_class, allow_single_class)
    labels = np.array(
        [ClassLabel.MINORITY if label == minority else ClassLabel.MAJORITY for label in raw_labels],
        dtype=np.int64,
    )
    return Dataset(
        instances=np.array(rows, dtype=np.float64).reshape(len(rows), len(feature_names)),
        labels=labels,
        feature_names=tuple(feature_names),
        source=source,
        class_names=(majority, minority),
    )
