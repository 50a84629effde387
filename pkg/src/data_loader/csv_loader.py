"""
CSV reading and writing for datasets.
"""
import math
from io import StringIO
from typing import List, Optional, Union

import numpy as np
import pandas as pd
from pandas.errors import EmptyDataError, ParserError

from config.settings import Config
from models.data_models import Dataset
from utils.errors import DatasetError, DatasetParseError, DatasetValidationError
from data_loader.class_roles import build_dataset

_MISSING_TOKENS = {"", "?"}

def parse_csv(
    text: str,
    label_column: Union[str, int] = Config.CSV_LABEL_COLUMN,
    source: str = "",
    minority_class: Optional[str] = None,
    allow_single_class: bool = False,
) -> Dataset:
    """
    Parse a headed CSV document into a Dataset.

    Args:
        text: CSV document, header row required
        label_column: name of the class column, or its 0-based position
        source: provenance recorded on the Dataset
        minority_class: pin the Minority role to this class name
        allow_single_class: accept one-class data (all rows Majority)

    Raises:
        DatasetParseError: ragged rows, missing or non-numeric feature values
        DatasetValidationError: unknown label column, not exactly two classes
    """
    try:
        frame = pd.read_csv(
            StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            skipinitialspace=True,
        )
    except EmptyDataError as e:
        raise DatasetParseError("document is empty") from e
    except ParserError as e:
        raise DatasetParseError(f"ragged rows: {e}") from e

    header = [str(h).strip() for h in frame.iloc[0].tolist()]
    body = frame.iloc[1:]
    if body.empty:
        raise DatasetValidationError("CSV document has a header but no data rows")

    label_position = _label_position(header, label_column)
    feature_positions = [i for i in range(len(header)) if i != label_position]

    rows: List[List[float]] = []
    raw_labels: List[str] = []
    for row_number, values in enumerate(body.itertuples(index=False, name=None), start=1):
        line_number = row_number + 1
        cells = [v.strip() if isinstance(v, str) else v for v in values]
        if any(not isinstance(c, str) for c in cells):
            raise DatasetParseError(f"row {row_number} has fewer than {len(header)} fields", line_number)
        if any(c in _MISSING_TOKENS for c in cells):
            raise DatasetParseError(f"row {row_number} contains a missing value", line_number)
        row = []
        for position in feature_positions:
            try:
                value = float(cells[position])
            except ValueError:
                raise DatasetParseError(
                    f"row {row_number}: non-numeric value {cells[position]!r} in column '{header[position]}'",
                    line_number,
                ) from None
            if not math.isfinite(value):
                raise DatasetParseError(f"row {row_number}: non-finite value {cells[position]!r}", line_number)
            row.append(value)
        rows.append(row)
        raw_labels.append(cells[label_position])

    return build_dataset(
        rows,
        raw_labels,
        [header[i] for i in feature_positions],
        source=source,
        minority_class=minority_class,
        allow_single_class=allow_single_class,
    )

def write_csv(d: Dataset) -> str:
    """
    Serialize a Dataset to CSV text.

    Features are written with repr() so re-parsing restores every value
    bit-for-bit; labels are written as the original class names.
    """
    if d.n_features == 0:
        raise DatasetError("cannot write a dataset with an empty feature list")
    label_header = _label_header(d.feature_names)
    columns = {}
    for j, name in enumerate(d.feature_names):
        columns[name] = [repr(float(v)) for v in d.instances[:, j]]
    columns[label_header] = [d.class_names[int(label)] for label in d.labels]
    frame = pd.DataFrame(columns, columns=list(d.feature_names) + [label_header])
    return frame.to_csv(index=False, lineterminator="\n")

def _label_header(feature_names) -> str:
    for candidate in (Config.CSV_LABEL_COLUMN, "label", "target"):
        if candidate not in feature_names:
            return candidate
    return f"{Config.CSV_LABEL_COLUMN}_{len(feature_names)}"

def _label_position(header: List[str], label_column: Union[str, int]) -> int:
    if isinstance(label_column, (int, np.integer)) and not isinstance(label_column, bool):
        if not 0 <= int(label_column) < len(header):
            raise DatasetValidationError(
                f"label column index {label_column} out of range for {len(header)} columns"
            )
        return int(label_column)
    if label_column not in header:
        raise DatasetValidationError(f"label column '{label_column}' not found in header {header}")
    return header.index(label_column)
