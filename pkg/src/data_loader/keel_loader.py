"""
Parser for the KEEL .dat dialect used by the imbalanced benchmark collection.

A document looks like:

    @relation glass4
    @attribute RI real [1.51115, 1.53393]
    @attribute Type {positive, negative}
    @inputs RI
    @outputs Type
    @data
    1.51, positive
"""
import math
import re
from typing import List, Optional

from models.data_models import Dataset
from utils.errors import DatasetParseError
from data_loader.class_roles import build_dataset

_ATTRIBUTE = re.compile(r"^@attribute\s+('[^']*'|\"[^\"]*\"|\S+)\s*(.*)$", re.IGNORECASE)
_MISSING_TOKENS = {"?", ""}

def parse_keel(
    text: str, source: str = "", minority_class: Optional[str] = None, allow_single_class: bool = False
) -> Dataset:
    """
    Parse a KEEL document into a Dataset.

    The last @attribute (or the single @outputs attribute when given) is the
    class; every other attribute must be numeric.

    Raises:
        DatasetParseError: malformed header, missing or non-numeric values
        DatasetValidationError: not exactly two classes
    """
    attributes: List[str] = []
    output_name: Optional[str] = None
    in_data = False
    saw_relation = False
    rows: List[List[float]] = []
    raw_labels: List[str] = []
    feature_positions: List[int] = []
    class_position = -1

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("%"):
            continue

        if not in_data:
            keyword = line.split(None, 1)[0].lower()
            if keyword == "@relation":
                saw_relation = True
            elif keyword == "@attribute":
                match = _ATTRIBUTE.match(line)
                if not match:
                    raise DatasetParseError(f"malformed @attribute declaration: {line!r}", line_number)
                attributes.append(match.group(1).strip("'\""))
            elif keyword == "@inputs":
                continue
            elif keyword == "@outputs":
                parts = line.split(None, 1)
                names = [n.strip() for n in parts[1].split(",")] if len(parts) > 1 else []
                if len(names) != 1 or not names[0]:
                    raise DatasetParseError("exactly one @outputs attribute is required", line_number)
                output_name = names[0]
            elif keyword == "@data":
                if not saw_relation:
                    raise DatasetParseError("@data before @relation", line_number)
                if len(attributes) < 2:
                    raise DatasetParseError("at least one feature and a class attribute are required", line_number)
                class_position = len(attributes) - 1
                if output_name is not None:
                    if output_name not in attributes:
                        raise DatasetParseError(f"@outputs names unknown attribute '{output_name}'", line_number)
                    class_position = attributes.index(output_name)
                feature_positions = [i for i in range(len(attributes)) if i != class_position]
                in_data = True
            else:
                raise DatasetParseError(f"unexpected header line: {line!r}", line_number)
            continue

        values = [v.strip() for v in line.split(",")]
        if len(values) != len(attributes):
            raise DatasetParseError(
                f"data row has {len(values)} values, expected {len(attributes)}", line_number
            )
        if any(v in _MISSING_TOKENS for v in values):
            raise DatasetParseError(f"data row contains a missing value: {line!r}", line_number)
        row = []
        for position in feature_positions:
            try:
                value = float(values[position])
            except ValueError:
                raise DatasetParseError(
                    f"non-numeric value {values[position]!r} for attribute '{attributes[position]}'",
                    line_number,
                ) from None
            if not math.isfinite(value):
                raise DatasetParseError(f"non-finite value {values[position]!r}", line_number)
            row.append(value)
        rows.append(row)
        raw_labels.append(values[class_position].strip("'\""))

    if not in_data:
        raise DatasetParseError("document has no @data section")

    return build_dataset(
        rows,
        raw_labels,
        [attributes[i] for i in feature_positions],
        source=source,
        minority_class=minority_class,
        allow_single_class=allow_single_class,
    )
