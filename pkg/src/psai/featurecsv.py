"""Feature dataset CSV serialization.

Header is ``student_id,<feature names...>,label``; the score-based dataset
therefore serializes with the fixed header
``student_id,score,course_weight,course_success_rate,label``. Floats are
written with repr so a round trip is bit-exact.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import IO

import numpy as np

from .domain import FeatureDataset, MalformedValue
from .scores import PSAI_FEATURE_NAMES


def write_dataset_csv(dataset: FeatureDataset, dest: IO[str] | str | Path) -> None:
    fh = open(dest, "w", encoding="utf-8", newline="") if isinstance(dest, (str, Path)) else dest
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["student_id", *dataset.feature_names, "label"])
    for sid, row, label in zip(dataset.student_ids, dataset.rows, dataset.labels):
        writer.writerow([sid, *(repr(float(v)) for v in row), int(label)])
    if isinstance(dest, (str, Path)):
        fh.close()


def read_dataset_csv(source: IO[str] | str | Path) -> FeatureDataset:
    """Read a dataset CSV back; provenance is inferred from the header."""
    fh = open(source, "r", encoding="utf-8", newline="") if isinstance(source, (str, Path)) else source
    reader = csv.reader(fh)
    header = next(reader, None)
    if not header or header[0] != "student_id" or header[-1] != "label" or len(header) < 3:
        raise MalformedValue("feature CSV must start with student_id and end with label")
    names = tuple(header[1:-1])
    provenance = "psai" if names == PSAI_FEATURE_NAMES else "naive"

    ids: list[str] = []
    rows: list[list[float]] = []
    labels: list[int] = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedValue(f"row width {len(row)} does not match header")
        ids.append(row[0])
        rows.append([float(v) for v in row[1:-1]])
        labels.append(int(row[-1]))
    if isinstance(source, (str, Path)):
        fh.close()

    return FeatureDataset(
        feature_names=names,
        rows=np.array(rows, dtype=float).reshape(len(ids), len(names)),
        labels=np.array(labels),
        student_ids=tuple(ids),
        provenance=provenance,
    )
