"""Core data types shared by every stage of the pipeline.

Everything here is an immutable in-memory value; parsing and persistence
live in :mod:`psai.ingest` and the CLI. Constructors validate their
invariants and raise a typed error naming the violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

MARK_MIN = 0.0
MARK_MAX = 4.3

#: Letter-grade table on the 4.3-point scale. The pipeline itself consumes
#: numeric marks only; the table exists for generators, docs and demos and
#: can be swapped for institution-specific variants.
GRADE_POINTS: Mapping[str, float] = {
    "F": 0.0,
    "E": 0.0,
    "D": 1.0,
    "D+": 1.3,
    "C-": 1.7,
    "C": 2.0,
    "C+": 2.3,
    "B-": 2.7,
    "B": 3.0,
    "B+": 3.3,
    "A-": 3.7,
    "A": 4.0,
    "A+": 4.3,
}

#: Mark at or above which a record counts as passed when the input carries
#: no explicit pass/fail flag (D on the 4.3 scale).
PASS_MARK = 1.0

#: Categorical profile fields, in CSV column order.
CATEGORICAL_FIELDS = (
    "admission_base",
    "citizenship",
    "previous_program",
    "legal_status",
    "college_program",
    "gender",
)

UNKNOWN_CATEGORY = "unknown"

PROVENANCES = ("psai", "naive")


class PsaiError(Exception):
    """Base class for every error raised by this package."""


class MarkOutOfRange(PsaiError):
    pass


class MissingField(PsaiError):
    pass


class MalformedValue(PsaiError):
    pass


class DuplicateKey(PsaiError):
    pass


class UnknownCourse(PsaiError):
    pass


class TooFewEligible(PsaiError):
    pass


class SingleClass(PsaiError):
    pass


@dataclass(frozen=True, slots=True)
class Mark:
    """A grade on the closed 0.0-4.3 point scale."""

    value: float

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, (int, float)):
            raise MalformedValue(f"mark must be a number, got {self.value!r}")
        v = float(self.value)
        if math.isnan(v) or not (MARK_MIN <= v <= MARK_MAX):
            raise MarkOutOfRange(f"mark {self.value!r} outside [{MARK_MIN}, {MARK_MAX}]")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True, slots=True)
class EnrollmentRecord:
    """One (student, course, term) fact: the atomic input unit."""

    student_id: str
    course_id: str
    term_index: int
    mark: Mark
    passed: bool

    def __post_init__(self) -> None:
        if not self.student_id:
            raise MissingField("student_id")
        if not self.course_id:
            raise MissingField("course_id")
        if isinstance(self.term_index, bool) or not isinstance(self.term_index, int):
            raise MalformedValue(f"term_index must be an integer, got {self.term_index!r}")
        if self.term_index < 0:
            raise MalformedValue(f"term_index must be non-negative, got {self.term_index}")
        if not isinstance(self.mark, Mark):
            raise MalformedValue("mark must be a Mark")
        if not isinstance(self.passed, bool):
            raise MalformedValue(f"passed must be a boolean, got {self.passed!r}")

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.student_id, self.course_id, self.term_index)


def derive_passed(mark: Mark) -> bool:
    """Default pass rule when the data has no explicit flag: mark >= D."""
    return mark.value >= PASS_MARK


def validate_record(raw: Mapping[str, object]) -> EnrollmentRecord:
    """Build a well-formed record from raw field values.

    ``raw`` maps field names to parsed-but-unchecked values; ``None`` or an
    empty string marks a missing cell. ``passed`` may be absent, in which
    case it is derived from the mark. Duplicate-key detection happens at
    dataset level, not here.
    """
    values: dict[str, object] = {}
    for field in ("student_id", "course_id", "term_index", "mark"):
        v = raw.get(field)
        if v is None or v == "":
            raise MissingField(field)
        values[field] = v

    try:
        term = int(str(values["term_index"]))
    except ValueError:
        raise MalformedValue(f"term_index {values['term_index']!r} is not an integer") from None
    try:
        mark_value = float(str(values["mark"]))
    except ValueError:
        raise MalformedValue(f"mark {values['mark']!r} is not a number") from None
    mark = Mark(mark_value)

    passed_raw = raw.get("passed")
    if passed_raw is None or passed_raw == "":
        passed = derive_passed(mark)
    elif isinstance(passed_raw, bool):
        passed = passed_raw
    elif str(passed_raw).strip().lower() in ("true", "1"):
        passed = True
    elif str(passed_raw).strip().lower() in ("false", "0"):
        passed = False
    else:
        raise MalformedValue(f"passed {passed_raw!r} is not a boolean")

    return EnrollmentRecord(
        student_id=str(values["student_id"]),
        course_id=str(values["course_id"]),
        term_index=term,
        mark=mark,
        passed=passed,
    )


@dataclass(frozen=True, slots=True)
class StudentProfile:
    """Static attributes of one student; categoricals are opaque codes."""

    student_id: str
    admission_base: str
    citizenship: str
    previous_program: str
    legal_status: str
    college_program: str
    age: int
    gender: str

    def __post_init__(self) -> None:
        if not self.student_id:
            raise MissingField("student_id")
        for field in CATEGORICAL_FIELDS:
            v = getattr(self, field)
            if not isinstance(v, str) or not v.strip():
                object.__setattr__(self, field, UNKNOWN_CATEGORY)
            else:
                object.__setattr__(self, field, v.strip())
        if isinstance(self.age, bool) or not isinstance(self.age, int) or self.age <= 0:
            raise MalformedValue(f"age must be a positive integer, got {self.age!r}")

    def category(self, field: str) -> str:
        if field not in CATEGORICAL_FIELDS:
            raise KeyError(field)
        return getattr(self, field)


@dataclass(frozen=True)
class Transcript:
    """One student's enrollment history, sorted by term (stable on ties)."""

    student_id: str
    records: tuple[EnrollmentRecord, ...]

    def __post_init__(self) -> None:
        recs = tuple(sorted(self.records, key=lambda r: r.term_index))
        for r in recs:
            if r.student_id != self.student_id:
                raise MalformedValue(
                    f"record for {r.student_id!r} in transcript of {self.student_id!r}"
                )
        object.__setattr__(self, "records", recs)

    def __len__(self) -> int:
        return len(self.records)

    def courses(self) -> set[str]:
        return {r.course_id for r in self.records}


@dataclass(frozen=True, slots=True)
class CourseStats:
    """Per-course aggregates over every record of that course."""

    course_id: str
    mean_mark: float
    success_rate: float
    enrollment_count: int

    def __post_init__(self) -> None:
        if not self.course_id:
            raise MissingField("course_id")
        if not (MARK_MIN <= self.mean_mark <= MARK_MAX):
            raise MarkOutOfRange(f"mean_mark {self.mean_mark!r} outside the grade scale")
        if not (0.0 <= self.success_rate <= 1.0):
            raise MalformedValue(f"success_rate {self.success_rate!r} outside [0, 1]")
        if self.enrollment_count < 1:
            raise MalformedValue("enrollment_count must be positive")


@dataclass(frozen=True)
class FeatureDataset:
    """Feature matrix + labels: the contract between feature builders and ml.

    Rows and labels are frozen numpy arrays; label 1 marks failure. There
    are no missing entries -- imputation happens upstream in the builders.
    """

    feature_names: tuple[str, ...]
    rows: np.ndarray
    labels: np.ndarray
    student_ids: tuple[str, ...]
    provenance: str

    def __post_init__(self) -> None:
        names = tuple(self.feature_names)
        rows = np.array(self.rows, dtype=float)
        labels = np.array(self.labels, dtype=np.int64)
        ids = tuple(self.student_ids)
        if self.provenance not in PROVENANCES:
            raise MalformedValue(f"provenance must be one of {PROVENANCES}")
        if rows.ndim != 2:
            raise MalformedValue("rows must be a 2-D matrix")
        if rows.shape[0] != labels.shape[0] or rows.shape[0] != len(ids):
            raise MalformedValue("rows, labels and student_ids must have equal length")
        if rows.shape[1] != len(names):
            raise MalformedValue("row width must match feature_names")
        if rows.size and not np.all(np.isfinite(rows)):
            raise MalformedValue("rows contain missing or non-finite entries")
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise MalformedValue("labels must be 0/1")
        rows.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "student_ids", ids)

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_features(self) -> int:
        return self.rows.shape[1]

    def take(self, indices: Sequence[int] | np.ndarray) -> "FeatureDataset":
        """Row subset (e.g. one CV fold), preserving order of ``indices``."""
        idx = np.asarray(indices, dtype=np.intp)
        return FeatureDataset(
            feature_names=self.feature_names,
            rows=self.rows[idx],
            labels=self.labels[idx],
            student_ids=tuple(self.student_ids[i] for i in idx),
            provenance=self.provenance,
        )
