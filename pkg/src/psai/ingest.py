"""CSV ingestion: parse, validate and index enrollment and profile files.

Real transcript exports are noisy, so malformed rows never abort a run:
they are dropped and counted per error kind in the IngestReport. Only a
malformed header is fatal.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence

from .domain import (
    CATEGORICAL_FIELDS,
    CourseStats,
    DuplicateKey,
    EnrollmentRecord,
    MalformedValue,
    PsaiError,
    StudentProfile,
    Transcript,
    validate_record,
)

ENROLLMENT_HEADER = ("student_id", "course_id", "term_index", "mark", "passed")
PROFILE_HEADER = ("student_id",) + CATEGORICAL_FIELDS[:-1] + ("age", "gender")


class MalformedHeader(PsaiError):
    pass


class NegativeAge(PsaiError):
    pass


@dataclass
class IngestReport:
    """Counts of what a parse accepted, dropped and indexed."""

    accepted_records: int = 0
    dropped_records: int = 0
    drop_reasons: dict[str, int] = field(default_factory=dict)
    courses_indexed: int = 0
    students_indexed: int = 0

    def record_drop(self, kind: str) -> None:
        self.dropped_records += 1
        self.drop_reasons[kind] = self.drop_reasons.get(kind, 0) + 1

    def to_json_dict(self) -> dict:
        return {
            "accepted": self.accepted_records,
            "dropped": self.dropped_records,
            "drop_reasons": dict(sorted(self.drop_reasons.items())),
            "courses": self.courses_indexed,
            "students": self.students_indexed,
        }


def _open_text(source: IO[bytes] | IO[str] | str | Path):
    """Accept a path or an open (byte or text) stream; yield text lines."""
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline="")
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8", newline="")


def _check_header(row: Sequence[str] | None, expected: Sequence[str], optional_tail: int = 0):
    if row is None:
        raise MalformedHeader("empty file")
    got = tuple(cell.strip() for cell in row)
    for n_optional in range(optional_tail + 1):
        if got == tuple(expected[: len(expected) - n_optional]):
            return
    raise MalformedHeader(f"expected header {','.join(expected)}, got {','.join(got)}")


def parse_enrollments(
    source: IO[bytes] | IO[str] | str | Path,
) -> tuple[list[EnrollmentRecord], IngestReport]:
    """Parse an enrollments CSV; the ``passed`` column is optional.

    Returns the accepted records in file order plus a report reconciling
    accepted + dropped with the number of input rows.
    """
    report = IngestReport()
    records: list[EnrollmentRecord] = []
    seen_keys: set[tuple[str, str, int]] = set()

    fh = _open_text(source)
    reader = csv.reader(fh)
    header = next(reader, None)
    _check_header(header, ENROLLMENT_HEADER, optional_tail=1)

    for row in reader:
        if not row:
            continue
        if len(row) > len(ENROLLMENT_HEADER):
            report.record_drop("MalformedValue")
            continue
        cells = list(row) + [""] * (len(ENROLLMENT_HEADER) - len(row))
        raw = {name: cells[i].strip() for i, name in enumerate(ENROLLMENT_HEADER)}
        try:
            record = validate_record(raw)
            if record.key in seen_keys:
                raise DuplicateKey(f"duplicate (student, course, term) key {record.key}")
        except PsaiError as err:
            report.record_drop(type(err).__name__)
            continue
        seen_keys.add(record.key)
        records.append(record)
        report.accepted_records += 1

    report.courses_indexed = len({r.course_id for r in records})
    report.students_indexed = len({r.student_id for r in records})
    return records, report


def serialize_enrollments(records: Iterable[EnrollmentRecord], dest: IO[str] | str | Path) -> None:
    """Write records back to the enrollments CSV schema (round-trip exact)."""
    fh = open(dest, "w", encoding="utf-8", newline="") if isinstance(dest, (str, Path)) else dest
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(ENROLLMENT_HEADER)
    for r in records:
        writer.writerow(
            [r.student_id, r.course_id, r.term_index, repr(r.mark.value),
             "true" if r.passed else "false"]
        )
    if isinstance(dest, (str, Path)):
        fh.close()


def parse_profiles(source: IO[bytes] | IO[str] | str | Path) -> list[StudentProfile]:
    """Parse the profiles CSV.

    Missing categorical cells become the "unknown" category; missing ages
    are imputed with the cohort median in a second pass. Rows with a
    non-positive age are dropped; the first row wins on duplicate ids.
    """
    fh = _open_text(source)
    reader = csv.reader(fh)
    header = next(reader, None)
    _check_header(header, PROFILE_HEADER)

    staged: list[dict] = []
    ages: list[int] = []
    seen_ids: set[str] = set()
    for row in reader:
        if not row:
            continue
        cells = list(row) + [""] * (len(PROFILE_HEADER) - len(row))
        raw = {name: cells[i].strip() for i, name in enumerate(PROFILE_HEADER)}
        if not raw["student_id"] or raw["student_id"] in seen_ids:
            continue
        age: int | None
        try:
            age = int(raw["age"])
        except ValueError:
            age = None  # unparseable counts as missing, imputed below
        if age is not None and age <= 0:
            # NegativeAge: the row is unusable, drop it entirely
            continue
        seen_ids.add(raw["student_id"])
        staged.append({**raw, "age": age})
        if age is not None:
            ages.append(age)

    if staged and not ages:
        raise MalformedValue("no usable ages in profile file; cannot impute")
    median_age = int(math.floor(statistics.median(ages) + 0.5)) if ages else 0

    profiles = []
    for raw in staged:
        profiles.append(
            StudentProfile(
                student_id=raw["student_id"],
                admission_base=raw["admission_base"],
                citizenship=raw["citizenship"],
                previous_program=raw["previous_program"],
                legal_status=raw["legal_status"],
                college_program=raw["college_program"],
                age=raw["age"] if raw["age"] is not None else median_age,
                gender=raw["gender"],
            )
        )
    return profiles


def serialize_profiles(profiles: Iterable[StudentProfile], dest: IO[str] | str | Path) -> None:
    fh = open(dest, "w", encoding="utf-8", newline="") if isinstance(dest, (str, Path)) else dest
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PROFILE_HEADER)
    for p in profiles:
        writer.writerow(
            [p.student_id, p.admission_base, p.citizenship, p.previous_program,
             p.legal_status, p.college_program, p.age, p.gender]
        )
    if isinstance(dest, (str, Path)):
        fh.close()


def compute_course_stats(records: Iterable[EnrollmentRecord]) -> dict[str, CourseStats]:
    """Per-course mean mark, success rate and enrollment count.

    Sums use math.fsum, so the result is independent of input order.
    """
    marks: dict[str, list[float]] = {}
    passes: dict[str, int] = {}
    for r in records:
        marks.setdefault(r.course_id, []).append(r.mark.value)
        passes[r.course_id] = passes.get(r.course_id, 0) + (1 if r.passed else 0)

    stats: dict[str, CourseStats] = {}
    for course_id in sorted(marks):
        values = marks[course_id]
        n = len(values)
        stats[course_id] = CourseStats(
            course_id=course_id,
            mean_mark=math.fsum(values) / n,
            success_rate=passes[course_id] / n,
            enrollment_count=n,
        )
    return stats


def build_transcripts(records: Iterable[EnrollmentRecord]) -> dict[str, Transcript]:
    """Group records into per-student transcripts, keyed by student id."""
    by_student: dict[str, list[EnrollmentRecord]] = {}
    for r in records:
        by_student.setdefault(r.student_id, []).append(r)
    return {
        sid: Transcript(student_id=sid, records=tuple(recs))
        for sid, recs in sorted(by_student.items())
    }
