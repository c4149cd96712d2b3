"""Baseline feature set: demographics plus plain transcript aggregates.

The comparison method uses only attributes recorded directly in the data:
six one-hot-encoded categorical profile fields plus age, credits obtained
and GPA. Aggregates are computed strictly before the student's first
attempt at the target course, on the same eligible cohort as the
difficulty-weighted builder, so the two datasets are row-aligned.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .domain import (
    CATEGORICAL_FIELDS,
    FeatureDataset,
    MalformedValue,
    SingleClass,
    StudentProfile,
    TooFewEligible,
    Transcript,
    UNKNOWN_CATEGORY,
    UnknownCourse,
)
from .scores import eligibility_split, first_attempt

DEFAULT_CREDIT_VALUE = 3.0


def compute_gpa(transcript: Transcript, before_term: int) -> float | None:
    """Unweighted mean mark over records with term_index < before_term.

    None when the student has no records before the cutoff.
    """
    marks = [r.mark.value for r in transcript.records if r.term_index < before_term]
    if not marks:
        return None
    return math.fsum(marks) / len(marks)


def credits_obtained(
    transcript: Transcript, before_term: int, credit_value: float = DEFAULT_CREDIT_VALUE
) -> float:
    """Credits from passed records before the cutoff, at a flat per-course value."""
    if credit_value <= 0:
        raise MalformedValue(f"credit_value must be positive, got {credit_value!r}")
    passed = sum(1 for r in transcript.records if r.term_index < before_term and r.passed)
    return credit_value * passed


class CategoricalEncoder:
    """Deterministic one-hot encoder over the profile's categorical fields.

    Categories are learned at fit time and ordered lexicographically per
    field; the "unknown" sentinel always has a column, and unseen
    categories at transform time map to it.
    """

    def __init__(self) -> None:
        self._categories: dict[str, tuple[str, ...]] = {}

    def fit(self, profiles: Iterable[StudentProfile]) -> "CategoricalEncoder":
        values: dict[str, set[str]] = {f: {UNKNOWN_CATEGORY} for f in CATEGORICAL_FIELDS}
        for p in profiles:
            for f in CATEGORICAL_FIELDS:
                values[f].add(p.category(f))
        self._categories = {f: tuple(sorted(values[f])) for f in CATEGORICAL_FIELDS}
        return self

    @property
    def feature_names(self) -> tuple[str, ...]:
        self._require_fitted()
        return tuple(
            f"{field}={cat}" for field in CATEGORICAL_FIELDS for cat in self._categories[field]
        )

    @property
    def n_columns(self) -> int:
        return sum(len(cats) for cats in self._categories.values())

    def transform(self, profiles: Sequence[StudentProfile]) -> np.ndarray:
        self._require_fitted()
        out = np.zeros((len(profiles), self.n_columns))
        col = 0
        for field in CATEGORICAL_FIELDS:
            cats = self._categories[field]
            index = {cat: col + j for j, cat in enumerate(cats)}
            unknown = index[UNKNOWN_CATEGORY]
            for i, p in enumerate(profiles):
                out[i, index.get(p.category(field), unknown)] = 1.0
            col += len(cats)
        return out

    def _require_fitted(self) -> None:
        if not self._categories:
            raise MalformedValue("encoder used before fit()")


def encode_categoricals(
    profiles: Sequence[StudentProfile],
) -> tuple[CategoricalEncoder, np.ndarray]:
    """Fit an encoder on the profiles and return it with their vectors."""
    encoder = CategoricalEncoder().fit(profiles)
    return encoder, encoder.transform(profiles)


def build_naive_dataset(
    target_course: str,
    transcripts: Mapping[str, Transcript],
    profiles: Iterable[StudentProfile],
    credit_value: float = DEFAULT_CREDIT_VALUE,
) -> FeatureDataset:
    """Demographic + aggregate rows for the same cohort as the score builder.

    Students missing from ``profiles`` get an all-unknown profile with the
    median age of the supplied profiles, so the eligible row set never
    shrinks relative to the difficulty-weighted dataset.
    """
    profile_list = list(profiles)
    by_id = {}
    for p in profile_list:
        by_id.setdefault(p.student_id, p)

    takers_exist = any(target_course in t.courses() for t in transcripts.values())
    if not takers_exist:
        raise UnknownCourse(f"no transcript contains course {target_course!r}")

    eligible, _ = eligibility_split(transcripts, target_course)
    if len(eligible) < 2:
        raise TooFewEligible(
            f"only {len(eligible)} eligible student(s) for course {target_course!r}"
        )

    if by_id:
        ages = sorted(p.age for p in by_id.values())
        median_age = ages[len(ages) // 2]
    else:
        raise MalformedValue("no profiles supplied")

    cohort_profiles = []
    gpas: list[float | None] = []
    credits: list[float] = []
    labels: list[int] = []
    for sid in eligible:
        t = transcripts[sid]
        cutoff = first_attempt(t, target_course).term_index
        cohort_profiles.append(
            by_id.get(sid)
            or StudentProfile(
                student_id=sid,
                admission_base=UNKNOWN_CATEGORY,
                citizenship=UNKNOWN_CATEGORY,
                previous_program=UNKNOWN_CATEGORY,
                legal_status=UNKNOWN_CATEGORY,
                college_program=UNKNOWN_CATEGORY,
                age=median_age,
                gender=UNKNOWN_CATEGORY,
            )
        )
        gpas.append(compute_gpa(t, cutoff))
        credits.append(credits_obtained(t, cutoff, credit_value))
        labels.append(0 if first_attempt(t, target_course).passed else 1)

    if len(set(labels)) < 2:
        raise SingleClass(f"all eligible students share one label for {target_course!r}")

    present = [g for g in gpas if g is not None]
    mean_gpa = math.fsum(present) / len(present) if present else 0.0
    gpa_col = np.array([g if g is not None else mean_gpa for g in gpas])

    encoder = CategoricalEncoder().fit(profile_list)
    onehot = encoder.transform(cohort_profiles)
    ages_col = np.array([p.age for p in cohort_profiles], dtype=float)
    rows = np.column_stack([onehot, ages_col, np.array(credits), gpa_col])
    names = encoder.feature_names + ("age", "credits_obtained", "gpa")

    return FeatureDataset(
        feature_names=names,
        rows=rows,
        labels=np.array(labels),
        student_ids=tuple(eligible),
        provenance="naive",
    )
