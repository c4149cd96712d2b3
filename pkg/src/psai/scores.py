"""Difficulty-weighted student scores and the per-course feature dataset.

For a target course, every student who took it and has at least one
strictly earlier course gets one row:

    score                 mean over prior courses of mark * course weight
    course_weight         weight of the target course at its mean mark
    course_success_rate   overall pass rate in the target course
    label                 1 if the first attempt at the target failed

Students whose first recorded course is the target have no history to
score and are excluded (the eligible/ineligible split is exposed for
reporting). "Before" means a term index strictly below the first attempt;
same-term courses would leak contemporaneous information and are out. A
retaken prior course contributes only its latest pre-target mark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .domain import (
    CourseStats,
    EnrollmentRecord,
    FeatureDataset,
    PsaiError,
    SingleClass,
    TooFewEligible,
    Transcript,
    UnknownCourse,
)
from .weighting import WeightParams, course_weight

PSAI_FEATURE_NAMES = ("score", "course_weight", "course_success_rate")


class TargetNotInTranscript(PsaiError):
    pass


class EmptyPriors(PsaiError):
    pass


@dataclass(frozen=True, slots=True)
class PsaiRow:
    student_id: str
    score: float
    course_weight: float
    course_success_rate: float
    label: int

    def __post_init__(self) -> None:
        if self.score < 0:
            raise PsaiError(f"score must be non-negative, got {self.score!r}")


def first_attempt(transcript: Transcript, course_id: str) -> EnrollmentRecord:
    """The earliest record of ``course_id`` (ties resolved by file order)."""
    for r in transcript.records:  # sorted by term, stable
        if r.course_id == course_id:
            return r
    raise TargetNotInTranscript(
        f"student {transcript.student_id!r} has no record of course {course_id!r}"
    )


def prior_courses(transcript: Transcript, target_course: str) -> list[tuple[str, float]]:
    """(course, mark) pairs for courses taken strictly before the target.

    One pair per distinct prior course; a retaken course contributes the
    mark of its latest attempt before the target. Sorted by course id so
    downstream accumulation is order-independent.
    """
    cutoff = first_attempt(transcript, target_course).term_index
    latest: dict[str, EnrollmentRecord] = {}
    for r in transcript.records:
        if r.term_index >= cutoff:
            break  # records are sorted by term
        prev = latest.get(r.course_id)
        if prev is None or r.term_index >= prev.term_index:
            latest[r.course_id] = r
    return [(cid, latest[cid].mark.value) for cid in sorted(latest)]


def student_score(
    priors: Iterable[tuple[str, float]],
    stats: Mapping[str, CourseStats],
    params: WeightParams,
) -> float:
    """Mean over prior courses of (student's mark * that course's weight)."""
    terms = []
    for course_id, mark in priors:
        if course_id not in stats:
            raise UnknownCourse(f"no stats for prior course {course_id!r}")
        terms.append(mark * course_weight(params, stats[course_id].mean_mark))
    if not terms:
        raise EmptyPriors("student has no prior courses to score")
    return math.fsum(terms) / len(terms)


def eligibility_split(
    transcripts: Mapping[str, Transcript], target_course: str
) -> tuple[list[str], list[str]]:
    """Partition the target course's takers into eligible / ineligible ids.

    Eligible means at least one course strictly before the first attempt.
    Every taker lands in exactly one of the two lists (both sorted).
    """
    eligible, ineligible = [], []
    for sid in sorted(transcripts):
        t = transcripts[sid]
        if target_course not in t.courses():
            continue
        if prior_courses(t, target_course):
            eligible.append(sid)
        else:
            ineligible.append(sid)
    return eligible, ineligible


def _prospective_stats(
    transcripts: Mapping[str, Transcript], student_id: str, cutoff: int
) -> dict[str, CourseStats]:
    """Leave-one-out, time-truncated course stats for one student.

    Means use only records of other students from terms before ``cutoff``;
    this is the no-hindsight alternative to the default full-data means.
    """
    marks: dict[str, list[float]] = {}
    passes: dict[str, int] = {}
    for sid, t in transcripts.items():
        if sid == student_id:
            continue
        for r in t.records:
            if r.term_index >= cutoff:
                break
            marks.setdefault(r.course_id, []).append(r.mark.value)
            passes[r.course_id] = passes.get(r.course_id, 0) + (1 if r.passed else 0)
    return {
        cid: CourseStats(
            course_id=cid,
            mean_mark=math.fsum(vals) / len(vals),
            success_rate=passes[cid] / len(vals),
            enrollment_count=len(vals),
        )
        for cid, vals in marks.items()
    }


def build_psai_dataset(
    target_course: str,
    transcripts: Mapping[str, Transcript],
    stats: Mapping[str, CourseStats],
    params: WeightParams,
    exclude_hindsight: bool = False,
) -> FeatureDataset:
    """One difficulty-weighted row per eligible student, sorted by id.

    By default prior-course means come from ``stats``, i.e. from every
    record in the dataset including the scored student's own marks and
    later terms. ``exclude_hindsight=True`` recomputes the means per
    student from other students' records before the student's first
    target-course term (priors that lose all usable records are skipped,
    and students left unscoreable are excluded).

    The target course's weight and success rate always come from ``stats``:
    they are course-level attributes, constant across the dataset.
    """
    if target_course not in stats:
        raise UnknownCourse(f"unknown target course {target_course!r}")
    target_weight = course_weight(params, stats[target_course].mean_mark)
    target_success = stats[target_course].success_rate

    psai_rows: list[PsaiRow] = []
    eligible, _ = eligibility_split(transcripts, target_course)
    for sid in eligible:
        t = transcripts[sid]
        priors = prior_courses(t, target_course)
        if exclude_hindsight:
            cutoff = first_attempt(t, target_course).term_index
            local_stats = _prospective_stats(transcripts, sid, cutoff)
            priors = [(cid, mark) for cid, mark in priors if cid in local_stats]
            if not priors:
                continue
            score = student_score(priors, local_stats, params)
        else:
            score = student_score(priors, stats, params)
        psai_rows.append(
            PsaiRow(
                student_id=sid,
                score=score,
                course_weight=target_weight,
                course_success_rate=target_success,
                label=0 if first_attempt(t, target_course).passed else 1,
            )
        )

    if len(psai_rows) < 2:
        raise TooFewEligible(
            f"only {len(psai_rows)} eligible student(s) for course {target_course!r}"
        )
    if len({row.label for row in psai_rows}) < 2:
        raise SingleClass(f"all eligible students share one label for {target_course!r}")

    return FeatureDataset(
        feature_names=PSAI_FEATURE_NAMES,
        rows=np.array(
            [[row.score, row.course_weight, row.course_success_rate] for row in psai_rows]
        ),
        labels=np.array([row.label for row in psai_rows]),
        student_ids=tuple(row.student_id for row in psai_rows),
        provenance="psai",
    )
