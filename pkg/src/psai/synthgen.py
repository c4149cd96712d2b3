"""Seeded synthetic-cohort generator.

Latent-factor model: each student has an ability, each course a
difficulty, and a mark is ability minus difficulty plus noise around a
baseline of 2.65 (the midpoint of the default anchor marks, so generated
course means sweep the calibrated weight range). Marks clamp to the grade
scale and a record passes at or above the fail threshold.

Course selection is weighted random: each student has a latent taste for
difficulty (menu_tilt controls how strongly it biases the draw, and
menu_ability_link correlates it with ability). That reproduces the
situation the score method is built for -- two students with the same raw
average can have faced very different course menus, so a plain GPA says
little about ability. With menu_tilt=0 every menu is a uniform random
subset.

With demographics_informative=False (the default) every profile field is
drawn independently of ability, making the demographic features pure noise
by construction. Generation is fully deterministic for a fixed seed, down
to the bytes of the written CSV files.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .domain import (
    MARK_MAX,
    MARK_MIN,
    MalformedValue,
    Mark,
    EnrollmentRecord,
    PsaiError,
    StudentProfile,
    Transcript,
)
from .ingest import serialize_enrollments, serialize_profiles
from .rng import stream

BASELINE_MARK = 2.65


class InfeasibleSchedule(PsaiError):
    pass


@dataclass(frozen=True)
class SynthConfig:
    n_students: int = 5000
    n_courses: int = 50
    terms: int = 6
    courses_per_term: int = 4
    ability_spread: float = 0.8
    difficulty_spread: float = 0.8
    noise_spread: float = 0.4
    fail_threshold: float = 1.0
    menu_tilt: float = 1.5
    menu_ability_link: float = 0.35
    demographics_informative: bool = False
    seed: int = 42

    def __post_init__(self) -> None:
        for name in ("n_students", "n_courses", "terms", "courses_per_term"):
            if getattr(self, name) < 1:
                raise MalformedValue(f"{name} must be a positive integer")
        for name in ("ability_spread", "difficulty_spread", "noise_spread"):
            if not getattr(self, name) > 0:
                raise MalformedValue(f"{name} must be positive")
        if not (MARK_MIN <= self.fail_threshold <= MARK_MAX):
            raise MalformedValue("fail_threshold must lie on the grade scale")
        if self.menu_tilt < 0:
            raise MalformedValue("menu_tilt must be non-negative")
        if not (-1.0 <= self.menu_ability_link <= 1.0):
            raise MalformedValue("menu_ability_link must lie in [-1, 1]")


class Cohort(NamedTuple):
    transcripts: dict[str, Transcript]
    profiles: tuple[StudentProfile, ...]
    truth: dict


# Opaque categorical codes at institution-scale cardinalities.
_POOLS = {
    "admission_base": tuple(f"base_{i:02d}" for i in range(8)),
    "citizenship": tuple(f"ctz_{i:02d}" for i in range(40)),
    "previous_program": tuple(f"prev_{i:02d}" for i in range(25)),
    "legal_status": ("asylum", "full_time", "part_time", "work_permit"),
    "college_program": tuple(f"prog_{i:02d}" for i in range(30)),
    "gender": ("f", "m", "none_given", "x"),
}


def generate_cohort(config: SynthConfig) -> Cohort:
    """Transcripts, profiles and the latent truth record for one cohort."""
    per_student = config.terms * config.courses_per_term
    if per_student > config.n_courses:
        raise InfeasibleSchedule(
            f"{config.courses_per_term} courses over {config.terms} terms needs "
            f"{per_student} distinct courses but only {config.n_courses} exist"
        )

    rng = stream(config.seed, "cohort")
    sid_width = max(4, len(str(config.n_students - 1)))
    cid_width = max(3, len(str(config.n_courses - 1)))
    student_ids = [f"s{i:0{sid_width}d}" for i in range(config.n_students)]
    course_ids = [f"C{i:0{cid_width}d}" for i in range(config.n_courses)]

    abilities = rng.normal(0.0, config.ability_spread, config.n_students)
    difficulties = rng.normal(0.0, config.difficulty_spread, config.n_courses)
    link = config.menu_ability_link
    tastes = link * (abilities / config.ability_spread) + np.sqrt(1.0 - link * link) * rng.normal(
        0.0, 1.0, config.n_students
    )

    clamped = 0
    transcripts: dict[str, Transcript] = {}
    difficulty_scale = difficulties / config.difficulty_spread
    for s, sid in enumerate(student_ids):
        # Gumbel-top-k draw: a distinct weighted sample of the catalog,
        # shuffled so term order carries no difficulty pattern
        keys = config.menu_tilt * tastes[s] * difficulty_scale + rng.gumbel(size=config.n_courses)
        menu = np.argsort(-keys, kind="stable")[:per_student]
        menu = menu[rng.permutation(per_student)]

        noise = rng.normal(0.0, config.noise_spread, per_student)
        raw = BASELINE_MARK + abilities[s] - difficulties[menu] + noise
        marks = np.clip(raw, MARK_MIN, MARK_MAX)
        clamped += int(np.sum(raw != marks))
        records = []
        for slot, course in enumerate(menu):
            mark = Mark(float(marks[slot]))
            records.append(
                EnrollmentRecord(
                    student_id=sid,
                    course_id=course_ids[course],
                    term_index=slot // config.courses_per_term,
                    mark=mark,
                    passed=bool(mark.value >= config.fail_threshold),
                )
            )
        transcripts[sid] = Transcript(student_id=sid, records=tuple(records))

    profiles = []
    for s, sid in enumerate(student_ids):
        fields = {}
        for name, pool in _POOLS.items():
            if config.demographics_informative and name in ("admission_base", "previous_program"):
                # overweight one pool entry per ability tercile
                tercile = int(abilities[s] > -0.43 * config.ability_spread) + int(
                    abilities[s] > 0.43 * config.ability_spread
                )
                weights = np.ones(len(pool))
                weights[tercile % len(pool)] = 3.0
                fields[name] = pool[rng.choice(len(pool), p=weights / weights.sum())]
            else:
                fields[name] = pool[rng.integers(0, len(pool))]
        age = 17 + int(rng.poisson(4.0))
        profiles.append(StudentProfile(student_id=sid, age=age, **fields))

    total_records = config.n_students * per_student
    truth = {
        "abilities": {sid: float(a) for sid, a in zip(student_ids, abilities)},
        "difficulties": {cid: float(d) for cid, d in zip(course_ids, difficulties)},
        "menu_tastes": {sid: float(t) for sid, t in zip(student_ids, tastes)},
        "baseline_mark": BASELINE_MARK,
        "clamp_fraction": clamped / total_records,
        "config": asdict(config),
    }
    return Cohort(transcripts=transcripts, profiles=tuple(profiles), truth=truth)


def write_cohort(cohort: Cohort, out_dir: str | Path) -> dict[str, Path]:
    """Write enrollments.csv, profiles.csv and truth.json into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "enrollments": out / "enrollments.csv",
        "profiles": out / "profiles.csv",
        "truth": out / "truth.json",
    }
    records = [r for sid in sorted(cohort.transcripts) for r in cohort.transcripts[sid].records]
    serialize_enrollments(records, paths["enrollments"])
    serialize_profiles(cohort.profiles, paths["profiles"])
    paths["truth"].write_text(json.dumps(cohort.truth, sort_keys=True, indent=2) + "\n")
    return paths
