import numpy as np
import pytest

from psai.domain import EnrollmentRecord, Mark, StudentProfile, Transcript


def record(sid, cid, term, mark, passed=None):
    m = Mark(mark)
    return EnrollmentRecord(
        student_id=sid,
        course_id=cid,
        term_index=term,
        mark=m,
        passed=passed if passed is not None else m.value >= 1.0,
    )


def transcript(sid, *rows):
    """rows are (course_id, term, mark[, passed]) tuples."""
    return Transcript(student_id=sid, records=tuple(record(sid, *row) for row in rows))


def profile(sid, age=20, **fields):
    defaults = dict(
        admission_base="direct",
        citizenship="domestic",
        previous_program="science",
        legal_status="full_time",
        college_program="prog_a",
        gender="f",
    )
    defaults.update(fields)
    return StudentProfile(student_id=sid, age=age, **defaults)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
