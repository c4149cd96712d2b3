import numpy as np
import pytest

from psai.domain import (
    FeatureDataset,
    GRADE_POINTS,
    Mark,
    MalformedValue,
    MarkOutOfRange,
    MissingField,
    Transcript,
    validate_record,
)

from conftest import record, transcript


class TestMark:
    def test_grid_round_trips_exactly(self):
        for v in np.linspace(0.0, 4.3, 431):
            assert Mark(float(v)).value == float(v)

    @pytest.mark.parametrize("bad", [-0.0001, 4.3000001, 4.4, -1.0, float("nan"), float("inf")])
    def test_out_of_range_rejected(self, bad):
        with pytest.raises(MarkOutOfRange):
            Mark(bad)

    def test_boundaries_accepted(self):
        assert Mark(0.0).value == 0.0
        assert Mark(4.3).value == 4.3

    def test_non_numeric_rejected(self):
        with pytest.raises(MalformedValue):
            Mark("3.0")


def test_grade_table_has_the_anchor_letters():
    assert GRADE_POINTS["D"] == 1.0
    assert GRADE_POINTS["D+"] == 1.3
    assert GRADE_POINTS["A"] == 4.0
    assert GRADE_POINTS["A+"] == 4.3


class TestValidateRecord:
    def test_full_row_accepted(self):
        r = validate_record(
            {"student_id": "s1", "course_id": "MATH204", "term_index": "3",
             "mark": "4.3", "passed": "true"}
        )
        assert r.mark.value == 4.3 and r.passed is True and r.term_index == 3

    def test_just_past_boundary_rejected(self):
        with pytest.raises(MarkOutOfRange):
            validate_record(
                {"student_id": "s1", "course_id": "c", "term_index": 0, "mark": 4.4}
            )

    def test_missing_mark_rejected(self):
        with pytest.raises(MissingField):
            validate_record({"student_id": "s1", "course_id": "c", "term_index": 0, "mark": ""})

    def test_passed_derived_from_mark(self):
        low = validate_record({"student_id": "s", "course_id": "c", "term_index": 0, "mark": 0.9})
        high = validate_record({"student_id": "s", "course_id": "c", "term_index": 0, "mark": 1.0})
        assert low.passed is False and high.passed is True

    def test_negative_term_rejected(self):
        with pytest.raises(MalformedValue):
            validate_record({"student_id": "s", "course_id": "c", "term_index": -1, "mark": 2.0})

    def test_bad_passed_value_rejected(self):
        with pytest.raises(MalformedValue):
            validate_record(
                {"student_id": "s", "course_id": "c", "term_index": 0, "mark": 2.0, "passed": "maybe"}
            )


class TestTranscript:
    def test_sorts_by_term(self):
        t = transcript("s1", ("b", 2, 3.0), ("a", 0, 2.0), ("c", 1, 1.0))
        assert [r.term_index for r in t.records] == [0, 1, 2]

    def test_stable_on_term_ties(self):
        t = transcript("s1", ("x", 1, 2.0), ("y", 1, 3.0), ("z", 0, 1.0))
        assert [r.course_id for r in t.records] == ["z", "x", "y"]

    def test_retakes_allowed_across_terms(self):
        t = transcript("s1", ("x", 0, 0.7), ("x", 1, 2.0))
        assert len(t) == 2

    def test_foreign_student_rejected(self):
        with pytest.raises(MalformedValue):
            Transcript(student_id="s1", records=(record("s2", "x", 0, 2.0),))


class TestFeatureDataset:
    def _dataset(self, **overrides):
        kwargs = dict(
            feature_names=("a", "b"),
            rows=np.array([[1.0, 2.0], [3.0, 4.0]]),
            labels=np.array([0, 1]),
            student_ids=("s1", "s2"),
            provenance="naive",
        )
        kwargs.update(overrides)
        return FeatureDataset(**kwargs)

    def test_valid_construction(self):
        ds = self._dataset()
        assert ds.n_rows == 2 and ds.n_features == 2
        assert not ds.rows.flags.writeable

    def test_length_mismatch_rejected(self):
        with pytest.raises(MalformedValue):
            self._dataset(labels=np.array([0, 1, 1]))

    def test_nan_rejected(self):
        with pytest.raises(MalformedValue):
            self._dataset(rows=np.array([[1.0, np.nan], [3.0, 4.0]]))

    def test_nonbinary_labels_rejected(self):
        with pytest.raises(MalformedValue):
            self._dataset(labels=np.array([0, 2]))

    def test_bad_provenance_rejected(self):
        with pytest.raises(MalformedValue):
            self._dataset(provenance="other")

    def test_take_preserves_order(self):
        ds = self._dataset()
        sub = ds.take([1, 0])
        assert sub.student_ids == ("s2", "s1")
        assert sub.labels.tolist() == [1, 0]
        assert sub.rows[0].tolist() == [3.0, 4.0]
