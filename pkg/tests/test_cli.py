import io
import json

import numpy as np
import pytest

from psai.cli import main
from psai.featurecsv import read_dataset_csv, write_dataset_csv
from psai.ingest import build_transcripts, parse_enrollments
from psai.ml import CLASSIFIER_KINDS

from test_classifiers import make_dataset, separable_blobs

GEN_ARGS = [
    "generate", "--students", "400", "--courses", "30", "--terms", "4",
    "--courses-per-term", "3", "--seed", "13",
]


@pytest.fixture(scope="module")
def cohort_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cohort")
    assert main(GEN_ARGS + ["--out", str(out)]) == 0
    return out


def pick_course(cohort_dir):
    """A mid-difficulty course with plenty of takers, failures included."""
    records, _ = parse_enrollments(cohort_dir / "enrollments.csv")
    transcripts = build_transcripts(records)
    counts = {}
    for t in transcripts.values():
        for r in t.records:
            ok, fails = counts.get(r.course_id, (0, 0))
            counts[r.course_id] = (ok + 1, fails + (0 if r.passed else 1))
    viable = {c: (n, f) for c, (n, f) in counts.items() if f >= 12 and n - f >= 12}
    return max(viable, key=lambda c: viable[c][0])


class TestGenerate:
    def test_writes_three_files(self, cohort_dir):
        for name in ("enrollments.csv", "profiles.csv", "truth.json"):
            assert (cohort_dir / name).exists()

    def test_rerun_is_byte_identical(self, cohort_dir, tmp_path):
        assert main(GEN_ARGS + ["--out", str(tmp_path)]) == 0
        for name in ("enrollments.csv", "profiles.csv", "truth.json"):
            assert (tmp_path / name).read_bytes() == (cohort_dir / name).read_bytes()

    def test_infeasible_schedule_exits_2(self, tmp_path, capsys):
        code = main(["generate", "--students", "5", "--courses", "3",
                     "--courses-per-term", "4", "--out", str(tmp_path)])
        assert code == 2

    def test_bad_flag_exits_2(self, tmp_path):
        assert main(["generate", "--students", "not-a-number", "--out", str(tmp_path)]) == 2


class TestIngestCheck:
    def test_prints_report_json(self, cohort_dir, capsys):
        assert main(["ingest-check", "--in", str(cohort_dir)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["dropped"] == 0
        assert payload["accepted"] == 400 * 12
        assert payload["students"] == 400

    def test_missing_dir_exits_3(self, tmp_path):
        assert main(["ingest-check", "--in", str(tmp_path / "nope")]) == 3


class TestBuildFeatures:
    def test_psai_csv_header_contract(self, cohort_dir, tmp_path, capsys):
        course = pick_course(cohort_dir)
        out = tmp_path / "psai.csv"
        assert main(["build-features", "--method", "psai", "--course", course,
                     "--in", str(cohort_dir), "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert header == "student_id,score,course_weight,course_success_rate,label"

    def test_eligible_counts_match_across_methods(self, cohort_dir, tmp_path, capsys):
        course = pick_course(cohort_dir)
        counts = {}
        for method in ("psai", "naive"):
            assert main(["build-features", "--method", method, "--course", course,
                         "--in", str(cohort_dir), "--out", str(tmp_path / f"{method}.csv")]) == 0
            lines = capsys.readouterr().out.splitlines()
            counts[method] = [l for l in lines if l.startswith(("eligible", "ineligible"))]
        assert counts["psai"] == counts["naive"]
        psai_ds = read_dataset_csv(tmp_path / "psai.csv")
        naive_ds = read_dataset_csv(tmp_path / "naive.csv")
        assert psai_ds.student_ids == naive_ds.student_ids
        assert np.array_equal(psai_ds.labels, naive_ds.labels)
        assert psai_ds.provenance == "psai" and naive_ds.provenance == "naive"

    def test_explicit_default_anchors_reproduce_default_output(self, cohort_dir, tmp_path):
        course = pick_course(cohort_dir)
        base, flagged = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["build-features", "--method", "psai", "--course", course,
                     "--in", str(cohort_dir), "--out", str(base)]) == 0
        assert main(["build-features", "--method", "psai", "--course", course,
                     "--in", str(cohort_dir), "--out", str(flagged),
                     "--easy-anchor", "4.15:0.5", "--hard-anchor", "1.15:2.0"]) == 0
        assert base.read_bytes() == flagged.read_bytes()

    def test_unknown_course_exits_2(self, cohort_dir, tmp_path):
        assert main(["build-features", "--method", "psai", "--course", "NOPE",
                     "--in", str(cohort_dir), "--out", str(tmp_path / "x.csv")]) == 2

    def test_too_few_eligible_exits_3(self, tmp_path):
        # two students, both taking the target in their very first term
        (tmp_path / "enrollments.csv").write_text(
            "student_id,course_id,term_index,mark,passed\n"
            "s1,A,0,2.0,true\ns2,A,0,0.5,false\ns1,B,1,3.0,true\ns2,B,1,3.0,true\n"
        )
        (tmp_path / "profiles.csv").write_text(
            "student_id,admission_base,citizenship,previous_program,"
            "legal_status,college_program,age,gender\n"
            "s1,a,b,c,d,e,20,f\ns2,a,b,c,d,e,21,m\n"
        )
        assert main(["build-features", "--method", "psai", "--course", "A",
                     "--in", str(tmp_path), "--out", str(tmp_path / "x.csv")]) == 3


@pytest.fixture(scope="module")
def features_file(cohort_dir, tmp_path_factory):
    path = tmp_path_factory.mktemp("feat") / "psai.csv"
    course = pick_course(cohort_dir)
    assert main(["build-features", "--method", "psai", "--course", course,
                 "--in", str(cohort_dir), "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def compare_run(cohort_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("cmp") / "reports.json"
    course = pick_course(cohort_dir)
    import contextlib
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["compare", "--in", str(cohort_dir), "--course", course,
                     "--k", "3", "--seed", "5", "--out-json", str(out)])
    assert code == 0
    return course, buf.getvalue(), out


class TestEvaluate:
    def test_deterministic_json(self, features_file, capsys):
        args = ["evaluate", "--features", str(features_file),
                "--classifier", "adaboost", "--k", "4", "--seed", "7"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_unknown_classifier_exits_2_and_lists_kinds(self, features_file, capsys):
        assert main(["evaluate", "--features", str(features_file),
                     "--classifier", "qda"]) == 2
        err = capsys.readouterr().err
        for kind in CLASSIFIER_KINDS:
            assert kind in err

    def test_fold_matrices_sum_to_row_count(self, features_file, capsys):
        assert main(["evaluate", "--features", str(features_file),
                     "--classifier", "knn", "--k", "5", "--seed", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        n_rows = len(read_dataset_csv(features_file).labels)
        total = sum(sum(f.values()) for f in payload["folds"])
        assert total == n_rows

    def test_too_few_per_class_exits_3(self, tmp_path):
        ds = make_dataset(np.random.default_rng(0).normal(size=(8, 2)),
                          np.array([1, 0, 0, 0, 0, 0, 0, 0]), provenance="naive")
        path = tmp_path / "tiny.csv"
        write_dataset_csv(ds, path)
        assert main(["evaluate", "--features", str(path),
                     "--classifier", "knn", "--k", "4"]) == 3


class TestCompare:
    def test_table_shape(self, compare_run):
        course, stdout, _ = compare_run
        lines = stdout.splitlines()
        assert lines[0] == course
        assert "Naive F-measure (%)" in lines[1] and "PSAI F-measure (%)" in lines[1]
        body = [l for l in lines[3:] if l and not l.startswith("wrote")]
        assert len(body) == 6

    def test_asterisk_marks_column_maxima(self, compare_run):
        _, stdout, _ = compare_run
        body = [l for l in stdout.splitlines()[3:] if l and not l.startswith("wrote")]
        cells = [l.split()[-2:] for l in body]
        naive_starred = [row[0] for row in cells if row[0].endswith("*")]
        psai_starred = [row[1] for row in cells if row[1].endswith("*")]
        assert naive_starred and psai_starred
        naive_values = [float(row[0].rstrip("*")) for row in cells]
        psai_values = [float(row[1].rstrip("*")) for row in cells]
        assert float(naive_starred[0].rstrip("*")) == max(naive_values)
        assert float(psai_starred[0].rstrip("*")) == max(psai_values)

    def test_sidecar_has_twelve_reports(self, compare_run):
        _, _, out = compare_run
        payload = json.loads(out.read_text())
        assert len(payload["reports"]) == 12
        combos = {(r["provenance"], r["classifier"]) for r in payload["reports"]}
        assert len(combos) == 12

    def test_workers_do_not_change_output(self, compare_run, cohort_dir, tmp_path):
        course, _, out = compare_run
        again = tmp_path / "again.json"
        assert main(["compare", "--in", str(cohort_dir), "--course", course,
                     "--k", "3", "--seed", "5", "--workers", "4",
                     "--out-json", str(again)]) == 0
        assert again.read_bytes() == out.read_bytes()


class TestFeatureCsvRoundTrip:
    def test_bit_exact_round_trip(self, tmp_path, rng):
        X, y = separable_blobs(n=30)
        ds = make_dataset(X, y, provenance="naive")
        path = tmp_path / "ds.csv"
        write_dataset_csv(ds, path)
        again = read_dataset_csv(path)
        assert again.feature_names == ds.feature_names
        assert np.array_equal(again.rows, ds.rows)
        assert np.array_equal(again.labels, ds.labels)
        assert again.student_ids == ds.student_ids
