"""Difficulty-weighted student scores vs. a demographic baseline.

A batch pipeline that turns transcript CSVs into two rival feature sets
for course-failure prediction -- per-student difficulty-weighted scores
and a naive demographic baseline -- and compares them with six small
classifiers under stratified cross-validation.
"""

from .baseline import (
    CategoricalEncoder,
    build_naive_dataset,
    compute_gpa,
    credits_obtained,
    encode_categoricals,
)
from .domain import (
    CourseStats,
    EnrollmentRecord,
    FeatureDataset,
    Mark,
    PsaiError,
    StudentProfile,
    Transcript,
    validate_record,
)
from .featurecsv import read_dataset_csv, write_dataset_csv
from .ingest import (
    IngestReport,
    build_transcripts,
    compute_course_stats,
    parse_enrollments,
    parse_profiles,
)
from .scores import build_psai_dataset, prior_courses, student_score
from .synthgen import Cohort, SynthConfig, generate_cohort, write_cohort
from .weighting import (
    AnchorPoint,
    WeightParams,
    course_weight,
    default_weight_params,
    fit_weight_params,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorPoint",
    "CategoricalEncoder",
    "Cohort",
    "CourseStats",
    "EnrollmentRecord",
    "FeatureDataset",
    "IngestReport",
    "Mark",
    "PsaiError",
    "StudentProfile",
    "SynthConfig",
    "Transcript",
    "WeightParams",
    "build_naive_dataset",
    "build_psai_dataset",
    "build_transcripts",
    "compute_course_stats",
    "compute_gpa",
    "course_weight",
    "credits_obtained",
    "default_weight_params",
    "encode_categoricals",
    "fit_weight_params",
    "generate_cohort",
    "parse_enrollments",
    "parse_profiles",
    "prior_courses",
    "read_dataset_csv",
    "student_score",
    "validate_record",
    "write_cohort",
    "write_dataset_csv",
]
