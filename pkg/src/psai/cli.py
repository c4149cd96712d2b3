"""Command-line entry point: generate -> ingest-check -> build-features ->
evaluate -> compare.

Exit codes: 0 success, 2 usage/flag errors, 3 data preconditions,
4 internal invariant breach. All randomness funnels through --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .baseline import DEFAULT_CREDIT_VALUE, build_naive_dataset
from .domain import (
    DuplicateKey,
    MalformedValue,
    MarkOutOfRange,
    MissingField,
    SingleClass,
    TooFewEligible,
    UnknownCourse,
)
from .featurecsv import read_dataset_csv, write_dataset_csv
from .ingest import (
    MalformedHeader,
    NegativeAge,
    build_transcripts,
    compute_course_stats,
    parse_enrollments,
    parse_profiles,
)
from .ml import (
    CLASSIFIER_KINDS,
    TooFewPerClass,
    UnknownClassifier,
    UnknownHyperparameter,
    evaluate,
    make_spec,
)
from .scores import build_psai_dataset, eligibility_split
from .synthgen import InfeasibleSchedule, SynthConfig, generate_cohort, write_cohort
from .weighting import (
    DEFAULT_EASY_ANCHOR,
    DEFAULT_HARD_ANCHOR,
    DegenerateAnchors,
    fit_weight_params,
    parse_anchor,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4

_USAGE_ERRORS = (
    UnknownCourse,
    UnknownClassifier,
    UnknownHyperparameter,
    InfeasibleSchedule,
    DegenerateAnchors,
)
_DATA_ERRORS = (
    TooFewEligible,
    SingleClass,
    TooFewPerClass,
    MalformedHeader,
    NegativeAge,
    MissingField,
    MarkOutOfRange,
    MalformedValue,
    DuplicateKey,
    FileNotFoundError,
)

_DISPLAY_NAMES = {
    "decision_tree": "Decision tree",
    "knn": "k-NN",
    "linear_svm": "Linear SVM",
    "random_forest": "Random forest",
    "adaboost": "AdaBoost",
    "neural_net": "Neural network",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psai", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic cohort")
    gen.add_argument("--students", type=int, default=5000)
    gen.add_argument("--courses", type=int, default=50)
    gen.add_argument("--terms", type=int, default=6)
    gen.add_argument("--courses-per-term", type=int, default=4)
    gen.add_argument("--ability-spread", type=float, default=0.8)
    gen.add_argument("--difficulty-spread", type=float, default=0.8)
    gen.add_argument("--noise-spread", type=float, default=0.4)
    gen.add_argument("--fail-threshold", type=float, default=1.0)
    gen.add_argument("--menu-tilt", type=float, default=1.5)
    gen.add_argument("--menu-ability-link", type=float, default=0.35)
    gen.add_argument("--informative-demographics", action="store_true")
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--out", required=True)

    chk = sub.add_parser("ingest-check", help="parse input files and print the report")
    chk.add_argument("--in", dest="in_dir", required=True)

    bld = sub.add_parser("build-features", help="build one feature dataset CSV")
    bld.add_argument("--method", choices=("psai", "naive"), required=True)
    bld.add_argument("--course", required=True)
    bld.add_argument("--in", dest="in_dir", required=True)
    bld.add_argument("--out", required=True)
    bld.add_argument("--easy-anchor", default=None, metavar="MARK:WEIGHT")
    bld.add_argument("--hard-anchor", default=None, metavar="MARK:WEIGHT")
    bld.add_argument("--credit-value", type=float, default=DEFAULT_CREDIT_VALUE)

    ev = sub.add_parser("evaluate", help="cross-validate one classifier on a feature CSV")
    ev.add_argument("--features", required=True)
    ev.add_argument("--classifier", required=True)
    ev.add_argument("--k", type=int, default=10)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--out", default=None)

    cmp_ = sub.add_parser("compare", help="run both feature builders against all classifiers")
    cmp_.add_argument("--in", dest="in_dir", required=True)
    cmp_.add_argument("--course", required=True)
    cmp_.add_argument("--k", type=int, default=10)
    cmp_.add_argument("--seed", type=int, default=0)
    cmp_.add_argument("--workers", type=int, default=1)
    cmp_.add_argument("--out-json", default=None)
    cmp_.add_argument("--easy-anchor", default=None, metavar="MARK:WEIGHT")
    cmp_.add_argument("--hard-anchor", default=None, metavar="MARK:WEIGHT")
    cmp_.add_argument("--credit-value", type=float, default=DEFAULT_CREDIT_VALUE)
    return parser


def _weight_params(args):
    hard = parse_anchor(args.hard_anchor) if args.hard_anchor else DEFAULT_HARD_ANCHOR
    easy = parse_anchor(args.easy_anchor) if args.easy_anchor else DEFAULT_EASY_ANCHOR
    return fit_weight_params(hard, easy)


def _load_inputs(in_dir: str):
    base = Path(in_dir)
    records, report = parse_enrollments(base / "enrollments.csv")
    profiles = parse_profiles(base / "profiles.csv")
    return records, report, profiles


def cmd_generate(args) -> int:
    config = SynthConfig(
        n_students=args.students,
        n_courses=args.courses,
        terms=args.terms,
        courses_per_term=args.courses_per_term,
        ability_spread=args.ability_spread,
        difficulty_spread=args.difficulty_spread,
        noise_spread=args.noise_spread,
        fail_threshold=args.fail_threshold,
        menu_tilt=args.menu_tilt,
        menu_ability_link=args.menu_ability_link,
        demographics_informative=args.informative_demographics,
        seed=args.seed,
    )
    cohort = generate_cohort(config)
    paths = write_cohort(cohort, args.out)
    n_records = sum(len(t) for t in cohort.transcripts.values())
    n_failed = sum(1 for t in cohort.transcripts.values() for r in t.records if not r.passed)
    print(f"students: {len(cohort.transcripts)}")
    print(f"courses: {config.n_courses}")
    print(f"records: {n_records}")
    print(f"failure rate: {n_failed / n_records:.4f}")
    print(f"clamp fraction: {cohort.truth['clamp_fraction']:.4f}")
    for name, path in paths.items():
        print(f"wrote {name}: {path}")
    return EXIT_OK


def cmd_ingest_check(args) -> int:
    records, report, profiles = _load_inputs(args.in_dir)
    payload = report.to_json_dict()
    payload["profiles"] = len(profiles)
    print(json.dumps(payload, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_build_features(args) -> int:
    records, _, profiles = _load_inputs(args.in_dir)
    transcripts = build_transcripts(records)
    eligible, ineligible = eligibility_split(transcripts, args.course)
    if args.method == "psai":
        stats = compute_course_stats(records)
        dataset = build_psai_dataset(args.course, transcripts, stats, _weight_params(args))
    else:
        dataset = build_naive_dataset(args.course, transcripts, profiles, args.credit_value)
    write_dataset_csv(dataset, args.out)
    print(f"eligible: {len(eligible)}")
    print(f"ineligible: {len(ineligible)}")
    print(f"wrote {args.method} features for {args.course}: {args.out}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    if args.classifier not in CLASSIFIER_KINDS:
        raise UnknownClassifier(
            f"unknown classifier {args.classifier!r}; valid kinds: "
            + ", ".join(CLASSIFIER_KINDS)
        )
    dataset = read_dataset_csv(args.features)
    report = evaluate(make_spec(args.classifier, seed=args.seed), dataset, args.k, args.seed)
    text = json.dumps(report.to_json_dict(), sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote report: {args.out}")
    else:
        print(text)
    return EXIT_OK


def _render_table(course: str, f_by_cell: dict[tuple[str, str], float]) -> str:
    naive = [100.0 * f_by_cell[("naive", kind)] for kind in CLASSIFIER_KINDS]
    psai = [100.0 * f_by_cell[("psai", kind)] for kind in CLASSIFIER_KINDS]
    best_naive, best_psai = max(naive), max(psai)

    header = f"{'Classifier':<16} {'Naive F-measure (%)':>20} {'PSAI F-measure (%)':>20}"
    lines = [course, header, "-" * len(header)]
    for kind, nv, pv in zip(CLASSIFIER_KINDS, naive, psai):
        nv_text = f"{nv:.2f}" + ("*" if nv == best_naive else "")
        pv_text = f"{pv:.2f}" + ("*" if pv == best_psai else "")
        lines.append(f"{_DISPLAY_NAMES[kind]:<16} {nv_text:>20} {pv_text:>20}")
    return "\n".join(lines)


def cmd_compare(args) -> int:
    records, _, profiles = _load_inputs(args.in_dir)
    transcripts = build_transcripts(records)
    stats = compute_course_stats(records)
    datasets = {
        "psai": build_psai_dataset(args.course, transcripts, stats, _weight_params(args)),
        "naive": build_naive_dataset(args.course, transcripts, profiles, args.credit_value),
    }

    cells = [(prov, kind) for prov in ("naive", "psai") for kind in CLASSIFIER_KINDS]

    def run_cell(cell):
        prov, kind = cell
        return cell, evaluate(make_spec(kind, seed=args.seed), datasets[prov], args.k, args.seed)

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            results = dict(pool.map(run_cell, cells))
    else:
        results = dict(map(run_cell, cells))

    f_by_cell = {cell: report.f_measure for cell, report in results.items()}
    print(_render_table(args.course, f_by_cell))

    payload = {
        "course": args.course,
        "k": args.k,
        "seed": args.seed,
        "reports": [results[cell].to_json_dict() for cell in cells],
    }
    if args.out_json:
        Path(args.out_json).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        print(f"wrote reports: {args.out_json}")
    return EXIT_OK


_COMMANDS = {
    "generate": cmd_generate,
    "ingest-check": cmd_ingest_check,
    "build-features": cmd_build_features,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except _DATA_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    except Exception as err:  # noqa: BLE001 - anything else is an internal failure
        traceback.print_exc()
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
