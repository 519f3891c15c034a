"""Command-line front end: weights, evaluate, reproduce, serve.

Exit status contract: 0 success, 1 validation error, 2 consistency-gate
failure, 3 reproduction mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fahp
from .errors import UsabDssError
from .pipeline import evaluate
from .project import ProjectConfig, submissions_from_dataset
from .reporting import compose_report, render_text
from .reproduce import run_all_checks

DATA_DIR_ENV = "USABDSS_DATA_DIR"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INCONSISTENT = 2
EXIT_MISMATCH = 3


def _resolve(path: str) -> Path:
    """Resolve an input path, falling back to the configured data directory."""
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    base = os.environ.get(DATA_DIR_ENV)
    if base and (Path(base) / p).exists():
        return Path(base) / p
    return p


def _read_json(path: str) -> dict:
    p = _resolve(path)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsabDssError(f"file not found: {p}") from None
    except json.JSONDecodeError as exc:
        raise UsabDssError(f"{p}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def cmd_weights(args) -> int:
    doc = _read_json(args.judgments)
    criteria = doc.get("criteria")
    if not criteria:
        print("error: judgments file lists no criteria", file=sys.stderr)
        return EXIT_VALIDATION
    scale = fahp.scale_from_json(doc["scale"]) if "scale" in doc else None
    matrix = fahp.matrix_from_records(criteria, doc.get("judgments", []), scale)
    weights = fahp.derive_weights(matrix)
    payload = weights.to_json()
    payload["criteria"] = list(criteria)
    rendered = (
        _dump(payload)
        if args.format == "structured"
        else _render_weights(criteria, weights)
    )
    if args.out:
        Path(args.out).write_text(_dump(payload), encoding="utf-8")
    print(rendered, end="")
    if not weights.consistent:
        print(
            f"judgments inconsistent: CI {weights.consistency_index:.3f} > "
            f"{fahp.CONSISTENCY_THRESHOLD}; revise the comparison matrix",
            file=sys.stderr,
        )
        return EXIT_INCONSISTENT
    return EXIT_OK


def _render_weights(criteria, weights) -> str:
    lines = ["criterion  raw      normalized"]
    for cid, raw, norm in zip(criteria, weights.raw, weights.normalized):
        lines.append(f"{cid:<10s} {raw:<8.4f} {norm:.4f}")
    verdict = "consistent" if weights.consistent else "INCONSISTENT"
    lines.append(f"CI = {weights.consistency_index:.4f} ({verdict})")
    return "\n".join(lines) + "\n"


def cmd_evaluate(args) -> int:
    config = ProjectConfig.from_json(_read_json(args.project))
    if args.judgments:
        doc = _read_json(args.judgments)
        config.judgments = doc.get("judgments", [])
        if "scale" in doc:
            config.judgment_scale = fahp.scale_from_json(doc["scale"])
    dataset = _read_json(args.responses)
    submissions = submissions_from_dataset(dataset)
    result = evaluate(config, submissions, role_filter=args.role)
    report = compose_report(result)
    text = render_text(report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(_dump(report), encoding="utf-8")
        (out / "report.txt").write_text(text, encoding="utf-8")
        (out / "audit.json").write_text(_dump(_audit(result)), encoding="utf-8")
    print(text if args.format == "table" else _dump(report), end="")
    if result.insufficient:
        print("insufficient data: no submissions to evaluate", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _audit(result) -> dict:
    """Intermediate matrices for auditing the aggregation chain."""
    def matrix_doc(matrix):
        return {
            alt: {
                crit: (cell.to_json() if cell is not None else None)
                for crit in matrix.criteria
                for cell in [matrix.cell(alt, crit)]
            }
            for alt in matrix.alternatives
        }

    return {
        "unified_individual": {
            f"{uid}/{rid}": matrix_doc(m)
            for (uid, rid), m in result.uid_matrices.items()
        },
        "role_collective": {
            rid: matrix_doc(m) for rid, m in result.role_matrices.items()
        },
        "global_collective": (
            matrix_doc(result.global_matrix) if result.global_matrix else None
        ),
    }


def cmd_reproduce(args) -> int:
    checks = run_all_checks(data_dir=args.data, tolerance=args.tolerance)
    if args.format == "structured":
        doc = {
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "failures": c.failures,
                    "deviations": c.deviations,
                    "details": c.details,
                }
                for c in checks
            ]
        }
        output = _dump(doc)
    else:
        lines = []
        for c in checks:
            lines.append(f"{c.name:<32s} {'PASS' if c.passed else 'FAIL'}")
            for detail in c.details:
                lines.append(f"    {detail}")
            for deviation in c.deviations:
                lines.append(f"    deviation: {deviation}")
            for failure in c.failures:
                lines.append(f"    FAILURE: {failure}")
        failed = sum(not c.passed for c in checks)
        lines.append(
            f"{len(checks) - failed}/{len(checks)} checks passed"
            + (f", {failed} failed" if failed else "")
        )
        output = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    print(output, end="")
    return EXIT_MISMATCH if any(not c.passed for c in checks) else EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .project import ProjectStore
    from .service import create_app

    app = create_app(ProjectStore(args.db))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="usabdss",
        description="Usability A/B-test decision support: linguistic scoring, "
        "fuzzy AHP weights and closeness-based rankings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="derive criteria weights from pairwise judgments")
    p.add_argument("--judgments", required=True, help="judgments JSON file")
    p.add_argument("--out", help="write the weights JSON here")
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("evaluate", help="run the full pipeline over a response dataset")
    p.add_argument("--project", required=True, help="project configuration JSON")
    p.add_argument("--responses", required=True, help="response dataset JSON")
    p.add_argument("--judgments", help="override the project's judgments")
    p.add_argument("--out", help="directory for report.json / report.txt / audit.json")
    p.add_argument("--role", help="restrict the evaluation to one role id")
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("reproduce", help="recompute the bundled case study and diff it")
    p.add_argument("--data", help="alternate fixtures directory")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override cell tolerance; 0 compares at print precision")
    p.add_argument("--out", help="write the check summary here")
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--db", default=":memory:", help="sqlite path (default in-memory)")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsabDssError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
