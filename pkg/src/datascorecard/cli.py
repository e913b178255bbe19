"""Command-line entry point for the full evaluation workflow.

Exit codes: 0 success, 1 validation failure, 2 usage or format error,
3 internal error. Machine-readable findings accompany nonzero exits on
stderr, one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .errors import IntakeParseError, ScorecardError
from .intake import parse_intake, validate_intake
from .reporting import (
    FORMAT_HTML,
    FORMAT_MACHINE,
    FORMAT_MARKDOWN,
    FORMATS,
    batch_summary,
    build_scorecard,
    default_recommendations,
    render,
)
from .rubric import blank_intake, builtin_catalog, load_catalog, serialize_catalog
from .scoring import evaluate, evaluation_to_document

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_RENDER_EXTENSIONS = ((FORMAT_MARKDOWN, "md"), (FORMAT_HTML, "html"), (FORMAT_MACHINE, "json"))


def _emit_finding(severity, code, path, message):
    print(json.dumps({"severity": severity, "code": code, "path": path,
                      "message": message}), file=sys.stderr)


def _emit_report(report):
    for finding in report.findings:
        print(json.dumps(finding.to_document()), file=sys.stderr)


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_intake(path, catalog):
    """Read, parse, and validate one intake file.

    Returns (form, exit_code); on failure the form is None and findings have
    been written to stderr.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _emit_finding("error", "io", str(path), str(exc))
        return None, EXIT_INTERNAL
    try:
        tree = parse_intake(text)
    except IntakeParseError as exc:
        _emit_finding("error", "syntax", str(path), str(exc))
        return None, EXIT_USAGE
    form, report = validate_intake(tree, catalog)
    if form is None:
        _emit_report(report)
        return None, EXIT_VALIDATION
    return form, EXIT_OK


def _active_catalog(args):
    if not args.catalog:
        return builtin_catalog(), EXIT_OK
    try:
        return load_catalog(Path(args.catalog).read_text(encoding="utf-8")), EXIT_OK
    except OSError as exc:
        _emit_finding("error", "io", args.catalog, str(exc))
        return None, EXIT_INTERNAL
    except ScorecardError as exc:
        _emit_finding("error", "catalog", args.catalog, str(exc))
        return None, EXIT_USAGE


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_init(args, catalog):
    try:
        _write_text(args.output, blank_intake(catalog).to_json())
    except OSError as exc:
        _emit_finding("error", "io", str(args.output), str(exc))
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_validate(args, catalog):
    _, code = _load_intake(args.intake, catalog)
    return code


def cmd_score(args, catalog):
    form, code = _load_intake(args.intake, catalog)
    if form is None:
        return code
    evaluation = evaluate(form, catalog, timestamp=args.timestamp)
    if args.format == FORMAT_MACHINE:
        print(json.dumps(evaluation_to_document(evaluation), indent=2, ensure_ascii=False))
    else:
        for area in evaluation.areas:
            print(f"{area.area_id} {area.display_score} {area.color.word}")
    return EXIT_OK


def cmd_render(args, catalog):
    form, code = _load_intake(args.intake, catalog)
    if form is None:
        return code
    evaluation = evaluate(form, catalog, timestamp=args.timestamp)
    card = build_scorecard(evaluation, default_recommendations(), catalog)
    try:
        _write_text(args.output, render(card, args.format))
    except OSError as exc:
        _emit_finding("error", "io", str(args.output), str(exc))
        return EXIT_INTERNAL
    return EXIT_OK


def _batch_stem(path: Path) -> str:
    name = path.name
    for suffix in (".intake.json", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return path.stem


def cmd_batch(args, catalog):
    directory = Path(args.directory)
    if not directory.is_dir():
        _emit_finding("error", "usage", str(directory), "not a directory")
        return EXIT_USAGE
    intake_paths = sorted(directory.glob("*.json"))
    if not intake_paths:
        _emit_finding("error", "usage", str(directory), "no intake files (*.json) found")
        return EXIT_USAGE
    out_dir = Path(args.output) if args.output else directory
    out_dir.mkdir(parents=True, exist_ok=True)

    evaluations = []
    failures = []
    for path in intake_paths:
        form, code = _load_intake(path, catalog)
        if form is None:
            failures.append((path.name, "failed validation" if code == EXIT_VALIDATION
                             else "unreadable or malformed"))
            continue
        evaluation = evaluate(form, catalog, timestamp=args.timestamp)
        card = build_scorecard(evaluation, default_recommendations(), catalog)
        stem = _batch_stem(path)
        for fmt, ext in _RENDER_EXTENSIONS:
            (out_dir / f"{stem}.scorecard.{ext}").write_text(render(card, fmt), encoding="utf-8")
        evaluations.append(evaluation)

    summary_parts = []
    if evaluations:
        summary_parts.append(batch_summary(evaluations))
    if failures:
        summary_parts.append("## Failed\n")
        for name, reason in failures:
            summary_parts.append(f"- {name}: {reason}")
        summary_parts.append("")
    (out_dir / "summary.md").write_text("\n".join(summary_parts), encoding="utf-8")
    return EXIT_VALIDATION if failures else EXIT_OK


def cmd_rubric(args, catalog):
    try:
        _write_text(args.output, serialize_catalog(catalog))
    except OSError as exc:
        _emit_finding("error", "io", str(args.output), str(exc))
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_serve(args, catalog):
    from .service import create_app
    import uvicorn

    try:
        host, _, port_text = args.bind.rpartition(":")
        port = int(port_text)
        if not host:
            raise ValueError
    except ValueError:
        _emit_finding("error", "usage", args.bind, "bind address must be HOST:PORT")
        return EXIT_USAGE

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError as exc:
        _emit_finding("error", "io", args.bind, f"cannot bind: {exc}")
        return EXIT_INTERNAL
    finally:
        probe.close()

    ui_dir = Path(args.ui) if args.ui else Path("frontend/dist")
    app = create_app(catalog, ui_dir=ui_dir if ui_dir.is_dir() else None)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        _emit_finding("error", "io", args.bind, f"server stopped: {exc}")
        return EXIT_INTERNAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="FILE",
                        help="rubric definition file overriding the built-in catalog")
    common.add_argument("--timestamp", metavar="ISO8601",
                        help="pin the evaluation timestamp for reproducible output")

    parser = argparse.ArgumentParser(
        prog="datascorecard",
        description="Evaluate dataset development practices against a scoring rubric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="write a blank intake template")
    p.add_argument("-o", "--output", metavar="FILE", help="destination (default: stdout)")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("validate", parents=[common], help="validate an intake file")
    p.add_argument("intake", metavar="INTAKE")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", parents=[common], help="score an intake file")
    p.add_argument("intake", metavar="INTAKE")
    p.add_argument("--format", choices=["table", FORMAT_MACHINE], default="table")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("render", parents=[common], help="render a scorecard")
    p.add_argument("intake", metavar="INTAKE")
    p.add_argument("--format", choices=list(FORMATS), default=FORMAT_MARKDOWN)
    p.add_argument("-o", "--output", metavar="FILE", help="destination (default: stdout)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("batch", parents=[common],
                       help="evaluate every intake in a directory and write a summary")
    p.add_argument("directory", metavar="DIR")
    p.add_argument("-o", "--output", metavar="DIR", help="output directory (default: DIR)")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("rubric", parents=[common], help="export the active rubric catalog")
    p.add_argument("-o", "--output", metavar="FILE", help="destination (default: stdout)")
    p.set_defaults(func=cmd_rubric)

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API and UI")
    p.add_argument("--bind", default="127.0.0.1:8080", metavar="HOST:PORT")
    p.add_argument("--ui", metavar="DIR", help="built UI bundle to serve at / "
                                               "(default: frontend/dist when present)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    catalog, code = _active_catalog(args)
    if catalog is None:
        return code
    try:
        return args.func(args, catalog)
    except ScorecardError as exc:
        _emit_finding("error", "internal", args.command, str(exc))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
