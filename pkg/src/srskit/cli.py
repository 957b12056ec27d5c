"""Command-line front end over a ``.srs`` project file.

Exit codes: 0 success, 1 validation found errors, 2 usage/parse/I-O error.
The target file defaults to ``./project.srs``; override with ``--file`` or
the ``SRS_FILE`` environment variable.  Mutating commands rewrite the file
canonically and atomically, so a command that fails leaves it untouched.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import diagnostics as diag_mod
from .errors import SrsError
from .model import (
    NA,
    Project,
    Requirement,
    SectionBody,
    add_definition,
    add_requirement,
    new_project,
    remove_requirement,
    set_function,
    set_section,
    set_signoff,
)
from .render import build_fhd, render, render_fhd
from .srsml import load, save
from .template import ReqKind
from .validation import get_profile, validate

DEFAULT_FILE = "project.srs"


def _target(args: argparse.Namespace) -> Path:
    if args.file:
        return Path(args.file)
    return Path(os.environ.get("SRS_FILE", DEFAULT_FILE))


def _load_project(path: Path) -> Project:
    """Parse the project file or abort with exit 2."""
    try:
        outcome = load(path)
    except OSError as exc:
        raise _Abort(f"{path}: {exc.strerror or exc}") from exc
    if outcome.project is None:
        report = "\n".join(
            f"{path}:{d.line}: {d.code} {d.message}" for d in outcome.diagnostics
        )
        raise _Abort(report)
    return outcome.project


class _Abort(Exception):
    """Carries an error report destined for stderr + exit 2."""


def _mutate(args: argparse.Namespace, fn) -> int:
    path = _target(args)
    project = _load_project(path)
    updated = fn(project)
    try:
        save(updated, path)
    except OSError as exc:
        raise _Abort(f"{path}: {exc.strerror or exc}") from exc
    return 0


def _cmd_init(args: argparse.Namespace) -> int:
    path = Path(args.out) if args.out else _target(args)
    if path.exists():
        raise _Abort(f"{path}: already exists; choose another --out or remove it first")
    project = new_project(args.title, args.id, args.template)
    try:
        save(project, path)
    except OSError as exc:
        raise _Abort(f"{path}: {exc.strerror or exc}") from exc
    return 0


def _cmd_set_section(args: argparse.Namespace) -> int:
    if args.na:
        body = NA
    elif args.text is not None:
        body = SectionBody(args.text)
    else:
        try:
            body = SectionBody(Path(args.from_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise _Abort(f"{args.from_file}: {exc.strerror or exc}") from exc
    return _mutate(args, lambda p: set_section(p, args.path, body))


def _cmd_req(args: argparse.Namespace) -> int:
    if args.req_command == "add":
        trace = tuple(t.strip() for t in args.trace.split(",")) if args.trace else ()
        requirement = Requirement(
            id=args.id, kind=ReqKind(args.kind), title=args.title,
            text=args.text or "", trace=trace,
        )
        return _mutate(args, lambda p: add_requirement(p, requirement))
    if args.req_command == "rm":
        return _mutate(args, lambda p: remove_requirement(p, args.id))
    # list
    project = _load_project(_target(args))
    for requirement in project.sorted_requirements():
        print(f"{requirement.id}  {requirement.kind.value}  {requirement.title}")
    return 0


def _cmd_define(args: argparse.Namespace) -> int:
    return _mutate(args, lambda p: add_definition(p, args.term, args.meaning))


def _cmd_function(args: argparse.Namespace) -> int:
    return _mutate(args, lambda p: set_function(p, args.number, args.title))


def _cmd_signoff(args: argparse.Namespace) -> int:
    return _mutate(args, lambda p: set_signoff(p, args.role, args.name, args.date or ""))


def _cmd_validate(args: argparse.Namespace) -> int:
    project = _load_project(_target(args))
    findings = validate(project, get_profile(args.profile))
    if args.format == "json":
        print(diag_mod.to_json(findings))
    else:
        for finding in findings:
            print(finding.text())
    has_errors = any(f.severity.value == "error" for f in findings)
    if args.strict_exit and findings:
        return 1
    return 1 if has_errors else 0


def _cmd_render(args: argparse.Namespace) -> int:
    project = _load_project(_target(args))
    document = render(project, args.format)
    if args.output:
        Path(args.output).write_bytes(document.content)
    else:
        sys.stdout.buffer.write(document.content)
        sys.stdout.buffer.flush()
    return 0


def _cmd_fhd(args: argparse.Namespace) -> int:
    project = _load_project(_target(args))
    payload = render_fhd(build_fhd(project), args.format)
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()
    return 0


def _cmd_canon(args: argparse.Namespace) -> int:
    path = _target(args)
    project = _load_project(path)
    try:
        save(project, path)
    except OSError as exc:
        raise _Abort(f"{path}: {exc.strerror or exc}") from exc
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    path = _target(args)
    _load_project(path)  # fail fast with parse diagnostics before binding
    if args.bind != "127.0.0.1":
        print(f"warning: binding to {args.bind}; the service has no authentication", file=sys.stderr)
    ui_dir = Path(args.ui) if args.ui else None
    if ui_dir is None:
        candidate = Path("frontend/dist")
        ui_dir = candidate if candidate.is_dir() else None
    app = create_app(path, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        raise _Abort(f"serve failed: {exc}") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help=f"project file (default {DEFAULT_FILE} or $SRS_FILE)")

    parser = argparse.ArgumentParser(prog="srskit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="create a new project file")
    p.add_argument("--title", required=True)
    p.add_argument("--id", required=True, type=int)
    p.add_argument("--template", default="ieee-830")
    p.add_argument("--out", help="write here instead of the default project file")
    p.set_defaults(handler=_cmd_init)

    p = sub.add_parser("set-section", parents=[common], help="fill a section or mark it NA")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--na", action="store_true", help="mark the section not applicable")
    group.add_argument("--text", help="section body text")
    group.add_argument("--from-file", help="read the body from a file")
    p.set_defaults(handler=_cmd_set_section)

    p = sub.add_parser("req", parents=[common], help="manage requirements")
    req_sub = p.add_subparsers(dest="req_command", required=True)
    q = req_sub.add_parser("add", parents=[common])
    q.add_argument("id")
    q.add_argument("--kind", required=True, choices=[k.value for k in ReqKind])
    q.add_argument("--title", required=True)
    q.add_argument("--text")
    q.add_argument("--trace", help="comma-separated requirement ids")
    q.set_defaults(handler=_cmd_req)
    q = req_sub.add_parser("rm", parents=[common])
    q.add_argument("id")
    q.set_defaults(handler=_cmd_req)
    q = req_sub.add_parser("list", parents=[common])
    q.set_defaults(handler=_cmd_req)

    p = sub.add_parser("define", parents=[common], help="add a definition")
    p.add_argument("term")
    p.add_argument("meaning")
    p.set_defaults(handler=_cmd_define)

    p = sub.add_parser("function", parents=[common], help="manage product functions")
    fn_sub = p.add_subparsers(dest="fn_command", required=True)
    q = fn_sub.add_parser("set", parents=[common])
    q.add_argument("number")
    q.add_argument("title")
    q.set_defaults(handler=_cmd_function)

    p = sub.add_parser("signoff", parents=[common], help="record sign-off names and dates")
    so_sub = p.add_subparsers(dest="so_command", required=True)
    q = so_sub.add_parser("set", parents=[common])
    q.add_argument("role")
    q.add_argument("--name", required=True)
    q.add_argument("--date")
    q.set_defaults(handler=_cmd_signoff)

    p = sub.add_parser("validate", parents=[common], help="run the validation rules")
    p.add_argument("--profile", default="lenient", choices=["strict", "lenient"])
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--strict-exit", action="store_true", help="exit 1 on warnings too")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("render", parents=[common], help="generate the document")
    p.add_argument("--format", default="text", choices=["text", "markdown", "html"])
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("fhd", parents=[common], help="function hierarchy diagram")
    p.add_argument("--format", default="tree", choices=["tree", "dot"])
    p.set_defaults(handler=_cmd_fhd)

    p = sub.add_parser("canonicalize", parents=[common], help="rewrite the file in canonical form")
    p.set_defaults(handler=_cmd_canon)

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API and editor UI")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--ui", help="directory with the built editor bundle")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _Abort as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SrsError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
