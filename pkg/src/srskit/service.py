"""Local HTTP service giving a browser editor read/write access to one
project file.

The file is the single source of truth: every request reloads it and every
successful mutation persists canonically (atomic rename) before the
response is sent.  All mutations funnel through one process-wide lock, so
concurrent clients observe a linear history; reads see the latest committed
file.  Binds loopback by default and has no authentication.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import SrsError
from .model import (
    NA,
    SIGNOFF_ORDER,
    Project,
    Requirement,
    SectionBody,
    add_requirement,
    remove_definition,
    remove_function,
    remove_requirement,
    set_definition,
    set_function,
    set_section,
    set_signoff,
    update_requirement,
)
from .render import build_fhd, render, render_fhd
from .srsml import load, save
from .template import ReqKind
from .validation import get_profile, leaf_status, validate

_NOT_FOUND = {
    "E-PATH",
    "unknown-id",
    "unknown-term",
    "unknown-number",
    "unknown-role",
    "unknown-template",
}
_CONFLICT = {"duplicate-id", "duplicate-term"}

# Section addressing mirrors the file format's path namespace, so a bad
# path is reported under the format's code rather than the core token.
_CODE_ALIASES = {"unknown-path": "E-PATH"}

_MEDIA_TYPES = {
    "text": "text/plain; charset=utf-8",
    "markdown": "text/markdown; charset=utf-8",
    "html": "text/html; charset=utf-8",
    "tree": "text/plain; charset=utf-8",
    "dot": "text/vnd.graphviz; charset=utf-8",
}

_PLACEHOLDER = """<!DOCTYPE html>
<html><head><meta charset="utf-8"/><title>srskit</title></head>
<body><p>The editor bundle is not built. The JSON API is live under /api/.</p></body></html>
"""


class SectionIn(BaseModel):
    body: str


class RequirementIn(BaseModel):
    id: str
    kind: str
    title: str
    text: str = ""
    trace: list[str] = []


class RequirementUpdate(BaseModel):
    kind: str
    title: str
    text: str = ""
    trace: list[str] = []


class DefinitionIn(BaseModel):
    meaning: str = ""


class FunctionIn(BaseModel):
    title: str


class SignoffIn(BaseModel):
    name: str = ""
    date: str = ""


def _status_for(code: str) -> int:
    if code in _NOT_FOUND:
        return 404
    if code in _CONFLICT:
        return 409
    return 400


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def project_to_json(project: Project) -> dict:
    sections = {
        path: ({"na": True} if body.is_na else {"text": body.text})
        for path, body in project.sections.items()
    }
    return {
        "title": project.title,
        "id": project.id,
        "template": {
            "id": project.template.id,
            "nodes": [
                {
                    "path": node.path,
                    "label": node.label,
                    "kind": node.kind.value,
                    "req_kind": node.req_kind.value if node.req_kind else None,
                    "mandatory": node.mandatory,
                }
                for node in project.template.nodes
            ],
        },
        "sections": sections,
        "status": {
            node.path: leaf_status(project, node) for node in project.template.leaves()
        },
        "definitions": [
            {"term": d.term, "meaning": d.meaning} for d in project.definitions
        ],
        "functions": [
            {"number": number, "title": title} for number, title in project.sorted_functions()
        ],
        "requirements": [
            {
                "id": r.id,
                "kind": r.kind.value,
                "title": r.title,
                "text": r.text,
                "trace": list(r.trace),
            }
            for r in project.sorted_requirements()
        ],
        "signoffs": [
            {
                "role": role.value,
                "name": project.signoffs[role].name,
                "date": project.signoffs[role].date,
            }
            for role in SIGNOFF_ORDER
        ],
        "document_title": project.document_title,
        "signoff_title_override": project.signoff_title,
    }


def create_app(project_file: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    path = Path(project_file)
    lock = threading.Lock()
    app = FastAPI(title="srskit", docs_url=None, redoc_url=None)

    def read_project() -> Project:
        outcome = load(path)
        if outcome.project is None:
            first = outcome.diagnostics[0]
            raise SrsError("parse-failed", f"{path}:{first.line}: {first.code} {first.message}")
        return outcome.project

    def mutate(fn: Callable[[Project], Project]) -> Project:
        with lock:
            updated = fn(read_project())
            save(updated, path)
            return updated

    @app.exception_handler(SrsError)
    async def srs_error_handler(request: Request, exc: SrsError):
        code = _CODE_ALIASES.get(exc.code, exc.code)
        status = 500 if code == "parse-failed" else _status_for(code)
        return _error(status, code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return _error(400, "bad-request", str(exc))

    @app.exception_handler(Exception)
    async def unexpected_error_handler(request: Request, exc: Exception):
        return _error(500, "internal", f"{type(exc).__name__}: {exc}")

    @app.get("/api/project")
    def get_project():
        return project_to_json(read_project())

    @app.put("/api/sections/{section_path}")
    def put_section(section_path: str, payload: SectionIn):
        body = NA if payload.body == "NA" else SectionBody(payload.body)
        mutate(lambda p: set_section(p, section_path, body))
        return {"path": section_path, "body": payload.body}

    @app.post("/api/requirements")
    def post_requirement(payload: RequirementIn):
        requirement = _requirement(payload.id, payload)
        mutate(lambda p: add_requirement(p, requirement))
        return _req_json(requirement)

    @app.put("/api/requirements/{req_id}")
    def put_requirement(req_id: str, payload: RequirementUpdate):
        requirement = _requirement(req_id, payload)
        mutate(lambda p: update_requirement(p, requirement))
        return _req_json(requirement)

    @app.delete("/api/requirements/{req_id}")
    def delete_requirement(req_id: str):
        mutate(lambda p: remove_requirement(p, req_id))
        return {"removed": req_id}

    @app.put("/api/definitions/{term}")
    def put_definition(term: str, payload: DefinitionIn):
        mutate(lambda p: set_definition(p, term, payload.meaning))
        return {"term": term, "meaning": payload.meaning}

    @app.delete("/api/definitions/{term}")
    def delete_definition(term: str):
        mutate(lambda p: remove_definition(p, term))
        return {"removed": term}

    @app.put("/api/functions/{number}")
    def put_function(number: str, payload: FunctionIn):
        mutate(lambda p: set_function(p, number, payload.title))
        return {"number": number, "title": payload.title}

    @app.delete("/api/functions/{number}")
    def delete_function(number: str):
        mutate(lambda p: remove_function(p, number))
        return {"removed": number}

    @app.put("/api/signoffs/{role}")
    def put_signoff(role: str, payload: SignoffIn):
        mutate(lambda p: set_signoff(p, role, payload.name, payload.date))
        return {"role": role, "name": payload.name, "date": payload.date}

    @app.get("/api/diagnostics")
    def get_diagnostics(profile: str = "lenient"):
        findings = validate(read_project(), get_profile(profile))
        return [
            {
                "code": d.code,
                "severity": d.severity.value,
                "locus": d.locus,
                "message": d.message,
            }
            for d in findings
        ]

    @app.get("/api/render")
    def get_render(format: str = "text"):
        document = render(read_project(), format)
        return Response(content=document.content, media_type=_MEDIA_TYPES[document.format])

    @app.get("/api/fhd")
    def get_fhd(format: str = "tree"):
        if format not in ("tree", "dot"):
            raise SrsError("unknown-format", f"unknown fhd format: {format!r}")
        payload = render_fhd(build_fhd(read_project()), format)
        return Response(content=payload, media_type=_MEDIA_TYPES[format])

    resolved_ui = Path(ui_dir) if ui_dir else None
    if resolved_ui is not None and resolved_ui.is_dir():
        app.mount("/", StaticFiles(directory=resolved_ui, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index():
            return _PLACEHOLDER

    return app


def _requirement(req_id: str, payload) -> Requirement:
    try:
        kind = ReqKind(payload.kind)
    except ValueError:
        raise SrsError("unknown-kind", f"unknown requirement kind: {payload.kind!r}") from None
    return Requirement(
        id=req_id, kind=kind, title=payload.title, text=payload.text, trace=tuple(payload.trace)
    )


def _req_json(requirement: Requirement) -> dict:
    return {
        "id": requirement.id,
        "kind": requirement.kind.value,
        "title": requirement.title,
        "text": requirement.text,
        "trace": list(requirement.trace),
    }
