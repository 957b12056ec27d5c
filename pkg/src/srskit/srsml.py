"""The `.srs` text format: canonical serializer and total, round-trip parser.

Shape of a file::

    @project: SRS ATM
    @id: 1
    @template: ieee-830

    [section introduction.purpose]
    This document describes ...

    [define Account]
    A single account at a bank ...

    [function 1]
    Get Balance Information

    [req FR-1]
    kind: functional
    title: Get Balance Information

    Free text of the requirement.

    [signoff approved-by]
    name: A. Person
    date: 2026-01-30

Header directives come first; blocks open with ``[kind arg]`` alone on a
line and run to the next block header or EOF, with trailing blank lines
trimmed.  ``# comment`` lines are allowed before the first block only and
are dropped.  A ``[section …]`` body is free text or the exact marker
``NA``.  Body lines that would collide with the syntax (a line that looks
like a block header, a lone ``NA``, or a leading backslash) are escaped
with one leading backslash in canonical form.

Canonical output is UTF-8, LF line endings, one trailing newline, blocks
in a fixed order (sections in template pre-order, definitions in insertion
order, functions in numeric order, requirements in natural id order,
sign-offs in the fixed role order) with exactly one blank line between
blocks.  ``serialize(parse(serialize(p)))`` is a fixed point.

Custom templates travel inline: ``@template:`` names a non-built-in id and
``[template-node path]`` blocks (label / kind / mandatory lines) spell out
the tree before any section block.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import Diagnostic, Severity
from .errors import SrsError
from .model import (
    FUNCTION_NUMBER_RE,
    NA,
    REQ_ID_RE,
    SIGNOFF_ORDER,
    Definition,
    Project,
    Requirement,
    SectionBody,
    Signoff,
    SignoffRole,
    check_date,
    function_sort_key,
    req_id_sort_key,
)
from .template import (
    ReqKind,
    SectionKind,
    SectionNode,
    Template,
    builtin_template,
    is_builtin,
    parse_kind_token,
)

_BLOCK_RE = re.compile(r"^\[(section|template-node|define|function|req|signoff) (.*)\]$")
_DIRECTIVE_RE = re.compile(r"^@([a-z][a-z0-9-]*):(.*)$")
_META_RE = re.compile(r"^([a-z][a-z0-9-]*):(.*)$")

_REQUIRED_DIRECTIVES = ("project", "id", "template")


@dataclass
class ParseOutcome:
    """Success carries a project; failure carries 1-based-line diagnostics."""

    project: Project | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.project is not None


def _err(code: str, message: str, line: int, locus: str = "file") -> Diagnostic:
    return Diagnostic(code=code, severity=Severity.ERROR, message=message, locus=locus, line=line)


def _escape(lines: list[str]) -> list[str]:
    return [
        "\\" + line
        if line.startswith("\\") or line == "NA" or _BLOCK_RE.match(line)
        else line
        for line in lines
    ]


def _unescape(lines: list[str]) -> list[str]:
    return [line[1:] if line.startswith("\\") else line for line in lines]


@dataclass
class _Block:
    kind: str
    arg: str
    line: int  # 1-based line of the [kind arg] header
    body: list[str]  # raw lines, trailing blank lines trimmed
    body_line: int  # line number of the first body line


def parse(data: bytes | str) -> ParseOutcome:
    """Parse SRSML text.  Never raises on malformed input."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = data[: exc.start].count(b"\n") + 1
            return ParseOutcome(
                None, [_err("E-ENC", f"invalid UTF-8 at byte {exc.start}", line)]
            )
    else:
        text = data
    lines = [line.rstrip("\r") for line in text.split("\n")]

    diags: list[Diagnostic] = []
    directives: dict[str, tuple[str, int]] = {}
    blocks: list[_Block] = []
    current: _Block | None = None

    for lineno, line in enumerate(lines, start=1):
        match = _BLOCK_RE.match(line)
        if match:
            if current is not None:
                blocks.append(current)
            current = _Block(
                kind=match.group(1), arg=match.group(2), line=lineno, body=[], body_line=lineno + 1
            )
            continue
        if current is not None:
            current.body.append(line)
            continue
        # header region
        if not line.strip() or line.startswith("#"):
            continue
        directive = _DIRECTIVE_RE.match(line)
        if not directive:
            diags.append(
                _err("E-HDR", f"unexpected line before first block: {line!r}", lineno, "project-header")
            )
            continue
        key, value = directive.group(1), directive.group(2).strip()
        if key in directives:
            diags.append(_err("E-HDR", f"duplicate directive @{key}", lineno, "project-header"))
        else:
            directives[key] = (value, lineno)
    if current is not None:
        blocks.append(current)
    for block in blocks:
        while block.body and not block.body[-1].strip():
            block.body.pop()

    for key in _REQUIRED_DIRECTIVES:
        if key not in directives:
            diags.append(_err("E-HDR", f"missing directive @{key}", 1, "project-header"))
    for key in directives:
        if key not in (*_REQUIRED_DIRECTIVES, "signoff-title"):
            diags.append(
                _err("E-HDR", f"unknown directive @{key}", directives[key][1], "project-header")
            )

    title = directives.get("project", ("", 1))[0]
    if "project" in directives and not title:
        diags.append(
            _err("E-HDR", "@project must be nonempty", directives["project"][1], "project-header")
        )
    project_id = 0
    if "id" in directives:
        raw_id, id_line = directives["id"]
        if not raw_id.isdigit():
            diags.append(
                _err("E-HDR", f"@id must be a nonnegative integer, got {raw_id!r}", id_line, "project-header")
            )
        else:
            project_id = int(raw_id)

    if "signoff-title" in directives and not directives["signoff-title"][0]:
        diags.append(
            _err(
                "E-HDR",
                "@signoff-title must be nonempty when present",
                directives["signoff-title"][1],
                "project-header",
            )
        )

    template = _resolve_template(directives, blocks, diags)

    sections: dict[str, SectionBody] = {}
    section_lines: dict[str, int] = {}
    definitions: list[Definition] = []
    functions: dict[str, str] = {}
    requirements: dict[str, Requirement] = {}
    signoffs: dict[SignoffRole, Signoff] = {}

    for block in blocks:
        if block.kind == "section":
            _parse_section(block, template, sections, section_lines, diags)
        elif block.kind == "define":
            _parse_define(block, definitions, diags)
        elif block.kind == "function":
            _parse_function(block, functions, diags)
        elif block.kind == "req":
            _parse_req(block, requirements, diags)
        elif block.kind == "signoff":
            _parse_signoff(block, signoffs, diags)
        # template-node blocks were consumed by _resolve_template

    if diags:
        diags.sort(key=lambda d: (d.line or 0, d.code, d.message))
        return ParseOutcome(None, diags)

    assert template is not None
    project = Project(
        title=title,
        id=project_id,
        template=template,
        sections=sections,
        definitions=tuple(definitions),
        functions=functions,
        requirements=requirements,
        signoffs=signoffs,
        signoff_title=directives["signoff-title"][0] if "signoff-title" in directives else None,
    )
    return ParseOutcome(project, [])


def _resolve_template(
    directives: dict[str, tuple[str, int]],
    blocks: list[_Block],
    diags: list[Diagnostic],
) -> Template | None:
    node_blocks = [b for b in blocks if b.kind == "template-node"]
    if "template" not in directives:
        return None
    template_id, line = directives["template"]
    if is_builtin(template_id):
        for b in node_blocks:
            diags.append(
                _err(
                    "E-TEMPLATE",
                    f"template-node blocks not allowed with built-in template {template_id}",
                    b.line,
                    b.arg,
                )
            )
        return builtin_template(template_id)
    if not node_blocks:
        diags.append(
            _err("E-HDR", f"unknown template: {template_id!r}", line, "project-header")
        )
        return None

    nodes: list[SectionNode] = []
    seen: set[str] = set()
    for block in node_blocks:
        path = block.arg.strip()
        if path in seen:
            diags.append(_err("E-TEMPLATE", f"duplicate template node: {path}", block.line, path))
            continue
        seen.add(path)
        meta, bad = _metadata(block, {"label", "kind", "mandatory"})
        for lineno, text in bad:
            diags.append(_err("E-TEMPLATE", text, lineno, path))
        label = meta.get("label", ("", block.line))[0]
        kind_token = meta.get("kind", ("text", block.line))[0]
        mandatory_raw, mandatory_line = meta.get("mandatory", ("false", block.line))
        if mandatory_raw not in ("true", "false"):
            diags.append(
                _err("E-TEMPLATE", f"mandatory must be true or false, got {mandatory_raw!r}", mandatory_line, path)
            )
            mandatory_raw = "false"
        try:
            kind, req_kind = parse_kind_token(kind_token)
            nodes.append(
                SectionNode(
                    path=path,
                    label=label,
                    kind=kind,
                    req_kind=req_kind,
                    mandatory=mandatory_raw == "true",
                )
            )
        except SrsError as exc:
            diags.append(_err("E-TEMPLATE", exc.message, block.line, path))
    try:
        return Template(id=template_id, nodes=tuple(nodes))
    except SrsError as exc:
        diags.append(_err("E-TEMPLATE", exc.message, node_blocks[0].line, template_id))
        return None


def _metadata(
    block: _Block, allowed: set[str]
) -> tuple[dict[str, tuple[str, int]], list[tuple[int, str]]]:
    """key→(value, line) for ``key: value`` body lines; second list is junk."""
    meta: dict[str, tuple[str, int]] = {}
    problems: list[tuple[int, str]] = []
    for offset, line in enumerate(block.body):
        lineno = block.body_line + offset
        if not line.strip():
            continue
        match = _META_RE.match(line)
        if not match or match.group(1) not in allowed:
            problems.append((lineno, f"unexpected line in [{block.kind}] block: {line!r}"))
            continue
        key, value = match.group(1), match.group(2).strip()
        if key in meta:
            problems.append((lineno, f"duplicate {key} line"))
        else:
            meta[key] = (value, lineno)
    return meta, problems


def _parse_section(
    block: _Block,
    template: Template | None,
    sections: dict[str, SectionBody],
    section_lines: dict[str, int],
    diags: list[Diagnostic],
) -> None:
    path = block.arg.strip()
    if template is None:
        return  # header already failed; section paths cannot be checked
    node = template.node(path)
    if node is None:
        diags.append(_err("E-PATH", f"unknown section path: {path}", block.line, path))
        return
    if not node.is_leaf:
        diags.append(_err("E-SECTION-KIND", f"{path} is a container, not a section", block.line, path))
        return
    if path in sections:
        diags.append(_err("E-DUP-SECTION", f"duplicate section block: {path}", block.line, path))
        return
    if block.body == ["NA"]:
        sections[path] = NA
        section_lines[path] = block.line
        return
    if node.kind is not SectionKind.TEXT:
        diags.append(
            _err(
                "E-SECTION-KIND",
                f"{path} holds {node.kind.value} content; body must be NA",
                block.line,
                path,
            )
        )
        return
    text = "\n".join(_unescape(block.body))
    if not text.strip():
        diags.append(_err("E-SECTION-EMPTY", f"empty body for section {path}; use NA", block.line, path))
        return
    sections[path] = SectionBody(text)
    section_lines[path] = block.line


def _parse_define(block: _Block, definitions: list[Definition], diags: list[Diagnostic]) -> None:
    term = block.arg.strip()
    if not term:
        diags.append(_err("E-DEF-TERM", "definition term must be nonempty", block.line, "definitions"))
        return
    if any(d.term == term for d in definitions):
        diags.append(_err("E-DUP-DEF", f"duplicate definition term: {term}", block.line, term))
        return
    definitions.append(Definition(term=term, meaning="\n".join(_unescape(block.body))))


def _parse_function(block: _Block, functions: dict[str, str], diags: list[Diagnostic]) -> None:
    number = block.arg.strip()
    if not FUNCTION_NUMBER_RE.match(number):
        diags.append(_err("E-FN-NUM", f"malformed function number: {number!r}", block.line, number))
        return
    if number in functions:
        diags.append(_err("E-DUP-FN", f"duplicate function block: {number}", block.line, number))
        return
    title_lines = [line for line in _unescape(block.body) if line.strip()]
    if len(title_lines) != 1 or len(block.body) > 1:
        diags.append(
            _err("E-FN-TITLE", f"function {number} needs a single nonempty title line", block.line, number)
        )
        return
    functions[number] = title_lines[0].strip()


def _parse_req(block: _Block, requirements: dict[str, Requirement], diags: list[Diagnostic]) -> None:
    req_id = block.arg.strip()
    if not REQ_ID_RE.match(req_id):
        diags.append(
            _err("E-REQ-ID", f"malformed requirement id: {req_id!r} (expected e.g. FR-1)", block.line, req_id)
        )
        return
    if req_id in requirements:
        diags.append(_err("E-DUP-REQ", f"duplicate requirement block: {req_id}", block.line, req_id))
        return

    meta: dict[str, tuple[str, int]] = {}
    body = block.body
    index = 0
    while index < len(body):
        line = body[index]
        match = _META_RE.match(line)
        if not match or match.group(1) not in ("kind", "title", "trace"):
            break
        key, value = match.group(1), match.group(2).strip()
        if key in meta:
            diags.append(_err("E-REQ-META", f"duplicate {key} line", block.body_line + index, req_id))
        else:
            meta[key] = (value, block.body_line + index)
        index += 1
    if index < len(body) and not body[index].strip():
        index += 1  # single blank separator before free text
    text = "\n".join(_unescape(body[index:]))

    problems = False
    if "kind" not in meta:
        diags.append(_err("E-REQ-META", f"{req_id}: missing kind line", block.line, req_id))
        problems = True
    if "title" not in meta or not meta["title"][0]:
        diags.append(_err("E-REQ-META", f"{req_id}: missing or empty title line", block.line, req_id))
        problems = True

    kind = None
    if "kind" in meta:
        try:
            kind = ReqKind(meta["kind"][0])
        except ValueError:
            diags.append(
                _err("E-REQ-KIND", f"unknown requirement kind: {meta['kind'][0]!r}", meta["kind"][1], req_id)
            )
            problems = True

    trace: list[str] = []
    if "trace" in meta:
        value, trace_line = meta["trace"]
        items = [item.strip() for item in value.split(",")] if value else []
        for item in items:
            if not REQ_ID_RE.match(item):
                diags.append(_err("E-REQ-ID", f"malformed trace target: {item!r}", trace_line, req_id))
                problems = True
        if len(set(items)) != len(items):
            diags.append(_err("E-REQ-META", f"{req_id}: duplicate trace targets", trace_line, req_id))
            problems = True
        if req_id in items:
            diags.append(_err("E-REQ-META", f"{req_id}: requirement cannot trace itself", trace_line, req_id))
            problems = True
        trace = items

    if problems or kind is None:
        return
    requirements[req_id] = Requirement(
        id=req_id, kind=kind, title=meta["title"][0], text=text, trace=tuple(trace)
    )


def _parse_signoff(
    block: _Block, signoffs: dict[SignoffRole, Signoff], diags: list[Diagnostic]
) -> None:
    token = block.arg.strip()
    try:
        role = SignoffRole(token)
    except ValueError:
        diags.append(_err("E-ROLE", f"unknown sign-off role: {token!r}", block.line, token))
        return
    if role in signoffs:
        diags.append(_err("E-DUP-SIGNOFF", f"duplicate signoff block: {token}", block.line, token))
        return
    meta, bad = _metadata(block, {"name", "date"})
    for lineno, text in bad:
        diags.append(_err("E-SIGNOFF-META", text, lineno, token))
    date, date_line = meta.get("date", ("", block.line))
    try:
        check_date(date)
    except SrsError as exc:
        diags.append(_err("E-DATE", exc.message, date_line, token))
        return
    if bad:
        return
    signoffs[role] = Signoff(role=role, name=meta.get("name", ("",))[0], date=date)


# --- serialization -----------------------------------------------------------


def serialize(project: Project) -> bytes:
    """Canonical form of a project: UTF-8, LF, fixed block order."""
    if is_builtin(project.template.id) and project.template != builtin_template(project.template.id):
        raise SrsError(
            "template-id-collision",
            f"custom template reuses built-in id {project.template.id!r}",
        )
    chunks: list[str] = []
    header = [f"@project: {project.title}", f"@id: {project.id}", f"@template: {project.template.id}"]
    if project.signoff_title is not None:
        header.append(f"@signoff-title: {project.signoff_title}")
    chunks.append("\n".join(header))

    if not is_builtin(project.template.id):
        for node in project.template.nodes:
            chunks.append(
                "\n".join(
                    [
                        f"[template-node {node.path}]",
                        f"label: {node.label}",
                        f"kind: {node.kind_token()}",
                        f"mandatory: {'true' if node.mandatory else 'false'}",
                    ]
                )
            )

    for node in project.template.leaves():
        body = project.sections.get(node.path)
        if body is None:
            continue
        lines = [f"[section {node.path}]"]
        if body.is_na:
            lines.append("NA")
        else:
            assert body.text is not None
            lines.extend(_escape(body.text.split("\n")))
        chunks.append("\n".join(lines))

    for definition in project.definitions:
        lines = [f"[define {definition.term}]"]
        if definition.meaning:
            lines.extend(_escape(definition.meaning.split("\n")))
        chunks.append("\n".join(lines))

    for number, fn_title in sorted(project.functions.items(), key=lambda kv: function_sort_key(kv[0])):
        chunks.append("\n".join([f"[function {number}]", *_escape([fn_title])]))

    for requirement in sorted(project.requirements.values(), key=lambda r: req_id_sort_key(r.id)):
        lines = [
            f"[req {requirement.id}]",
            f"kind: {requirement.kind.value}",
            f"title: {requirement.title}",
        ]
        if requirement.trace:
            lines.append(f"trace: {','.join(requirement.trace)}")
        if requirement.text:
            lines.append("")
            lines.extend(_escape(requirement.text.split("\n")))
        chunks.append("\n".join(lines))

    for role in SIGNOFF_ORDER:
        signoff = project.signoffs[role]
        lines = [
            f"[signoff {role.value}]",
            f"name: {signoff.name}" if signoff.name else "name:",
            f"date: {signoff.date}" if signoff.date else "date:",
        ]
        chunks.append("\n".join(lines))

    return ("\n\n".join(chunks) + "\n").encode("utf-8")


def load(pathname: str | Path) -> ParseOutcome:
    """Read and parse a project file; I/O errors raise OSError."""
    return parse(Path(pathname).read_bytes())


def save(project: Project, pathname: str | Path) -> None:
    """Write canonically and atomically (temp file in place, then rename)."""
    target = Path(pathname)
    payload = serialize(project)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
