"""Deterministic document generation: plain text, Markdown, HTML, and the
function hierarchy diagram (indented tree or Graphviz DOT).

All renderers share one traversal: header block, every template node in
pre-order (a leaf always appears, either with content or as ``Label: NA``),
then the sign-off block.  Equal projects produce byte-identical output.
"""

from __future__ import annotations

import html as _html
from dataclasses import dataclass

from .errors import SrsError
from .model import (
    SIGNOFF_DISPLAY,
    SIGNOFF_ORDER,
    Project,
    Signoff,
    function_sort_key,
)
from .template import SectionKind, SectionNode
from .validation import leaf_status

BANNER = "SOFTWARE REQUIREMENT SPECIFICATION"


@dataclass(frozen=True)
class RenderedDocument:
    format: str
    content: bytes

    def text(self) -> str:
        return self.content.decode("utf-8")


def _signoff_pair(signoff: Signoff) -> str:
    display = SIGNOFF_DISPLAY[signoff.role]
    role_line = f"{display}: {signoff.name}" if signoff.name else display
    date_line = signoff.date if signoff.date else "Date"
    return f"{role_line}\n{date_line}"


def _signoff_chunks(project: Project) -> list[str]:
    chunks = [project.document_title, "Submitted by:"]
    chunks.append(_signoff_pair(project.signoffs[SIGNOFF_ORDER[0]]))
    chunks.append("Coordination:")
    for role in SIGNOFF_ORDER[1:4]:
        chunks.append(_signoff_pair(project.signoffs[role]))
    chunks.append("Approved by:")
    chunks.append(_signoff_pair(project.signoffs[SIGNOFF_ORDER[4]]))
    return chunks


def _indent_tail(text: str, first_prefix: str, rest_prefix: str = "  ") -> list[str]:
    """First line behind ``first_prefix``, the rest indented."""
    lines = text.split("\n")
    out = [f"{first_prefix}{lines[0]}"]
    out.extend(f"{rest_prefix}{line}" if line else line for line in lines[1:])
    return out


def _leaf_items(project: Project, node: SectionNode) -> list[str] | None:
    """Bullet lines for a filled leaf, or None for Label: NA."""
    if leaf_status(project, node) != "filled":
        return None
    if node.kind is SectionKind.TEXT:
        body = project.sections[node.path]
        assert body.text is not None
        return body.text.split("\n")
    if node.kind is SectionKind.DEFINITIONS:
        lines: list[str] = []
        for definition in project.definitions:
            lines.append(f"- {definition.term}:")
            if definition.meaning:
                lines.extend(f"  {line}" if line else line for line in definition.meaning.split("\n"))
        return lines
    if node.kind is SectionKind.FUNCTIONS:
        return [f"{number}. {title}" for number, title in project.sorted_functions()]
    assert node.req_kind is not None
    lines = []
    for requirement in project.requirements_of(node.req_kind):
        prefix = f"- {requirement.title}:"
        if requirement.text:
            lines.extend(_indent_tail(requirement.text, prefix + " "))
        else:
            lines.append(prefix)
    return lines


def render_text(project: Project) -> RenderedDocument:
    chunks = [f"Project Title: {project.title}\nProject Id: {project.id}", BANNER]
    for node in project.template.nodes:
        if not node.is_leaf:
            chunks.append(node.label)
            continue
        items = _leaf_items(project, node)
        if items is None:
            chunks.append(f"{node.label}: NA")
        else:
            chunks.append("\n".join([f"{node.label}:", *items]))
    chunks.extend(_signoff_chunks(project))
    return RenderedDocument("text", ("\n\n".join(chunks) + "\n").encode("utf-8"))


def render_markdown(project: Project) -> RenderedDocument:
    chunks = [f"Project Title: {project.title}\nProject Id: {project.id}", BANNER]
    for node in project.template.nodes:
        depth = min(node.path.count(".") + 1, 6)
        chunks.append(f"{'#' * depth} {node.label}")
        if not node.is_leaf:
            continue
        items = _leaf_items(project, node)
        if items is None:
            chunks.append("NA")
        else:
            chunks.append("\n".join(items))
    chunks.extend(_signoff_chunks(project))
    return RenderedDocument("markdown", ("\n\n".join(chunks) + "\n").encode("utf-8"))


def _para(text: str) -> str:
    return "<p>" + _html.escape(text).replace("\n", "<br/>") + "</p>"


def render_html(project: Project) -> RenderedDocument:
    out: list[str] = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8"/>',
        f"<title>{_html.escape(project.title)}</title>",
        "<style>body{font-family:serif;max-width:48rem;margin:2rem auto;}"
        "section{margin-left:0.5rem;}</style>",
        "</head>",
        "<body>",
        _para(f"Project Title: {project.title}\nProject Id: {project.id}"),
        _para(BANNER),
    ]
    open_containers: list[str] = []

    def close_down_to(depth: int) -> None:
        while len(open_containers) > depth:
            open_containers.pop()
            out.append("</section>")

    for node in project.template.nodes:
        depth = node.path.count(".")
        close_down_to(depth)
        heading = min(depth + 1, 6)
        out.append(f'<section id="{_html.escape(node.path, quote=True)}">')
        out.append(f"<h{heading}>{_html.escape(node.label)}</h{heading}>")
        if not node.is_leaf:
            open_containers.append(node.path)
            continue
        items = _leaf_items(project, node)
        if items is None:
            out.append(_para("NA"))
        else:
            out.append(_para("\n".join(items)))
        out.append("</section>")
    close_down_to(0)

    out.append('<section id="signoff">')
    for chunk in _signoff_chunks(project):
        out.append(_para(chunk))
    out.append("</section>")
    out.append("</body>")
    out.append("</html>")
    return RenderedDocument("html", ("\n".join(out) + "\n").encode("utf-8"))


RENDERERS = {"text": render_text, "markdown": render_markdown, "html": render_html}


def render(project: Project, fmt: str) -> RenderedDocument:
    try:
        renderer = RENDERERS[fmt]
    except KeyError:
        raise SrsError("unknown-format", f"unknown render format: {fmt!r}") from None
    return renderer(project)


# --- function hierarchy diagram ----------------------------------------------


@dataclass(frozen=True)
class FhdNode:
    number: str | None  # None only at the root
    title: str
    children: tuple["FhdNode", ...] = ()

    def count(self) -> int:
        return 1 + sum(child.count() for child in self.children)


def build_fhd(project: Project) -> FhdNode:
    """Nest functions by their dotted numbers under a root named after the
    project.  Raises ``orphan-function`` when a number's parent is missing."""
    numbers = sorted(project.functions, key=function_sort_key)
    present = set(numbers)
    children: dict[str, list[str]] = {"": []}
    for number in numbers:
        parent = ".".join(number.split(".")[:-1])
        if parent and parent not in present:
            raise SrsError(
                "orphan-function", f"function {number} has no parent {parent}"
            )
        children.setdefault(parent, []).append(number)

    def make(number: str) -> FhdNode:
        return FhdNode(
            number=number,
            title=project.functions[number],
            children=tuple(make(child) for child in children.get(number, ())),
        )

    return FhdNode(
        number=None,
        title=project.title,
        children=tuple(make(top) for top in children[""]),
    )


def render_fhd(tree: FhdNode, fmt: str) -> bytes:
    if fmt == "tree":
        lines = [tree.title]

        def walk(node: FhdNode, depth: int) -> None:
            for child in node.children:
                lines.append(f"{'  ' * depth}{child.number} {child.title}")
                walk(child, depth + 1)

        walk(tree, 1)
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "dot":
        return _render_dot(tree)
    raise SrsError("unknown-format", f"unknown fhd format: {fmt!r}")


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _render_dot(tree: FhdNode) -> bytes:
    nodes = [f'  "root" [label="{_dot_escape(tree.title)}"];']
    edges: list[str] = []

    def walk(node: FhdNode, parent_id: str) -> None:
        for child in node.children:
            assert child.number is not None
            label = _dot_escape(f"{child.number} {child.title}")
            nodes.append(f'  "{child.number}" [label="{label}"];')
            edges.append(f'  "{parent_id}" -> "{child.number}";')
            walk(child, child.number)

    walk(tree, "root")
    lines = ["digraph fhd {", *nodes, *edges, "}"]
    return ("\n".join(lines) + "\n").encode("utf-8")
