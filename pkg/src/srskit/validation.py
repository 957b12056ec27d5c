"""Deterministic validation rules over a project.

Rule table (severity under strict / lenient):

======  ==================  =======================================  ================
code    locus               fires when                               strict / lenient
======  ==================  =======================================  ================
V-UNSET         section     mandatory leaf never given a body        error / warning
V-NA-MAND       section     mandatory leaf explicitly marked NA      warning / off
V-TRACE-DANGLE  requirement trace target is not a stored id          error / error
V-FN-ORPHAN     function    dotted number whose parent is absent     error / error
V-FN-GAP        function    sibling numbers skip a value             warning / warning
V-REQ-EMPTY     requirement requirement body text is empty           warning / warning
V-SIGN-DATE     signoff     name present but date empty              warning / warning
V-DEF-UNUSED    section     term absent from all section/req text    warning / warning
======  ==================  =======================================  ================

Output order is (template pre-order position of the locus, then code), so
reports diff cleanly run over run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diagnostics import Diagnostic, Severity
from .errors import SrsError
from .model import SIGNOFF_ORDER, Project, function_sort_key, req_id_sort_key
from .template import SectionKind, SectionNode

RULE_CODES = (
    "V-UNSET",
    "V-NA-MAND",
    "V-TRACE-DANGLE",
    "V-FN-ORPHAN",
    "V-FN-GAP",
    "V-REQ-EMPTY",
    "V-SIGN-DATE",
    "V-DEF-UNUSED",
)

_SHARED = {
    "V-TRACE-DANGLE": Severity.ERROR,
    "V-FN-ORPHAN": Severity.ERROR,
    "V-FN-GAP": Severity.WARNING,
    "V-REQ-EMPTY": Severity.WARNING,
    "V-SIGN-DATE": Severity.WARNING,
    "V-DEF-UNUSED": Severity.WARNING,
}


@dataclass(frozen=True)
class Profile:
    """Named severity policy; a ``None`` severity disables the rule."""

    name: str
    severities: dict[str, Severity | None] = field(default_factory=dict)

    def severity(self, code: str) -> Severity | None:
        return self.severities.get(code)


STRICT = Profile("strict", {**_SHARED, "V-UNSET": Severity.ERROR, "V-NA-MAND": Severity.WARNING})
LENIENT = Profile("lenient", {**_SHARED, "V-UNSET": Severity.WARNING, "V-NA-MAND": None})


def get_profile(name: str) -> Profile:
    if name == "strict":
        return STRICT
    if name == "lenient":
        return LENIENT
    raise SrsError("unknown-profile", f"unknown validation profile: {name!r}")


def leaf_status(project: Project, node: SectionNode) -> str:
    """Coverage state of one leaf: ``filled``, ``na`` or ``unset``.

    Structured leaves count as filled as soon as they have data, whatever
    the sections map says.
    """
    if node.kind is SectionKind.DEFINITIONS and project.definitions:
        return "filled"
    if node.kind is SectionKind.FUNCTIONS and project.functions:
        return "filled"
    if node.kind is SectionKind.REQUIREMENTS:
        assert node.req_kind is not None
        if any(r.kind is node.req_kind for r in project.requirements.values()):
            return "filled"
    body = project.sections.get(node.path)
    if body is None:
        return "unset"
    return "na" if body.is_na else "filled"


@dataclass(frozen=True)
class CoverageSummary:
    filled: int
    na: int
    unset: int
    total_leaves: int


def coverage_report(project: Project) -> CoverageSummary:
    counts = {"filled": 0, "na": 0, "unset": 0}
    leaves = project.template.leaves()
    for node in leaves:
        counts[leaf_status(project, node)] += 1
    return CoverageSummary(
        filled=counts["filled"], na=counts["na"], unset=counts["unset"], total_leaves=len(leaves)
    )


def validate(project: Project, profile: Profile = LENIENT) -> list[Diagnostic]:
    """All findings for the profile, deterministically ordered."""
    raw = _collect(project)
    out = []
    for order, code, locus, message in raw:
        severity = profile.severity(code)
        if severity is None:
            continue
        out.append((order, Diagnostic(code=code, severity=severity, message=message, locus=locus)))
    out.sort(key=lambda pair: (pair[0], pair[1].code, pair[1].message))
    return [diag for _, diag in out]


# Each finding carries a sort key tuple placing it at its locus's position
# in the rendered document: header, template pre-order, then sign-offs.

def _collect(project: Project) -> list[tuple[tuple, str, str, str]]:
    template = project.template
    node_index = {node.path: i for i, node in enumerate(template.nodes)}
    after_sections = len(template.nodes)
    findings: list[tuple[tuple, str, str, str]] = []

    def section_key(path: str) -> tuple:
        return (node_index[path], 0)

    def req_key(req_id: str) -> tuple:
        requirement = project.requirements[req_id]
        leaf = template.requirements_leaf(requirement.kind)
        position = node_index[leaf.path] if leaf else after_sections
        return (position, 1, req_id_sort_key(req_id))

    for node in template.leaves():
        if not node.mandatory:
            continue
        status = leaf_status(project, node)
        if status == "unset":
            findings.append(
                (section_key(node.path), "V-UNSET", node.path,
                 f"mandatory section {node.label!r} is unset")
            )
        elif status == "na":
            findings.append(
                (section_key(node.path), "V-NA-MAND", node.path,
                 f"mandatory section {node.label!r} is marked NA")
            )

    for requirement in project.sorted_requirements():
        for target in requirement.trace:
            if target not in project.requirements:
                findings.append(
                    (req_key(requirement.id), "V-TRACE-DANGLE", requirement.id,
                     f"trace target {target} does not exist")
                )
        if not requirement.text:
            findings.append(
                (req_key(requirement.id), "V-REQ-EMPTY", requirement.id,
                 f"requirement {requirement.id} has no body text")
            )

    functions_position = node_index[template.functions_leaf().path]

    def fn_key(number: str) -> tuple:
        return (functions_position, 1, function_sort_key(number))

    numbers = sorted(project.functions, key=function_sort_key)
    present = set(numbers)
    children: dict[str, list[int]] = {}
    for number in numbers:
        parts = number.split(".")
        parent = ".".join(parts[:-1])
        if parent and parent not in present:
            findings.append(
                (fn_key(number), "V-FN-ORPHAN", number,
                 f"function {number} has no parent {parent}")
            )
        children.setdefault(parent, []).append(int(parts[-1]))
    for parent, last_parts in children.items():
        expected = 1
        for value in sorted(last_parts):
            number = f"{parent}.{value}" if parent else str(value)
            if value != expected:
                missing = f"{parent}.{expected}" if parent else str(expected)
                findings.append(
                    (fn_key(number), "V-FN-GAP", number,
                     f"sibling numbering gap: expected {missing} before {number}")
                )
            expected = value + 1

    signoff_base = after_sections + 1
    for position, role in enumerate(SIGNOFF_ORDER):
        signoff = project.signoffs[role]
        if signoff.name and not signoff.date:
            findings.append(
                ((signoff_base, position), "V-SIGN-DATE", role.value,
                 f"sign-off {role.value} has a name but no date")
            )

    corpus = "\n".join(
        [body.text for body in project.sections.values() if body.text is not None]
        + [r.text for r in project.requirements.values()]
    )
    definitions_path = template.definitions_leaf().path
    for definition in project.definitions:
        pattern = rf"(?<![A-Za-z0-9_]){re.escape(definition.term)}(?![A-Za-z0-9_])"
        if not re.search(pattern, corpus):
            findings.append(
                (section_key(definitions_path), "V-DEF-UNUSED", definitions_path,
                 f"defined term {definition.term!r} is never used")
            )

    return findings
