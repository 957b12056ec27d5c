"""Project state and the pure operations that evolve it.

Every type here is an immutable value; operations return a new ``Project``
and never touch their input.  Multi-line text fields are normalized to LF
line endings with trailing blank lines trimmed, which is what keeps the
on-disk canonical form a fixed point.
"""

from __future__ import annotations

import dataclasses
import datetime
import enum
import re
from dataclasses import dataclass, field

from .errors import SrsError
from .template import (
    ReqKind,
    SectionKind,
    Template,
    builtin_template,
)

REQ_ID_RE = re.compile(r"^[A-Z]{1,4}-[1-9][0-9]*$")
FUNCTION_NUMBER_RE = re.compile(r"^[1-9][0-9]*(?:\.[1-9][0-9]*)*$")
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


class SignoffRole(str, enum.Enum):
    SUBMITTED_BY = "submitted-by"
    COORD_APPLICATIONS_ARCHITECTURE = "coord-applications-architecture"
    COORD_ENGINEERING = "coord-engineering"
    COORD_TEST_DIRECTOR = "coord-test-director"
    APPROVED_BY = "approved-by"


#: Fixed document order of the sign-off block.
SIGNOFF_ORDER: tuple[SignoffRole, ...] = (
    SignoffRole.SUBMITTED_BY,
    SignoffRole.COORD_APPLICATIONS_ARCHITECTURE,
    SignoffRole.COORD_ENGINEERING,
    SignoffRole.COORD_TEST_DIRECTOR,
    SignoffRole.APPROVED_BY,
)

SIGNOFF_DISPLAY: dict[SignoffRole, str] = {
    SignoffRole.SUBMITTED_BY: "Program Manager/Functional Project Officer",
    SignoffRole.COORD_APPLICATIONS_ARCHITECTURE: "Director, Applications Architecture",
    SignoffRole.COORD_ENGINEERING: "Director, Engineering",
    SignoffRole.COORD_TEST_DIRECTOR: "Test Director",
    SignoffRole.APPROVED_BY: "Functional Manager",
}


def normalize_multiline(text: str) -> str:
    """LF endings, trailing blank lines removed; interior lines untouched."""
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    return "\n".join(lines)


def _single_line(value: str, what: str, *, required: bool = True) -> str:
    stripped = value.strip()
    if "\n" in stripped or "\r" in stripped:
        raise SrsError(f"bad-{what}", f"{what} must be a single line")
    if required and not stripped:
        raise SrsError(f"empty-{what}", f"{what} must be nonempty")
    return stripped


def check_date(value: str) -> str:
    """'' or an ISO-8601 calendar date; raises ``bad-date`` otherwise."""
    if value == "":
        return value
    if not _DATE_RE.match(value):
        raise SrsError("bad-date", f"malformed date: {value!r} (expected YYYY-MM-DD)")
    try:
        datetime.date.fromisoformat(value)
    except ValueError:
        raise SrsError("bad-date", f"not a calendar date: {value!r}") from None
    return value


def function_sort_key(number: str) -> tuple[int, ...]:
    """Componentwise numeric order; parents sort before their children."""
    return tuple(int(part) for part in number.split("."))


def check_function_number(number: str) -> str:
    if not FUNCTION_NUMBER_RE.match(number):
        raise SrsError(
            "malformed-number",
            f"malformed function number: {number!r} "
            "(dotted positive integers, no leading zeros)",
        )
    return number


def req_id_sort_key(req_id: str) -> tuple[str, int]:
    """Natural order: alpha prefix lexicographic, then numeric."""
    prefix, _, num = req_id.partition("-")
    return prefix, int(num)


@dataclass(frozen=True, slots=True)
class SectionBody:
    """An explicit section body: the NA marker or nonempty text."""

    text: str | None = None  # None is the NA marker

    def __post_init__(self) -> None:
        if self.text is not None:
            normalized = normalize_multiline(self.text)
            if not normalized:
                raise SrsError("empty-section", "section text must be nonempty; use NA")
            object.__setattr__(self, "text", normalized)

    @property
    def is_na(self) -> bool:
        return self.text is None


NA = SectionBody(None)


@dataclass(frozen=True, slots=True)
class Requirement:
    id: str
    kind: ReqKind
    title: str
    text: str = ""
    trace: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not REQ_ID_RE.match(self.id):
            raise SrsError(
                "malformed-id",
                f"malformed requirement id: {self.id!r} (expected e.g. FR-1)",
            )
        try:
            object.__setattr__(self, "kind", ReqKind(self.kind))
        except ValueError:
            raise SrsError("unknown-kind", f"unknown requirement kind: {self.kind!r}") from None
        object.__setattr__(self, "title", _single_line(self.title, "title"))
        object.__setattr__(self, "text", normalize_multiline(self.text))
        trace = tuple(self.trace)
        for target in trace:
            if not REQ_ID_RE.match(target):
                raise SrsError("malformed-id", f"malformed trace target: {target!r}")
        if len(set(trace)) != len(trace):
            raise SrsError("duplicate-trace", f"{self.id}: duplicate trace targets")
        if self.id in trace:
            raise SrsError("self-trace", f"{self.id}: requirement cannot trace itself")
        object.__setattr__(self, "trace", trace)


@dataclass(frozen=True, slots=True)
class Signoff:
    role: SignoffRole
    name: str = ""
    date: str = ""

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "role", SignoffRole(self.role))
        except ValueError:
            raise SrsError("unknown-role", f"unknown sign-off role: {self.role!r}") from None
        object.__setattr__(self, "name", _single_line(self.name, "name", required=False))
        object.__setattr__(self, "date", check_date(self.date))


@dataclass(frozen=True, slots=True)
class Definition:
    term: str
    meaning: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "term", _single_line(self.term, "term"))
        object.__setattr__(self, "meaning", normalize_multiline(self.meaning))


@dataclass(frozen=True, eq=True)
class Project:
    title: str
    id: int
    template: Template
    sections: dict[str, SectionBody] = field(default_factory=dict)
    definitions: tuple[Definition, ...] = ()
    functions: dict[str, str] = field(default_factory=dict)
    requirements: dict[str, Requirement] = field(default_factory=dict)
    signoffs: dict[SignoffRole, Signoff] = field(default_factory=dict)
    signoff_title: str | None = None  # overrides the default document title

    def __post_init__(self) -> None:
        object.__setattr__(self, "title", _single_line(self.title, "title"))
        if self.id < 0:
            raise SrsError("bad-id", f"project id must be >= 0, got {self.id}")
        object.__setattr__(self, "sections", dict(self.sections))
        object.__setattr__(self, "definitions", tuple(self.definitions))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "requirements", dict(self.requirements))
        signoffs = dict(self.signoffs)
        for role in SIGNOFF_ORDER:
            signoffs.setdefault(role, Signoff(role=role))
        object.__setattr__(self, "signoffs", signoffs)
        if self.signoff_title is not None:
            object.__setattr__(self, "signoff_title", _single_line(self.signoff_title, "title"))

    @property
    def document_title(self) -> str:
        if self.signoff_title is not None:
            return self.signoff_title
        return f"SYSTEM REQUIREMENTS SPECIFICATION for {self.title}"

    def requirements_of(self, kind: ReqKind) -> list[Requirement]:
        """Requirements of one kind in natural id order."""
        found = [r for r in self.requirements.values() if r.kind is kind]
        found.sort(key=lambda r: req_id_sort_key(r.id))
        return found

    def sorted_functions(self) -> list[tuple[str, str]]:
        """(number, title) pairs in componentwise numeric order."""
        return sorted(self.functions.items(), key=lambda kv: function_sort_key(kv[0]))

    def sorted_requirements(self) -> list[Requirement]:
        return sorted(self.requirements.values(), key=lambda r: req_id_sort_key(r.id))


def new_project(title: str, project_id: int, template: str | Template = "ieee-830") -> Project:
    """Fresh project: every template leaf unset, no data, empty sign-offs.

    ``template`` is a built-in template id or a :class:`Template` value
    obtained from :func:`srskit.template.customize_template`.
    """
    resolved = template if isinstance(template, Template) else builtin_template(template)
    return Project(title=title, id=project_id, template=resolved)


def set_section(project: Project, path: str, body: SectionBody) -> Project:
    """Replace one section body.  NA fits any leaf; text only text leaves."""
    node = project.template.node(path)
    if node is None:
        raise SrsError("unknown-path", f"unknown section path: {path}")
    if not node.is_leaf:
        raise SrsError("container-path", f"{path} is a container, not a section")
    if not body.is_na and node.kind is not SectionKind.TEXT:
        raise SrsError(
            "structured-leaf",
            f"{path} holds {node.kind.value} content; only NA can be set directly",
        )
    sections = dict(project.sections)
    sections[path] = body
    return dataclasses.replace(project, sections=sections)


def unset_section(project: Project, path: str) -> Project:
    """Return the section to the implicit unset state."""
    node = project.template.node(path)
    if node is None or not node.is_leaf:
        raise SrsError("unknown-path", f"unknown section path: {path}")
    sections = dict(project.sections)
    sections.pop(path, None)
    return dataclasses.replace(project, sections=sections)


def add_requirement(project: Project, requirement: Requirement) -> Project:
    if requirement.id in project.requirements:
        raise SrsError("duplicate-id", f"duplicate requirement id: {requirement.id}")
    requirements = dict(project.requirements)
    requirements[requirement.id] = requirement
    return dataclasses.replace(project, requirements=requirements)


def remove_requirement(project: Project, req_id: str) -> Project:
    if req_id not in project.requirements:
        raise SrsError("unknown-id", f"unknown requirement id: {req_id}")
    requirements = dict(project.requirements)
    del requirements[req_id]
    return dataclasses.replace(project, requirements=requirements)


def update_requirement(project: Project, requirement: Requirement) -> Project:
    """Replace an existing requirement wholesale (same id)."""
    if requirement.id not in project.requirements:
        raise SrsError("unknown-id", f"unknown requirement id: {requirement.id}")
    requirements = dict(project.requirements)
    requirements[requirement.id] = requirement
    return dataclasses.replace(project, requirements=requirements)


def add_definition(project: Project, term: str, meaning: str) -> Project:
    definition = Definition(term=term, meaning=meaning)
    if any(d.term == definition.term for d in project.definitions):
        raise SrsError("duplicate-term", f"duplicate definition term: {definition.term}")
    return dataclasses.replace(
        project, definitions=project.definitions + (definition,)
    )


def set_definition(project: Project, term: str, meaning: str) -> Project:
    """Upsert a definition, keeping an existing term at its position."""
    definition = Definition(term=term, meaning=meaning)
    definitions = list(project.definitions)
    for i, existing in enumerate(definitions):
        if existing.term == definition.term:
            definitions[i] = definition
            break
    else:
        definitions.append(definition)
    return dataclasses.replace(project, definitions=tuple(definitions))


def remove_definition(project: Project, term: str) -> Project:
    definitions = tuple(d for d in project.definitions if d.term != term)
    if len(definitions) == len(project.definitions):
        raise SrsError("unknown-term", f"unknown definition term: {term}")
    return dataclasses.replace(project, definitions=definitions)


def set_function(project: Project, number: str, title: str) -> Project:
    """Insert or overwrite a product function, keyed by dotted number."""
    check_function_number(number)
    clean_title = _single_line(title, "title")
    functions = dict(project.functions)
    functions[number] = clean_title
    return dataclasses.replace(project, functions=functions)


def remove_function(project: Project, number: str) -> Project:
    if number not in project.functions:
        raise SrsError("unknown-number", f"unknown function number: {number}")
    functions = dict(project.functions)
    del functions[number]
    return dataclasses.replace(project, functions=functions)


def set_signoff(project: Project, role: SignoffRole | str, name: str, date: str = "") -> Project:
    try:
        resolved = SignoffRole(role)
    except ValueError:
        raise SrsError("unknown-role", f"unknown sign-off role: {role!r}") from None
    signoffs = dict(project.signoffs)
    signoffs[resolved] = Signoff(role=resolved, name=name, date=date)
    return dataclasses.replace(project, signoffs=signoffs)


def set_signoff_title(project: Project, title: str | None) -> Project:
    """Override (or reset, with None) the sign-off block document title."""
    if title is not None:
        title = _single_line(title, "title")
    return dataclasses.replace(project, signoff_title=title)


def check_invariants(project: Project) -> list[str]:
    """Debug walk over the whole value; returns violations (empty = sound)."""
    problems: list[str] = []
    leaf_paths = project.template.leaf_paths()
    for path, body in project.sections.items():
        if path not in leaf_paths:
            problems.append(f"section {path} is not a leaf of template {project.template.id}")
            continue
        node = project.template.node(path)
        if node and node.kind is not SectionKind.TEXT and not body.is_na:
            problems.append(f"section {path} holds text but is a {node.kind.value} leaf")
    terms = [d.term for d in project.definitions]
    if len(set(terms)) != len(terms):
        problems.append("duplicate definition terms")
    for number in project.functions:
        if not FUNCTION_NUMBER_RE.match(number):
            problems.append(f"malformed function number: {number}")
    for req_id, requirement in project.requirements.items():
        if req_id != requirement.id:
            problems.append(f"requirement key {req_id} != id {requirement.id}")
    if set(project.signoffs) != set(SIGNOFF_ORDER):
        problems.append("sign-off roles are not exactly the five fixed roles")
    if project.id < 0:
        problems.append("project id is negative")
    return problems
