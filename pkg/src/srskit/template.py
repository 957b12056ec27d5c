"""Section templates: the ordered tree of sections an SRS document follows.

A template is a flat tuple of nodes in pre-order (document order); hierarchy
is encoded in the dotted paths.  The built-in ``ieee-830`` template carries
the conventional organization: Introduction / Overall Description / interface
and requirement sections / non-functional sections, closed by a sign-off
block at render time.
"""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass, field

from .errors import SrsError

_TOKEN_RE = re.compile(r"^[a-z][a-z0-9]*(?:-[a-z0-9]+)*$")


class SectionKind(str, enum.Enum):
    CONTAINER = "container"
    TEXT = "text"
    DEFINITIONS = "definitions"
    FUNCTIONS = "functions"
    REQUIREMENTS = "requirements"


class ReqKind(str, enum.Enum):
    FUNCTIONAL = "functional"
    BEHAVIOURAL = "behavioural"
    USER_INTERFACE = "user-interface"
    HARDWARE_INTERFACE = "hardware-interface"
    SOFTWARE_INTERFACE = "software-interface"
    COMMUNICATION_INTERFACE = "communication-interface"
    PERFORMANCE = "performance"
    SAFETY = "safety"
    SECURITY = "security"
    QUALITY = "quality"
    OTHER = "other"


def valid_path(path: str) -> bool:
    """True when ``path`` is one or more dotted lowercase tokens."""
    return bool(path) and all(_TOKEN_RE.match(tok) for tok in path.split("."))


def parent_path(path: str) -> str:
    """Parent of a dotted path; '' for top-level paths."""
    head, _, _ = path.rpartition(".")
    return head


@dataclass(frozen=True, slots=True)
class SectionNode:
    path: str
    label: str
    kind: SectionKind
    req_kind: ReqKind | None = None
    mandatory: bool = False

    def __post_init__(self) -> None:
        if not valid_path(self.path):
            raise SrsError("bad-path", f"malformed section path: {self.path!r}")
        if not self.label.strip():
            raise SrsError("empty-label", f"section {self.path}: label must be nonempty")
        if (self.kind is SectionKind.REQUIREMENTS) != (self.req_kind is not None):
            raise SrsError(
                "bad-kind",
                f"section {self.path}: req_kind is set exactly for requirements leaves",
            )

    @property
    def is_leaf(self) -> bool:
        return self.kind is not SectionKind.CONTAINER

    def kind_token(self) -> str:
        """Kind as a single token, e.g. ``text`` or ``requirements:functional``."""
        if self.kind is SectionKind.REQUIREMENTS:
            assert self.req_kind is not None
            return f"requirements:{self.req_kind.value}"
        return self.kind.value


def parse_kind_token(token: str) -> tuple[SectionKind, ReqKind | None]:
    """Inverse of :meth:`SectionNode.kind_token`; raises SrsError on junk."""
    base, _, req = token.partition(":")
    try:
        kind = SectionKind(base)
        req_kind = ReqKind(req) if req else None
    except ValueError:
        raise SrsError("bad-kind", f"unknown section kind: {token!r}") from None
    if (kind is SectionKind.REQUIREMENTS) != (req_kind is not None):
        raise SrsError("bad-kind", f"unknown section kind: {token!r}")
    return kind, req_kind


@dataclass(frozen=True, slots=True)
class Template:
    id: str
    nodes: tuple[SectionNode, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        _check_tree(self.nodes)

    def node(self, path: str) -> SectionNode | None:
        for n in self.nodes:
            if n.path == path:
                return n
        return None

    def leaves(self) -> tuple[SectionNode, ...]:
        return tuple(n for n in self.nodes if n.is_leaf)

    def leaf_paths(self) -> frozenset[str]:
        return frozenset(n.path for n in self.nodes if n.is_leaf)

    def labels(self) -> tuple[str, ...]:
        """Pre-order display labels of every node."""
        return tuple(n.label for n in self.nodes)

    def requirements_leaf(self, kind: ReqKind) -> SectionNode | None:
        for n in self.nodes:
            if n.kind is SectionKind.REQUIREMENTS and n.req_kind is kind:
                return n
        return None

    def definitions_leaf(self) -> SectionNode:
        return next(n for n in self.nodes if n.kind is SectionKind.DEFINITIONS)

    def functions_leaf(self) -> SectionNode:
        return next(n for n in self.nodes if n.kind is SectionKind.FUNCTIONS)

    def subtree_range(self, path: str) -> tuple[int, int]:
        """Index range [start, end) of ``path`` and its descendants."""
        start = next(i for i, n in enumerate(self.nodes) if n.path == path)
        end = start + 1
        prefix = path + "."
        while end < len(self.nodes) and self.nodes[end].path.startswith(prefix):
            end += 1
        return start, end


def _check_tree(nodes: tuple[SectionNode, ...]) -> None:
    seen: set[str] = set()
    stack: list[str] = []
    definitions = functions = 0
    req_kinds: set[ReqKind] = set()
    for node in nodes:
        if node.path in seen:
            raise SrsError("duplicate-path", f"duplicate section path: {node.path}")
        seen.add(node.path)
        parent = parent_path(node.path)
        while stack and stack[-1] != parent:
            stack.pop()
        if parent and (not stack or stack[-1] != parent):
            raise SrsError(
                "bad-tree", f"section {node.path}: parent {parent} missing or out of order"
            )
        stack.append(node.path)
        if node.kind is SectionKind.DEFINITIONS:
            definitions += 1
        elif node.kind is SectionKind.FUNCTIONS:
            functions += 1
        elif node.kind is SectionKind.REQUIREMENTS:
            assert node.req_kind is not None
            if node.req_kind in req_kinds:
                raise SrsError(
                    "bad-tree", f"two requirements leaves for kind {node.req_kind.value}"
                )
            req_kinds.add(node.req_kind)
    if definitions != 1:
        raise SrsError("bad-tree", "template needs exactly one definitions leaf")
    if functions != 1:
        raise SrsError("bad-tree", "template needs exactly one functions leaf")


def _n(path: str, label: str, kind: str, mandatory: bool = False) -> SectionNode:
    k, rk = parse_kind_token(kind)
    return SectionNode(path=path, label=label, kind=k, req_kind=rk, mandatory=mandatory)


IEEE830 = Template(
    id="ieee-830",
    nodes=(
        _n("introduction", "Introduction", "container"),
        _n("introduction.purpose", "Purpose", "text", mandatory=True),
        _n("introduction.scope", "Scope", "text", mandatory=True),
        _n("introduction.definitions", "Definition", "definitions"),
        _n("introduction.intended-audience", "Intended Audience", "text"),
        _n("introduction.references", "Reference", "text"),
        _n("introduction.overview", "Overview", "text"),
        _n("introduction.document-conventions", "Document Conventions", "text"),
        _n("overall-description", "Overall Description", "container"),
        _n("overall-description.product-perspective", "Product Perspective", "text", mandatory=True),
        _n("overall-description.product-functions", "Product Function", "functions", mandatory=True),
        _n("overall-description.user-characteristics", "User Characteristics", "text"),
        _n("overall-description.operating-environment", "Operating Environment", "text"),
        _n("overall-description.general-constraints", "General Constraints", "text"),
        _n("overall-description.user-documentation", "User Documentation", "text"),
        _n("overall-description.assumptions-dependencies", "Assumptions Dependencies", "text"),
        _n("specific-requirements", "Specific Requirements", "text"),
        _n("external-interfaces", "External Interface Requirements", "container"),
        _n("external-interfaces.user-interface", "User Interface", "requirements:user-interface"),
        _n("external-interfaces.hardware-interface", "Hardware Interface", "requirements:hardware-interface"),
        _n("external-interfaces.software-interface", "Software Interface", "requirements:software-interface"),
        _n("external-interfaces.communication-interface", "Communication Interface", "requirements:communication-interface"),
        _n("external-interfaces.functional-requirements", "Functional Requirements", "requirements:functional", mandatory=True),
        _n("external-interfaces.behavioural-requirements", "Behavioural Requirements", "requirements:behavioural"),
        _n("non-functional", "Other Non-functional Requirements", "container"),
        _n("non-functional.performance", "Performance Requirements", "requirements:performance"),
        _n("non-functional.safety", "Safety Requirements", "requirements:safety"),
        _n("non-functional.security", "Security Requirements", "requirements:security"),
        _n("non-functional.software-quality", "Software Quality", "text"),
        _n("other-requirements", "Other Requirements", "text"),
    ),
)

_BUILTINS = {IEEE830.id: IEEE830}


def builtin_template(template_id: str) -> Template:
    """Look up a built-in template by id; raises ``unknown-template``."""
    try:
        return _BUILTINS[template_id]
    except KeyError:
        raise SrsError("unknown-template", f"unknown template: {template_id!r}") from None


def is_builtin(template_id: str) -> bool:
    return template_id in _BUILTINS


# --- customization -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Rename:
    path: str
    label: str


@dataclass(frozen=True, slots=True)
class AddLeaf:
    """Append a text leaf as the last child of ``parent`` ('' = top level)."""

    parent: str
    token: str
    label: str
    mandatory: bool = False


@dataclass(frozen=True, slots=True)
class Remove:
    path: str


@dataclass(frozen=True, slots=True)
class SetMandatory:
    path: str
    mandatory: bool


TemplateEdit = Rename | AddLeaf | Remove | SetMandatory


def customize_template(
    base: Template,
    edits: list[TemplateEdit] | tuple[TemplateEdit, ...],
    *,
    in_use_kinds: frozenset[ReqKind] = frozenset(),
) -> Template:
    """Apply edits to a copy of ``base`` and return it under a fresh id.

    ``in_use_kinds`` names requirement kinds that have stored requirements in
    the project being edited; removing their leaves is refused, as is removing
    the definitions or functions leaf.
    """
    nodes = list(base.nodes)
    for edit in edits:
        if isinstance(edit, Rename):
            i = _index_of(nodes, edit.path)
            if not edit.label.strip():
                raise SrsError("empty-label", f"rename {edit.path}: label must be nonempty")
            nodes[i] = _replace(nodes[i], label=edit.label)
        elif isinstance(edit, SetMandatory):
            i = _index_of(nodes, edit.path)
            nodes[i] = _replace(nodes[i], mandatory=edit.mandatory)
        elif isinstance(edit, Remove):
            i = _index_of(nodes, edit.path)
            prefix = edit.path + "."
            doomed = [n for n in nodes if n.path == edit.path or n.path.startswith(prefix)]
            for n in doomed:
                if n.kind in (SectionKind.DEFINITIONS, SectionKind.FUNCTIONS):
                    raise SrsError(
                        "protected-node", f"cannot remove {n.path}: {n.kind.value} leaf"
                    )
                if n.kind is SectionKind.REQUIREMENTS and n.req_kind in in_use_kinds:
                    raise SrsError(
                        "protected-node",
                        f"cannot remove {n.path}: requirements of kind "
                        f"{n.req_kind.value} are stored",
                    )
            nodes[i : i + len(doomed)] = []
        elif isinstance(edit, AddLeaf):
            if not _TOKEN_RE.match(edit.token):
                raise SrsError("bad-path", f"malformed path token: {edit.token!r}")
            path = f"{edit.parent}.{edit.token}" if edit.parent else edit.token
            if any(n.path == path for n in nodes):
                raise SrsError("duplicate-path", f"duplicate section path: {path}")
            if edit.parent:
                i = _index_of(nodes, edit.parent)
                if nodes[i].kind is not SectionKind.CONTAINER:
                    raise SrsError(
                        "bad-tree", f"cannot add below {edit.parent}: not a container"
                    )
                # insert after the parent's whole subtree
                end = i + 1
                prefix = edit.parent + "."
                while end < len(nodes) and nodes[end].path.startswith(prefix):
                    end += 1
            else:
                end = len(nodes)
            nodes.insert(
                end,
                SectionNode(
                    path=path,
                    label=edit.label,
                    kind=SectionKind.TEXT,
                    mandatory=edit.mandatory,
                ),
            )
        else:
            raise SrsError("bad-edit", f"unknown template edit: {edit!r}")
    return Template(id=_custom_id(nodes), nodes=tuple(nodes))


def _index_of(nodes: list[SectionNode], path: str) -> int:
    for i, n in enumerate(nodes):
        if n.path == path:
            return i
    raise SrsError("unknown-path", f"unknown section path: {path}")


def _replace(node: SectionNode, **changes) -> SectionNode:
    import dataclasses

    return dataclasses.replace(node, **changes)


def _custom_id(nodes: list[SectionNode]) -> str:
    # content-addressed so equal customizations get equal ids
    blob = "\n".join(
        f"{n.path}|{n.label}|{n.kind_token()}|{int(n.mandatory)}" for n in nodes
    )
    return "custom-" + hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]
