"""srskit: author, validate and render software requirements specifications.

A project lives in a single ``.srs`` text file with a canonical form, is
validated by a fixed rule set under strict or lenient profiles, and renders
deterministically to plain text, Markdown, HTML and a function hierarchy
diagram.  See the README for the CLI and HTTP service.
"""

from .diagnostics import Diagnostic, Severity
from .errors import SrsError
from .model import (
    NA,
    SIGNOFF_DISPLAY,
    SIGNOFF_ORDER,
    Definition,
    Project,
    Requirement,
    SectionBody,
    Signoff,
    SignoffRole,
    add_definition,
    add_requirement,
    check_invariants,
    new_project,
    remove_definition,
    remove_function,
    remove_requirement,
    set_definition,
    set_function,
    set_section,
    set_signoff,
    set_signoff_title,
    unset_section,
    update_requirement,
)
from .render import (
    FhdNode,
    RenderedDocument,
    build_fhd,
    render,
    render_fhd,
    render_html,
    render_markdown,
    render_text,
)
from .srsml import ParseOutcome, load, parse, save, serialize
from .template import (
    AddLeaf,
    ReqKind,
    Rename,
    Remove,
    SectionKind,
    SectionNode,
    SetMandatory,
    Template,
    builtin_template,
    customize_template,
)
from .validation import (
    LENIENT,
    STRICT,
    CoverageSummary,
    Profile,
    coverage_report,
    get_profile,
    leaf_status,
    validate,
)

__version__ = "0.1.0"
