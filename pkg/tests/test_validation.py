import dataclasses
import random

import pytest

import srskit as sk
from projgen import random_project
from srskit.validation import coverage_report, leaf_status

MANDATORY = [
    "introduction.purpose",
    "introduction.scope",
    "overall-description.product-perspective",
    "overall-description.product-functions",
    "external-interfaces.functional-requirements",
]


def codes(findings):
    return [f.code for f in findings]


def test_clean_fixture_yields_nothing(atm_project):
    assert sk.validate(atm_project, sk.LENIENT) == []
    assert sk.validate(atm_project, sk.STRICT) == []


def test_fresh_strict_project_has_five_unset_errors():
    findings = sk.validate(sk.new_project("X", 0), sk.STRICT)
    assert codes(findings) == ["V-UNSET"] * 5
    assert [f.locus for f in findings] == MANDATORY
    assert all(f.severity is sk.Severity.ERROR for f in findings)


def test_lenient_downgrades_unset_to_warning():
    findings = sk.validate(sk.new_project("X", 0), sk.LENIENT)
    assert codes(findings) == ["V-UNSET"] * 5
    assert all(f.severity is sk.Severity.WARNING for f in findings)


def test_na_on_mandatory_warns_in_strict_only(atm_project):
    p = sk.set_section(atm_project, "introduction.purpose", sk.NA)
    assert codes(sk.validate(p, sk.STRICT)) == ["V-NA-MAND"]
    assert sk.validate(p, sk.LENIENT) == []


def test_trace_dangle(atm_project):
    p = sk.add_requirement(
        atm_project,
        sk.Requirement(id="FR-2", kind=sk.ReqKind.FUNCTIONAL, title="T", text="x", trace=("FR-9",)),
    )
    findings = sk.validate(p, sk.LENIENT)
    assert codes(findings) == ["V-TRACE-DANGLE"]
    assert findings[0].locus == "FR-2"
    assert findings[0].severity is sk.Severity.ERROR


def test_removing_traced_requirement_dangles(atm_project):
    # BR-1 traces FR-1 in the fixture
    p = sk.remove_requirement(atm_project, "FR-1")
    findings = sk.validate(p, sk.STRICT)
    by_code = {f.code for f in findings}
    assert "V-TRACE-DANGLE" in by_code
    assert "V-UNSET" in by_code  # functional-requirements leaf became unset too


def test_function_orphan_and_gap(atm_project):
    orphan = sk.set_function(atm_project, "2.1", "stranded")
    findings = sk.validate(orphan, sk.LENIENT)
    assert codes(findings) == ["V-FN-ORPHAN"]
    assert findings[0].locus == "2.1"

    gap = sk.set_function(atm_project, "3", "skips two")
    findings = sk.validate(gap, sk.LENIENT)
    assert codes(findings) == ["V-FN-GAP"]
    assert findings[0].locus == "3"
    assert "expected 2" in findings[0].message


def test_gap_rule_counts_from_one():
    p = sk.new_project("X", 0)
    p = sk.set_function(p, "2", "starts at two")
    findings = [f for f in sk.validate(p, sk.LENIENT) if f.code == "V-FN-GAP"]
    assert len(findings) == 1 and findings[0].locus == "2"


def test_nested_gap_detected():
    p = sk.new_project("X", 0)
    for number in ("1", "1.1", "1.3"):
        p = sk.set_function(p, number, f"fn {number}")
    findings = [f for f in sk.validate(p, sk.LENIENT) if f.code == "V-FN-GAP"]
    assert [f.locus for f in findings] == ["1.3"]


def test_req_empty_text(atm_project):
    p = sk.update_requirement(
        atm_project,
        sk.Requirement(id="FR-1", kind=sk.ReqKind.FUNCTIONAL, title="Get Balance Information"),
    )
    findings = sk.validate(p, sk.LENIENT)
    assert codes(findings) == ["V-REQ-EMPTY"]
    assert findings[0].locus == "FR-1"


def test_sign_date(atm_project):
    p = sk.set_signoff(atm_project, sk.SignoffRole.APPROVED_BY, "Functional Manager")
    findings = sk.validate(p, sk.LENIENT)
    assert codes(findings) == ["V-SIGN-DATE"]
    assert findings[0].locus == "approved-by"
    dated = sk.set_signoff(atm_project, sk.SignoffRole.APPROVED_BY, "Functional Manager", "2026-01-05")
    assert sk.validate(dated, sk.LENIENT) == []


def test_def_unused_whole_word(atm_project):
    p = sk.add_definition(atm_project, "PIN", "Personal Identification Number")
    findings = sk.validate(p, sk.LENIENT)
    assert codes(findings) == ["V-DEF-UNUSED"]
    assert findings[0].locus == "introduction.definitions"
    assert "'PIN'" in findings[0].message

    # substring hits do not count: "Account" vs "Accounting"
    q = sk.set_section(
        atm_project, "introduction.scope", sk.SectionBody("Accounting software only.")
    )
    assert "V-DEF-UNUSED" in codes(sk.validate(q, sk.LENIENT))
    # case-sensitive
    q = sk.set_section(atm_project, "introduction.scope", sk.SectionBody("account, lower case"))
    assert "V-DEF-UNUSED" in codes(sk.validate(q, sk.LENIENT))


def test_determinism(atm_project):
    p = sk.set_function(atm_project, "3", "gap")
    p = sk.add_definition(p, "PIN", "x")
    assert sk.validate(p, sk.STRICT) == sk.validate(p, sk.STRICT)


def test_ordering_is_template_position_then_code():
    p = sk.new_project("X", 0)  # five V-UNSET
    p = sk.add_definition(p, "Ghost", "never used")
    p = sk.set_function(p, "2", "gap")
    p = sk.set_signoff(p, sk.SignoffRole.SUBMITTED_BY, "Someone")
    findings = sk.validate(p, sk.STRICT)
    loci = [(f.code, f.locus) for f in findings]
    # note: function "2" fills the product-functions leaf, so no V-UNSET there
    assert loci == [
        ("V-UNSET", "introduction.purpose"),
        ("V-UNSET", "introduction.scope"),
        ("V-DEF-UNUSED", "introduction.definitions"),
        ("V-UNSET", "overall-description.product-perspective"),
        ("V-FN-GAP", "2"),
        ("V-UNSET", "external-interfaces.functional-requirements"),
        ("V-SIGN-DATE", "submitted-by"),
    ]


def test_strict_findings_superset_of_lenient():
    for seed in range(25):
        p = random_project(random.Random(seed))
        lenient = {(f.code, f.locus, f.message) for f in sk.validate(p, sk.LENIENT)}
        strict = {(f.code, f.locus, f.message) for f in sk.validate(p, sk.STRICT)}
        assert lenient <= strict


def test_monotone_repair_spot_checks(atm_project):
    # repairing the single finding's locus never re-triggers the same code there
    p = sk.set_function(atm_project, "3", "gap")
    p = sk.set_function(p, "2", "fills the gap")
    assert all(f.code != "V-FN-GAP" for f in sk.validate(p, sk.LENIENT))

    p = sk.unset_section(atm_project, "introduction.purpose")
    p = sk.set_section(p, "introduction.purpose", sk.SectionBody("restored"))
    assert all(
        not (f.code == "V-UNSET" and f.locus == "introduction.purpose")
        for f in sk.validate(p, sk.STRICT)
    )


def test_coverage_fresh_and_fixture(atm_project):
    fresh = coverage_report(sk.new_project("X", 0))
    leaf_count = len(sk.builtin_template("ieee-830").leaves())
    assert dataclasses.astuple(fresh) == (0, 0, leaf_count, leaf_count)

    atm = coverage_report(atm_project)
    assert atm.na == 7  # Reference, Overview, Document Conventions, General
    # Constraints, User Documentation, Software Quality, Other Requirements
    assert atm.unset == 0
    assert atm.filled == 19


def test_coverage_increments_on_set_section():
    p = sk.new_project("X", 0)
    before = coverage_report(p)
    p = sk.set_section(p, "introduction.purpose", sk.SectionBody("x"))
    after = coverage_report(p)
    assert after.filled == before.filled + 1
    assert after.unset == before.unset - 1


def test_coverage_conservation_over_random_projects():
    for seed in range(40):
        p = random_project(random.Random(seed))
        summary = coverage_report(p)
        assert summary.filled + summary.na + summary.unset == summary.total_leaves


def test_leaf_status_data_wins_over_marker():
    p = sk.new_project("X", 0)
    p = sk.set_section(p, "introduction.definitions", sk.NA)
    node = p.template.node("introduction.definitions")
    assert leaf_status(p, node) == "na"
    p = sk.add_definition(p, "T", "meaning")
    assert leaf_status(p, node) == "filled"


def test_unknown_profile():
    with pytest.raises(sk.SrsError) as excinfo:
        sk.get_profile("medium")
    assert excinfo.value.code == "unknown-profile"
