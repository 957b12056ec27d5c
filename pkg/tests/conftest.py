"""Shared fixtures: the ATM sample project and its on-disk form."""

from __future__ import annotations

from pathlib import Path

import pytest

import srskit as sk

FIXTURE_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = Path(__file__).parent / "goldens"

ATM_FILE = FIXTURE_DIR / "atm.srs"


def build_atm_project() -> sk.Project:
    """The ATM sample: every section filled or explicitly NA, one function,
    one requirement per interface/non-functional section, empty sign-offs."""
    p = sk.new_project("SRS ATM", 1, "ieee-830")
    p = sk.set_signoff_title(p, "SYSTEM REQUIREMENTS SPECIFICATION for ATM Withdrawal")

    text = {
        "introduction.purpose": "This document describes the software require.....",
        "introduction.scope": (
            "The software supports a computerized banking network. "
            "Each customer can apply transactions against an Account."
        ),
        "introduction.intended-audience": (
            "The intended audience of this SRS consists of:\n- Software designers...."
        ),
        "overall-description.product-perspective": (
            "An automated teller machine (ATM) is a..... "
            "customer is identified by inserting a plastic ATM card"
        ),
        "overall-description.user-characteristics": (
            "Open to all authorized users..... Customers are simply members "
            "of the public with no special training....."
        ),
        "overall-description.operating-environment": "Ability to read the ATM card.....",
        "overall-description.assumptions-dependencies": "Hardware never fails",
        "specific-requirements": "N.A.....",
    }
    for path, body in text.items():
        p = sk.set_section(p, path, sk.SectionBody(body))
    for path in (
        "introduction.references",
        "introduction.overview",
        "introduction.document-conventions",
        "overall-description.general-constraints",
        "overall-description.user-documentation",
        "non-functional.software-quality",
        "other-requirements",
    ):
        p = sk.set_section(p, path, sk.NA)

    p = sk.add_definition(
        p, "Account", "A single account at a bank against which transaction....."
    )
    p = sk.set_function(p, "1", "Get Balance Information.....")

    reqs = [
        ("UI-1", sk.ReqKind.USER_INTERFACE, "Intuitive operation",
         "The customer user interface should be intuitive, such that 99.9% of "
         "all new ATM users are able....."),
        ("HW-1", sk.ReqKind.HARDWARE_INTERFACE, "Card reader",
         "Ability to read the ATM card....."),
        ("SW-1", sk.ReqKind.SOFTWARE_INTERFACE, "Bank network", "State Bank....."),
        ("COM-1", sk.ReqKind.COMMUNICATION_INTERFACE, "Communication links",
         "List of Communicational interface requirements"),
        ("FR-1", sk.ReqKind.FUNCTIONAL, "Get Balance Information",
         "Return the current balance of the card holder."),
        ("PERF-1", sk.ReqKind.PERFORMANCE, "Environmental tolerance",
         "It must be able to perform in adverse conditions like high/low "
         "temperature etc."),
        ("SAF-1", sk.ReqKind.SAFETY, "Physical safekeeping",
         "Must be safe kept in physical aspects, say in a cabin"),
        ("SEC-1", sk.ReqKind.SECURITY, "Access control",
         "Users accessibility is censured in all the ways"),
    ]
    for req_id, kind, title, body in reqs:
        p = sk.add_requirement(p, sk.Requirement(id=req_id, kind=kind, title=title, text=body))
    p = sk.add_requirement(
        p,
        sk.Requirement(
            id="BR-1", kind=sk.ReqKind.BEHAVIOURAL, title="Balance enquiry flow",
            text="List of behavioural requirements", trace=("FR-1",),
        ),
    )
    return p


@pytest.fixture(scope="session")
def atm_project() -> sk.Project:
    return build_atm_project()


@pytest.fixture()
def atm_file(tmp_path: Path) -> Path:
    """A scratch copy of the checked-in ATM file."""
    target = tmp_path / "atm.srs"
    target.write_bytes(ATM_FILE.read_bytes())
    return target
