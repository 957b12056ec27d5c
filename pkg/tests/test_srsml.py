import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import srskit as sk
from projgen import random_project

HEADER = "@project: SRS ATM\n@id: 1\n@template: ieee-830\n"


def codes(outcome: sk.ParseOutcome) -> list[str]:
    return [d.code for d in outcome.diagnostics]


def test_header_only_file():
    outcome = sk.parse(HEADER.encode())
    assert outcome.ok
    p = outcome.project
    assert (p.title, p.id, p.template.id) == ("SRS ATM", 1, "ieee-830")
    assert len(p.requirements) == 0


def test_round_trip_of_fresh_project():
    p = sk.new_project("X", 0, "ieee-830")
    assert sk.parse(sk.serialize(p)).project == p


def test_serialize_idempotent_through_parse(atm_project):
    data = sk.serialize(atm_project)
    again = sk.serialize(sk.parse(data).project)
    assert again == data


def test_fresh_project_canonical_shape():
    data = sk.serialize(sk.new_project("X", 0)).decode()
    chunks = data[:-1].split("\n\n")  # trailing newline stripped first
    assert len(chunks) == 6  # header + the five sign-off blocks
    assert chunks[0].split("\n") == ["@project: X", "@id: 0", "@template: ieee-830"]
    assert sum(1 for line in data.splitlines() if line.startswith("[signoff ")) == 5


def test_sections_emitted_in_template_preorder():
    p = sk.new_project("X", 0)
    template = p.template
    leaves = [n.path for n in template.leaves() if n.kind is sk.SectionKind.TEXT]
    rng = random.Random(7)
    shuffled = leaves[:]
    rng.shuffle(shuffled)
    for path in shuffled:
        p = sk.set_section(p, path, sk.SectionBody(f"body of {path}"))
    emitted = [
        line[len("[section ") : -1]
        for line in sk.serialize(p).decode().splitlines()
        if line.startswith("[section ")
    ]
    assert emitted == leaves


def test_crlf_and_comments_accepted():
    raw = HEADER.replace("\n", "\r\n") + "# a comment\r\n\r\n[section introduction.purpose]\r\nwhy\r\n"
    outcome = sk.parse(raw.encode())
    assert outcome.ok
    assert outcome.project.sections["introduction.purpose"].text == "why"
    assert b"#" not in sk.serialize(outcome.project)


def test_duplicate_section_reported_at_second_block():
    raw = HEADER + "\n[section introduction.purpose]\na\n\n[section introduction.purpose]\nb\n"
    outcome = sk.parse(raw.encode())
    assert not outcome.ok
    (diag,) = outcome.diagnostics
    assert diag.code == "E-DUP-SECTION"
    assert diag.line == raw.splitlines().index("[section introduction.purpose]", 5) + 1


def test_parse_collects_multiple_diagnostics():
    raw = HEADER + "\n[section bogus.path]\nx\n\n[req broken]\nkind: functional\ntitle: t\n"
    outcome = sk.parse(raw.encode())
    assert codes(outcome) == ["E-PATH", "E-REQ-ID"]


def test_invalid_utf8():
    outcome = sk.parse(b"@project: X\n@id: 0\n\xff\xfe")
    assert codes(outcome) == ["E-ENC"]
    assert outcome.diagnostics[0].line == 3


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("@id: 1\n@template: ieee-830\n", ["E-HDR"]),  # missing @project
        ("@project: X\n@template: ieee-830\n", ["E-HDR"]),  # missing @id
        ("@project: X\n@id: 1\n", ["E-HDR"]),  # missing @template
        (HEADER + "@project: again\n", ["E-HDR"]),  # duplicate
        (HEADER + "@mystery: x\n", ["E-HDR"]),  # unknown directive
        ("@project: X\n@id: one\n@template: ieee-830\n", ["E-HDR"]),  # bad id
        ("@project: X\n@id: -1\n@template: ieee-830\n", ["E-HDR"]),  # negative id
        ("@project:\n@id: 1\n@template: ieee-830\n", ["E-HDR"]),  # empty title
        ("@project: X\n@id: 1\n@template: nope\n", ["E-HDR"]),  # unknown template
        (HEADER + "@signoff-title:\n", ["E-HDR"]),  # empty override
        (HEADER + "stray prose\n", ["E-HDR"]),  # junk before first block
        (HEADER + "[unknown thing]\n", ["E-HDR"]),  # unknown block kind at top level
        ("", ["E-HDR", "E-HDR", "E-HDR"]),  # empty file
    ],
)
def test_header_errors(raw, expected):
    outcome = sk.parse(raw.encode())
    assert codes(outcome) == expected


@pytest.mark.parametrize(
    "block, code",
    [
        ("[section introduction]\nx", "E-SECTION-KIND"),  # container path
        ("[section introduction.definitions]\nprose", "E-SECTION-KIND"),  # text on structured leaf
        ("[section no.such]\nx", "E-PATH"),
        ("[section introduction.purpose]", "E-SECTION-EMPTY"),
        ("[define ]\nmeaning", "E-DEF-TERM"),
        ("[define A]\nx\n\n[define A]\ny", "E-DUP-DEF"),
        ("[function 01]\nt", "E-FN-NUM"),
        ("[function 1]", "E-FN-TITLE"),
        ("[function 1]\na\nb", "E-FN-TITLE"),
        ("[function 1]\nt\n\n[function 1]\nu", "E-DUP-FN"),
        ("[req bad]\nkind: functional\ntitle: t", "E-REQ-ID"),
        ("[req FR-1]\nkind: functional\ntitle: t\n\n[req FR-1]\nkind: functional\ntitle: u", "E-DUP-REQ"),
        ("[req FR-1]\nkind: martian\ntitle: t", "E-REQ-KIND"),
        ("[req FR-1]\ntitle: t", "E-REQ-META"),  # missing kind
        ("[req FR-1]\nkind: functional", "E-REQ-META"),  # missing title
        ("[req FR-1]\nkind: functional\nkind: safety\ntitle: t", "E-REQ-META"),
        ("[req FR-1]\nkind: functional\ntitle: t\ntrace: FR-2,FR-2", "E-REQ-META"),
        ("[req FR-1]\nkind: functional\ntitle: t\ntrace: FR-1", "E-REQ-META"),
        ("[req FR-1]\nkind: functional\ntitle: t\ntrace: junk", "E-REQ-ID"),
        ("[signoff nobody]\nname: x", "E-ROLE"),
        ("[signoff approved-by]\nname: a\n\n[signoff approved-by]\nname: b", "E-DUP-SIGNOFF"),
        ("[signoff approved-by]\nname: a\ndate: 2024-13-40", "E-DATE"),
        ("[signoff approved-by]\nwhat is this", "E-SIGNOFF-META"),
        ("[template-node x]\nlabel: X\nkind: text", "E-TEMPLATE"),  # nodes with builtin template
    ],
)
def test_block_errors(block, code):
    outcome = sk.parse((HEADER + "\n" + block + "\n").encode())
    assert not outcome.ok
    assert code in codes(outcome), outcome.diagnostics


def test_custom_template_round_trip():
    base = sk.builtin_template("ieee-830")
    custom = sk.customize_template(
        base,
        [
            sk.Rename("introduction.references", "References"),
            sk.Remove("introduction.overview"),
            sk.AddLeaf("introduction", "glossary", "Glossary", mandatory=True),
        ],
    )
    p = sk.new_project("Custom", 3, custom)
    p = sk.set_section(p, "introduction.glossary", sk.SectionBody("terms live here"))
    outcome = sk.parse(sk.serialize(p))
    assert outcome.ok
    assert outcome.project == p
    assert outcome.project.template.id == custom.id


def test_custom_template_errors():
    head = "@project: X\n@id: 1\n@template: custom-feed\n\n"
    outcome = sk.parse((head + "[template-node a]\nlabel: A\nkind: blob\n").encode())
    assert "E-TEMPLATE" in codes(outcome)
    outcome = sk.parse((head + "[template-node a]\nlabel: A\nkind: text\nmandatory: maybe\n").encode())
    assert "E-TEMPLATE" in codes(outcome)
    # a lone text node has no definitions/functions leaves
    outcome = sk.parse((head + "[template-node a]\nlabel: A\nkind: text\n").encode())
    assert "E-TEMPLATE" in codes(outcome)
    # unknown custom template with no nodes at all
    outcome = sk.parse(b"@project: X\n@id: 1\n@template: custom-feed\n")
    assert "E-HDR" in codes(outcome)


@pytest.mark.parametrize(
    "body",
    [
        "[define X]",
        "NA",
        "\\NA",
        "\\",
        "line\n[req FR-1]\nline",
        "# not a comment here",
        "@project: not a directive",
        "\nleading blank line",
        "interior\n\nblank",
        "trailing space \nkept",
        "kind: functional",
    ],
)
def test_escaping_round_trips_hostile_section_text(body):
    p = sk.new_project("X", 0)
    p = sk.set_section(p, "introduction.purpose", sk.SectionBody(body))
    outcome = sk.parse(sk.serialize(p))
    assert outcome.ok
    assert outcome.project.sections["introduction.purpose"] == sk.SectionBody(body)


def test_text_na_is_distinct_from_marker():
    p = sk.new_project("X", 0)
    p = sk.set_section(p, "introduction.purpose", sk.SectionBody("NA"))
    data = sk.serialize(p)
    assert b"\\NA" in data
    parsed = sk.parse(data).project
    assert parsed.sections["introduction.purpose"].text == "NA"
    assert not parsed.sections["introduction.purpose"].is_na


def test_requirement_text_with_metadata_shaped_lines():
    p = sk.new_project("X", 0)
    requirement = sk.Requirement(
        id="FR-1",
        kind=sk.ReqKind.FUNCTIONAL,
        title="Tricky",
        text="kind: not metadata\ntrace: FR-9\n\ntail",
    )
    p = sk.add_requirement(p, requirement)
    parsed = sk.parse(sk.serialize(p)).project
    assert parsed.requirements["FR-1"].text == requirement.text
    assert parsed.requirements["FR-1"].trace == ()


def test_round_trip_seeded_sample():
    for seed in range(50):
        p = random_project(random.Random(seed))
        data = sk.serialize(p)
        outcome = sk.parse(data)
        assert outcome.ok, (seed, outcome.diagnostics[:3])
        assert outcome.project == p, seed
        assert sk.serialize(outcome.project) == data, seed


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=400))
def test_parse_is_total_on_bytes(data):
    outcome = sk.parse(data)
    assert outcome.ok or outcome.diagnostics
    line_count = max(1, data.count(b"\n") + 1)
    for diag in outcome.diagnostics:
        assert diag.line is not None and 1 <= diag.line <= line_count


@settings(max_examples=300, deadline=None)
@given(
    st.lists(
        st.one_of(
            st.sampled_from(
                [
                    "@project: X",
                    "@id: 1",
                    "@template: ieee-830",
                    "[section introduction.purpose]",
                    "[define A]",
                    "[function 1]",
                    "[req FR-1]",
                    "kind: functional",
                    "title: t",
                    "[signoff approved-by]",
                    "name: n",
                    "date: 2020-01-01",
                    "NA",
                    "",
                    "# comment",
                    "text",
                ]
            ),
            st.text(max_size=25),
        ),
        max_size=40,
    )
)
def test_parse_is_total_on_linewise_soup(lines):
    raw = "\n".join(lines).encode("utf-8", errors="ignore")
    outcome = sk.parse(raw)
    if outcome.ok:
        # whatever parsed must re-serialize canonically and round-trip
        data = sk.serialize(outcome.project)
        assert sk.parse(data).project == outcome.project


def test_save_load_round_trip(tmp_path, atm_project):
    target = tmp_path / "p.srs"
    sk.save(atm_project, target)
    outcome = sk.load(target)
    assert outcome.ok and outcome.project == atm_project
    leftovers = [f for f in tmp_path.iterdir() if f.name != "p.srs"]
    assert leftovers == []  # no temp droppings


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        sk.load(tmp_path / "absent.srs")


def test_save_into_missing_directory(tmp_path, atm_project):
    with pytest.raises(OSError):
        sk.save(atm_project, tmp_path / "no" / "dir" / "p.srs")


def test_fixture_file_matches_builder(atm_project):
    from conftest import ATM_FILE

    assert ATM_FILE.read_bytes() == sk.serialize(atm_project)
