import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datascorecard import (
    IntakeParseError,
    blank_intake,
    builtin_catalog,
    evaluate,
    intake_to_document,
    load_catalog,
    parse_intake,
    serialize_intake,
    validate_intake,
)
from datascorecard.intake import RawObject

from conftest import make_intake_doc, validated_form


def _codes(report):
    return [f.code for f in report.errors()]


def test_parse_well_formed():
    tree = parse_intake('{"meta": {"dataset_name": "x"}, "responses": {}}')
    assert isinstance(tree, RawObject)
    assert tree.keys() == ["meta", "responses"]


def test_parse_truncated_reports_position():
    with pytest.raises(IntakeParseError) as exc:
        parse_intake('{"meta": {"dataset_name"')
    assert exc.value.position > 0
    assert exc.value.line is not None


def test_parse_rejects_non_object():
    with pytest.raises(IntakeParseError):
        parse_intake("[1, 2, 3]")


def test_duplicate_response_single_error(catalog, intake_doc):
    text = json.dumps(intake_doc())
    # seed a duplicate entry by textual surgery so both entries survive parsing
    needle = '"C114.purpose_statement": {"option": "clear"}'
    assert needle in text
    text = text.replace(needle, needle + ', "C114.purpose_statement": {"option": "vague"}')
    tree = parse_intake(text)
    responses = tree.first("responses")
    assert responses.count_key("C114.purpose_statement") == 2  # both retained
    form, report = validate_intake(tree, catalog)
    assert form is None
    assert _codes(report) == ["duplicate_response"]
    assert report.errors()[0].path == "C114.purpose_statement"


def test_blank_template_yields_57_missing(catalog):
    template = blank_intake(catalog).to_json()
    form, report = validate_intake(parse_intake(template), catalog)
    assert form is None
    assert len(report.findings) == 57
    assert all(f.code == "missing_response" for f in report.errors())


def test_label_selection_accepted(catalog, intake_doc):
    doc = intake_doc()
    doc["responses"]["C112.informed_consent"] = {"option": "Consent obtained"}
    form = validated_form(catalog, doc)
    assert form.responses["C112.informed_consent"].option_key == "obtained"
    evaluation = evaluate(form, catalog)
    finding = [f for f in evaluation.area("C112").findings
               if f.criterion_id == "C112.informed_consent"][0]
    assert finding.score == 1


def test_label_matching_normalizes_whitespace(catalog, intake_doc):
    doc = intake_doc()
    doc["responses"]["C112.informed_consent"] = {"option": "  Consent   obtained "}
    form = validated_form(catalog, doc)
    assert form.responses["C112.informed_consent"].option_key == "obtained"


def test_ambiguous_selection_is_error():
    # one option's key collides with another option's label
    doc = {
        "catalog_id": "custom", "version": "v1",
        "areas": [{
            "area_id": "X1", "title": "Example",
            "criteria": [{
                "criterion_id": "X1.thing", "name": "Thing", "description": "d",
                "applicability": "always", "special_role": "none", "group": None,
                "options": [
                    {"key": "good", "label": "bad", "score": 1, "recommendation_key": None},
                    {"key": "bad", "label": "worse", "score": -1, "recommendation_key": "X1.thing"},
                ],
            }],
        }],
    }
    catalog = load_catalog(json.dumps(doc))
    intake = {
        "catalog": {"id": "custom", "version": "v1"},
        "meta": {"dataset_name": "x", "description": "", "document_available": {"X1": True}},
        "responses": {"X1.thing": {"option": "bad"}},
    }
    form, report = validate_intake(parse_intake(json.dumps(intake)), catalog)
    assert form is None
    assert _codes(report) == ["ambiguous_option"]


def test_not_applicable_allowed_only_on_sampling(catalog, intake_doc):
    doc = intake_doc({"C114.purpose_statement": None})
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert _codes(report) == ["not_applicable_disallowed"]
    assert "always applicable" in report.errors()[0].message

    form = validated_form(catalog, intake_doc({"C112.sampling_strategy": None}))
    assert form.responses["C112.sampling_strategy"].not_applicable


def test_not_applicable_on_preprocessing_needs_raw_status(catalog, intake_doc):
    # with preprocessing applied, siblings cannot be not-applicable
    doc = intake_doc({"C115.steps_applied": None})
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert _codes(report) == ["not_applicable_disallowed"]

    # with raw data, they can
    selections = {"C115.preprocessing_status": "raw"}
    for crit in catalog.area("C115").criteria[1:]:
        selections[crit.criterion_id] = None
    form = validated_form(catalog, intake_doc(selections))
    assert form.responses["C115.retention"].not_applicable


def test_unknown_criterion_and_option(catalog, intake_doc):
    doc = intake_doc()
    doc["responses"]["C119.bogus"] = {"option": "x"}
    doc["responses"]["C114.purpose_statement"] = {"option": "crystal"}
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert sorted(_codes(report)) == ["unknown_criterion", "unknown_option"]


def test_missing_document_flag(catalog, intake_doc):
    doc = intake_doc()
    del doc["meta"]["document_available"]["C113"]
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert _codes(report) == ["missing_document_flag"]
    assert report.errors()[0].path.endswith("C113")


def test_version_mismatch(catalog, intake_doc):
    doc = intake_doc()
    doc["catalog"]["version"] = "paper-v0"
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert "version_mismatch" in _codes(report)


def test_unknown_extra_fields_warn_not_error(catalog, intake_doc):
    doc = intake_doc()
    doc["attachments"] = ["x.pdf"]
    doc["meta"]["license"] = "CC0"
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is not None
    assert len(report.warnings()) == 2
    assert not report.errors()


def test_empty_dataset_name_is_error(catalog, intake_doc):
    doc = intake_doc()
    doc["meta"]["dataset_name"] = "   "
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert _codes(report) == ["missing_field"]


def test_error_completeness_for_seeded_defects(catalog, intake_doc):
    doc = intake_doc()
    seeded = {
        "C111.doi": {"option": "nope"},            # unknown option
        "C112.time": {"option": None},             # missing response
        "C113.sensitivity": {"not_applicable": True},  # disallowed n/a
    }
    doc["responses"].update(seeded)
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is None
    assert len(report.errors()) >= 3
    paths = {f.path for f in report.errors()}
    assert set(seeded) <= paths


def test_validation_totality(catalog):
    trees = [
        "{}",
        '{"responses": 4}',
        '{"catalog": null, "meta": [], "responses": {}}',
        '{"catalog": {"id": "dataset-development", "version": "paper-v1"}}',
    ]
    for text in trees:
        form, report = validate_intake(parse_intake(text), catalog)
        assert (form is None) != (not report.errors())


_json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=20),
    lambda children: st.lists(children, max_size=3)
    | st.dictionaries(st.text(max_size=10), children, max_size=3),
    max_leaves=10,
)


@given(st.dictionaries(st.sampled_from(
    ["catalog", "meta", "responses", "timestamp", "junk"]), _json_values, max_size=5))
@settings(max_examples=200, deadline=None)
def test_validation_totality_random_documents(doc):
    catalog = builtin_catalog()
    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert (form is None) != (not report.errors())


def test_serialize_revalidate_idempotent(catalog, make_form):
    form = make_form({"C112.sampling_strategy": None,
                      "C113.data_quality": "limited"},
                     timestamp="2025-06-01T00:00:00Z")
    text = serialize_intake(form, catalog)
    form2, report = validate_intake(parse_intake(text), catalog)
    assert not report.findings
    assert form2 == form
    assert serialize_intake(form2, catalog) == text


def test_canonical_document_shape(catalog, make_form):
    form = make_form({"C112.sampling_strategy": None})
    doc = intake_to_document(form, catalog)
    assert doc["responses"]["C112.sampling_strategy"] == {"not_applicable": True}
    assert doc["responses"]["C111.dataset_name"] == {"option": "provided"}
    assert list(doc["responses"]) == list(catalog.criterion_ids())


def test_template_choices_do_not_warn(catalog):
    # blank templates carry a "choices" hint per slot; filling one in must
    # validate cleanly with zero findings
    template = blank_intake(catalog).to_document()
    filled = make_intake_doc(catalog)
    for cid, entry in template["responses"].items():
        entry["option"] = filled["responses"][cid]["option"]
    template["meta"]["dataset_name"] = "Filled"
    form, report = validate_intake(parse_intake(json.dumps(template)), catalog)
    assert form is not None
    assert not report.findings
