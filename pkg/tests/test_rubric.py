import json

import pytest

from datascorecard import (
    RubricIntegrityError,
    RubricParseError,
    blank_intake,
    builtin_catalog,
    load_catalog,
    serialize_catalog,
    validate_catalog,
)
from datascorecard.rubric import ALWAYS, CONDITIONAL, ROLE_PREPROCESSING_STATUS


def test_area_layout(catalog):
    assert catalog.area_ids() == ("C111", "C112", "C113", "C114", "C115")
    assert [len(a.criteria) for a in catalog.areas] == [17, 11, 12, 7, 10]
    assert len(list(catalog.criteria())) == 57
    ids = catalog.criterion_ids()
    assert len(set(ids)) == len(ids)


def test_catalog_reference(catalog):
    assert catalog.catalog_id == "dataset-development"
    assert catalog.version == "paper-v1"


def test_c111_group_headers(catalog):
    groups = catalog.area("C111").groups()
    assert groups == ("Dataset Information", "Dataset Files", "Dataset Attributes")
    # group headers are presentation only and appear nowhere else
    for area in catalog.areas[1:]:
        assert area.groups() == ()


@pytest.mark.parametrize("criterion_id, expected", [
    ("C111.dataset_name", [("Provided", 1), ("Not provided", -1)]),
    ("C111.file_name", [("All files listed", 1), ("Some files listed", 0),
                        ("No files listed", -1)]),
    ("C112.dataset_source", [("Diverse and reliable sources, well-documented", 1),
                             ("Limited diversity and moderate documentation", 0),
                             ("Not sure and poorly documented", -1)]),
    ("C112.informed_consent", [("Consent obtained", 1), ("Consent not obtained", -1)]),
    ("C113.missing_information", [("All instances are complete", 1),
                                  ("Present in some instances", -1),
                                  ("Unclear if any information is missing", 0)]),
    ("C114.purpose_statement", [("Clearly stated purpose", 1),
                                ("Vaguely stated purpose", 0),
                                ("No stated purpose", -1)]),
    ("C115.preprocessing_status", [("preprocessing has been applied", 1),
                                   ("The data remains in its original, unprocessed form", -1)]),
    ("C115.alignment", [("preprocessing fully aligns with analysis goals", 1),
                        ("Partially aligned, with room for improvement", 0)]),
    ("C115.verification", [("Comprehensive verification processes", 1),
                           ("Limited verification; limited preprocessing steps verified", 0),
                           ("No verification mechanism is provided", -1)]),
])
def test_full_option_rows(catalog, criterion_id, expected):
    crit = catalog.criterion(criterion_id)
    assert [(o.label, o.score) for o in crit.options] == expected


def test_dataset_structure_scores(catalog):
    crit = catalog.criterion("C113.dataset_structure")
    scores = [o.score for o in crit.options]
    assert scores.count(1) == 2
    assert scores.count(0) == 1
    assert -1 not in scores


# Parenthesized score multisets of every rubric row.
_SCORE_MULTISETS = {
    "C111": {
        "dataset_name": [1, -1], "dataset_description": [1, 0, -1],
        "dataset_provider": [1, -1], "doi": [1, -1], "created_date": [1, -1],
        "version": [1, -1], "file_name": [1, 0, -1], "file_description": [1, -1],
        "file_source": [1, 0, -1], "attribute_name": [1, 0, -1],
        "parent_file_name": [1, 0, -1], "attribute_description": [1, 0, -1],
        "data_type": [1, 0, -1], "allowed_value": [1, 0, -1],
        "missing_value": [1, -1], "example_value": [1, 0, -1], "format": [1, 0, -1],
    },
    "C112": {
        "dataset_source": [1, 0, -1], "collection_techniques": [1, 0, -1],
        "sampling_strategy": [1, 0, -1], "involvement": [1, 0, -1],
        "time": [1, 0, -1], "notification": [1, -1], "informed_consent": [1, -1],
        "consent_revocation": [1, 0, -1], "ethical_review": [1, 0, -1],
        "limitations": [1, 0, -1], "feedback": [1, 0, -1],
    },
    "C113": {
        "number_of_instances": [1, 0, -1], "relationship": [1, 0, -1],
        "type": [1, 0, -1], "presence_of_label": [1, 0, -1],
        "dataset_structure": [1, 1, 0], "dependencies": [1, 1, -1],
        "missing_information": [1, -1, 0], "data_quality": [1, 0, -1],
        "subpopulation": [1, 1, -1], "individual_identification": [1, 1, -1],
        "sensitivity": [1, 1, -1], "confidentiality": [1, 1, -1],
    },
    "C114": {
        "purpose_statement": [1, 0, -1], "research_gap_addressed": [1, 0, -1],
        "intended_use_cases": [1, 0, -1], "development_team": [1, 0, -1],
        "backing_organization": [1, 0, -1], "funding_sources": [1, 0, -1],
        "potential_impact": [1, 0, -1],
    },
    "C115": {
        "preprocessing_status": [1, -1], "steps_applied": [1, 0, -1],
        "software_availability": [1, 0, -1], "consistency": [1, -1],
        "alignment": [1, 0], "impact_on_data_quality": [1, 0, -1],
        "impact_on_data_size": [1, 0, -1], "verification": [1, 0, -1],
        "retention": [1, -1], "documentation_clarity": [1, 0, -1],
    },
}


def test_score_multisets_match_rubric_rows(catalog):
    for area in catalog.areas:
        expected = _SCORE_MULTISETS[area.area_id]
        assert {c.local_id for c in area.criteria} == set(expected)
        for crit in area.criteria:
            got = sorted(o.score for o in crit.options)
            assert got == sorted(expected[crit.local_id]), crit.criterion_id


def test_catalog_integrity_invariants(catalog):
    validate_catalog(catalog)  # must not raise
    for crit in catalog.criteria():
        assert len(crit.options) >= 2
        assert all(o.score in (-1, 0, 1) for o in crit.options)
        assert any(o.score == 1 for o in crit.options)
        labels = [o.label for o in crit.options]
        assert len(set(labels)) == len(labels)
        for opt in crit.options:
            if opt.score < 1:
                assert opt.recommendation_key


def test_applicability_flags(catalog):
    conditional = [c.criterion_id for c in catalog.criteria()
                   if c.applicability == CONDITIONAL]
    assert "C112.sampling_strategy" in conditional
    c115_conditional = [cid for cid in conditional if cid.startswith("C115.")]
    assert len(c115_conditional) == 9
    assert "C115.preprocessing_status" not in conditional
    assert len(conditional) == 10
    assert all(c.applicability == ALWAYS for c in catalog.area("C114").criteria)


def test_special_role_exactly_once(catalog):
    marked = [c.criterion_id for c in catalog.criteria()
              if c.special_role == ROLE_PREPROCESSING_STATUS]
    assert marked == ["C115.preprocessing_status"]


def test_builtin_is_deterministic():
    assert builtin_catalog() == builtin_catalog()
    assert serialize_catalog(builtin_catalog()) == serialize_catalog(builtin_catalog())


def test_serialize_load_round_trip(catalog):
    assert load_catalog(serialize_catalog(catalog)) == catalog


def _custom_catalog_doc(options):
    return {
        "catalog_id": "custom", "version": "v1",
        "areas": [{
            "area_id": "X1", "title": "Example",
            "criteria": [{
                "criterion_id": "X1.thing", "name": "Thing",
                "description": "About the thing",
                "applicability": "always", "special_role": "none", "group": None,
                "options": options,
            }],
        }],
    }


def test_load_rejects_missing_top_option():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "A", "score": 0, "recommendation_key": "X1.thing"},
        {"key": "b", "label": "B", "score": -1, "recommendation_key": "X1.thing"},
    ])
    with pytest.raises(RubricIntegrityError, match="no \\+1 option"):
        load_catalog(json.dumps(doc))


def test_load_rejects_out_of_range_score():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "A", "score": 2, "recommendation_key": None},
        {"key": "b", "label": "B", "score": 1, "recommendation_key": None},
    ])
    with pytest.raises(RubricIntegrityError, match="X1.thing"):
        load_catalog(json.dumps(doc))


def test_load_rejects_single_option():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "A", "score": 1, "recommendation_key": None},
    ])
    with pytest.raises(RubricIntegrityError, match="fewer than 2"):
        load_catalog(json.dumps(doc))


def test_load_rejects_duplicate_labels():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "Same", "score": 1, "recommendation_key": None},
        {"key": "b", "label": "Same", "score": 0, "recommendation_key": "X1.thing"},
    ])
    with pytest.raises(RubricIntegrityError, match="duplicate option label"):
        load_catalog(json.dumps(doc))


def test_load_rejects_duplicate_criterion_ids():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "A", "score": 1, "recommendation_key": None},
        {"key": "b", "label": "B", "score": -1, "recommendation_key": "X1.thing"},
    ])
    doc["areas"][0]["criteria"].append(dict(doc["areas"][0]["criteria"][0]))
    with pytest.raises(RubricIntegrityError, match="duplicate criterion id"):
        load_catalog(json.dumps(doc))


def test_load_rejects_malformed_text():
    with pytest.raises(RubricParseError, match="line"):
        load_catalog("{ not json")
    with pytest.raises(RubricParseError):
        load_catalog(json.dumps({"catalog_id": "x"}))


def test_blank_intake_slots(catalog):
    template = blank_intake(catalog)
    assert len(template.slots) == 57
    assert [s.criterion_id for s in template.slots] == list(catalog.criterion_ids())
    doc = template.to_document()
    assert len(doc["responses"]) == 57
    assert all(entry["option"] is None for entry in doc["responses"].values())
    consent = doc["responses"]["C112.informed_consent"]["choices"]
    assert consent == {"obtained": "Consent obtained", "not_obtained": "Consent not obtained"}


def test_blank_intake_custom_catalog():
    doc = _custom_catalog_doc([
        {"key": "a", "label": "A", "score": 1, "recommendation_key": None},
        {"key": "b", "label": "B", "score": -1, "recommendation_key": "X1.thing"},
    ])
    template = blank_intake(load_catalog(json.dumps(doc)))
    assert len(template.slots) == 1
    assert template.slots[0].criterion_id == "X1.thing"
