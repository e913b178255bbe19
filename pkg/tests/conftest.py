import pytest

from datascorecard import builtin_catalog, evaluate, parse_intake, validate_intake
from datascorecard.fixtures import FIXTURE_NAMES, fixture_text


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def fixture_forms(catalog):
    forms = {}
    for name in FIXTURE_NAMES:
        form, report = validate_intake(parse_intake(fixture_text(name)), catalog)
        assert form is not None, [f.message for f in report.errors()]
        forms[name] = form
    return forms


@pytest.fixture(scope="session")
def fixture_evaluations(catalog, fixture_forms):
    return {name: evaluate(form, catalog) for name, form in fixture_forms.items()}


def top_option(criterion):
    """First option scoring +1."""
    for opt in criterion.options:
        if opt.score == 1:
            return opt
    raise AssertionError(f"{criterion.criterion_id} has no +1 option")


def make_intake_doc(catalog, selections=None, name="Test Dataset", timestamp=None,
                    remarks=None):
    """Intake document with every criterion answered.

    ``selections`` overrides specific criteria: option key, or None for an
    explicit not-applicable. Unlisted criteria get their first +1 option.
    """
    selections = selections or {}
    responses = {}
    for crit in catalog.criteria():
        if crit.criterion_id in selections:
            choice = selections[crit.criterion_id]
            responses[crit.criterion_id] = (
                {"not_applicable": True} if choice is None else {"option": choice}
            )
        else:
            responses[crit.criterion_id] = {"option": top_option(crit).key}
    doc = {
        "catalog": {"id": catalog.catalog_id, "version": catalog.version},
        "meta": {
            "dataset_name": name,
            "description": "A dataset used in tests.",
            "document_available": {aid: True for aid in catalog.area_ids()},
        },
        "responses": responses,
    }
    if remarks:
        doc["meta"]["evaluator_remarks"] = remarks
    if timestamp:
        doc["timestamp"] = timestamp
    return doc


@pytest.fixture
def intake_doc(catalog):
    def build(selections=None, **kwargs):
        return make_intake_doc(catalog, selections, **kwargs)

    return build


def validated_form(catalog, doc):
    import json

    form, report = validate_intake(parse_intake(json.dumps(doc)), catalog)
    assert form is not None, [f.message for f in report.errors()]
    return form


@pytest.fixture
def make_form(catalog, intake_doc):
    def build(selections=None, **kwargs):
        return validated_form(catalog, intake_doc(selections, **kwargs))

    return build
