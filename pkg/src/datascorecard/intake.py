"""Intake document parsing and validation against a rubric catalog.

Parsing is purely structural and keeps duplicate object keys, so the
validator can report them instead of silently dropping data. Validation is
total: every parsed tree yields either a well-formed IntakeForm or a report
with at least one error, never both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import IntakeParseError
from .rubric import CONDITIONAL, CriterionSpec, RubricCatalog

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

#: Reserved evaluator_remarks key holding free text for the overall assessment.
OVERALL_REMARK_KEY = "overall"

# Response-object fields the validator understands. "choices" is the dropdown
# hint written by blank templates; it carries no answer.
_RESPONSE_FIELDS = {"option", "not_applicable", "choices"}
_TOP_LEVEL_FIELDS = {"catalog", "meta", "responses", "timestamp"}
_META_FIELDS = {"dataset_name", "description", "owner_contact", "dataset_version",
                "document_available", "evaluator_remarks"}


class RawObject(list):
    """A JSON object decoded as an ordered (key, value) pair list.

    Plain dicts cannot represent duplicate keys; intakes are decoded into
    this shape so duplicates survive until validation.
    """

    def keys(self):
        return [key for key, _ in self]

    def first(self, key, default=None):
        for k, value in self:
            if k == key:
                return value
        return default

    def count_key(self, key) -> int:
        return sum(1 for k, _ in self if k == key)


def parse_intake(text: str) -> RawObject:
    """Structural parse of an intake document; no rubric knowledge.

    Raises IntakeParseError with line/column/offset for malformed JSON.
    """
    try:
        doc = json.loads(text, object_pairs_hook=RawObject)
    except json.JSONDecodeError as exc:
        raise IntakeParseError(exc.msg, line=exc.lineno, column=exc.colno,
                               position=exc.pos) from exc
    if not isinstance(doc, RawObject):
        raise IntakeParseError("intake document must be a JSON object", line=1,
                               column=1, position=0)
    return doc


@dataclass(frozen=True)
class DatasetMeta:
    """Dataset-level metadata accompanying an intake."""

    dataset_name: str
    description: str = ""
    owner_contact: str | None = None
    dataset_version: str | None = None
    document_available: dict = field(default_factory=dict)
    evaluator_remarks: dict = field(default_factory=dict)

    def to_document(self) -> dict:
        doc = {"dataset_name": self.dataset_name, "description": self.description}
        if self.owner_contact is not None:
            doc["owner_contact"] = self.owner_contact
        if self.dataset_version is not None:
            doc["dataset_version"] = self.dataset_version
        doc["document_available"] = dict(self.document_available)
        if self.evaluator_remarks:
            doc["evaluator_remarks"] = dict(self.evaluator_remarks)
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> "DatasetMeta":
        return cls(
            dataset_name=doc["dataset_name"],
            description=doc.get("description", ""),
            owner_contact=doc.get("owner_contact"),
            dataset_version=doc.get("dataset_version"),
            document_available=dict(doc.get("document_available", {})),
            evaluator_remarks=dict(doc.get("evaluator_remarks", {})),
        )


@dataclass(frozen=True)
class Response:
    """One answered criterion: an option key, or the not-applicable sentinel."""

    criterion_id: str
    option_key: str | None = None

    @property
    def not_applicable(self) -> bool:
        return self.option_key is None


@dataclass(frozen=True)
class IntakeForm:
    """A validated intake: exactly one response per catalog criterion."""

    catalog_id: str
    catalog_version: str
    meta: DatasetMeta
    responses: dict  # criterion_id -> Response, in catalog order
    timestamp: str | None = None


@dataclass(frozen=True)
class Finding:
    """One validation finding; ``path`` names the criterion or meta field."""

    severity: str
    code: str
    path: str
    message: str

    def to_document(self) -> dict:
        return {"severity": self.severity, "code": self.code,
                "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    findings: list = field(default_factory=list)

    def add_error(self, code, path, message):
        self.findings.append(Finding(SEVERITY_ERROR, code, path, message))

    def add_warning(self, code, path, message):
        self.findings.append(Finding(SEVERITY_WARNING, code, path, message))

    def errors(self) -> list:
        return [f for f in self.findings if f.severity == SEVERITY_ERROR]

    def warnings(self) -> list:
        return [f for f in self.findings if f.severity == SEVERITY_WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors()

    def to_document(self) -> dict:
        return {"findings": [f.to_document() for f in self.findings]}


def _as_raw_object(value):
    if isinstance(value, RawObject):
        return value
    if isinstance(value, dict):
        return RawObject(value.items())
    return None


def _resolve_option(criterion: CriterionSpec, selection: str):
    """Match a selection string to an option by key, then by label.

    Labels are compared after whitespace normalization. Returns
    (option, error_code): exactly one of the pair is None.
    """
    normalized = " ".join(selection.split())
    matches = []
    for opt in criterion.options:
        if opt.key == selection or " ".join(opt.label.split()) == normalized:
            matches.append(opt)
    if not matches:
        return None, "unknown_option"
    if len(matches) > 1:
        return None, "ambiguous_option"
    return matches[0], None


def validate_intake(raw, catalog: RubricCatalog):
    """Validate a parsed intake tree against a catalog.

    Returns ``(form, report)``: ``form`` is an IntakeForm when the report
    holds no errors and None otherwise.
    """
    report = ValidationReport()
    tree = _as_raw_object(raw)
    if tree is None:
        report.add_error("invalid_document", "$", "intake document must be a JSON object")
        return None, report

    for key in tree.keys():
        if key not in _TOP_LEVEL_FIELDS:
            report.add_warning("unknown_field", key, f"unknown top-level field {key!r}")

    _check_catalog_ref(tree, catalog, report)
    meta = _check_meta(tree, catalog, report)
    timestamp = tree.first("timestamp")
    if timestamp is not None and not isinstance(timestamp, str):
        report.add_error("invalid_field", "timestamp", "timestamp must be a string")
        timestamp = None

    responses = _check_responses(tree, catalog, report)

    if not report.ok:
        return None, report
    form = IntakeForm(
        catalog_id=catalog.catalog_id,
        catalog_version=catalog.version,
        meta=meta,
        responses=responses,
        timestamp=timestamp,
    )
    return form, report


def _check_catalog_ref(tree, catalog, report):
    ref = _as_raw_object(tree.first("catalog"))
    if ref is None:
        report.add_error("missing_field", "catalog", "missing catalog reference section")
        return
    ref_id = ref.first("id")
    ref_version = ref.first("version")
    if not isinstance(ref_id, str) or not isinstance(ref_version, str):
        report.add_error("invalid_field", "catalog", "catalog reference needs string id and version")
        return
    if not catalog.same_reference(ref_id, ref_version):
        report.add_error(
            "version_mismatch", "catalog",
            f"intake references catalog {ref_id} {ref_version}, "
            f"active catalog is {catalog.catalog_id} {catalog.version}",
        )


def _check_meta(tree, catalog, report) -> DatasetMeta:
    meta_tree = _as_raw_object(tree.first("meta"))
    if meta_tree is None:
        report.add_error("missing_field", "meta", "missing meta section")
        meta_tree = RawObject()

    for key in meta_tree.keys():
        if key not in _META_FIELDS:
            report.add_warning("unknown_field", f"meta.{key}", f"unknown meta field {key!r}")

    name = meta_tree.first("dataset_name")
    if not isinstance(name, str) or not name.strip():
        report.add_error("missing_field", "meta.dataset_name", "dataset_name must be a non-empty string")
        name = ""

    description = meta_tree.first("description")
    if description is None:
        report.add_error("missing_field", "meta.description", "missing description field")
        description = ""
    elif not isinstance(description, str):
        report.add_error("invalid_field", "meta.description", "description must be a string")
        description = ""

    owner = _optional_str(meta_tree, "owner_contact", report)
    version = _optional_str(meta_tree, "dataset_version", report)

    available = {}
    avail_tree = _as_raw_object(meta_tree.first("document_available"))
    if avail_tree is None:
        for area_id in catalog.area_ids():
            report.add_error("missing_document_flag", f"meta.document_available.{area_id}",
                             f"missing document_available flag for area {area_id}")
    else:
        for key, value in avail_tree:
            if key not in catalog.area_ids():
                report.add_warning("unknown_document_flag", f"meta.document_available.{key}",
                                   f"document_available names unknown area {key!r}")
        for area_id in catalog.area_ids():
            value = avail_tree.first(area_id)
            if value is None and avail_tree.count_key(area_id) == 0:
                report.add_error("missing_document_flag", f"meta.document_available.{area_id}",
                                 f"missing document_available flag for area {area_id}")
            elif not isinstance(value, bool):
                report.add_error("invalid_field", f"meta.document_available.{area_id}",
                                 f"document_available.{area_id} must be a boolean")
            else:
                available[area_id] = value

    remarks = {}
    remarks_tree = _as_raw_object(meta_tree.first("evaluator_remarks"))
    if meta_tree.first("evaluator_remarks") is not None and remarks_tree is None:
        report.add_error("invalid_field", "meta.evaluator_remarks",
                         "evaluator_remarks must be an object")
    elif remarks_tree is not None:
        valid_keys = set(catalog.area_ids()) | {OVERALL_REMARK_KEY}
        for key, value in remarks_tree:
            if key not in valid_keys:
                report.add_warning("unknown_field", f"meta.evaluator_remarks.{key}",
                                   f"evaluator_remarks names unknown area {key!r}")
                continue
            if not isinstance(value, str):
                report.add_error("invalid_field", f"meta.evaluator_remarks.{key}",
                                 f"evaluator_remarks.{key} must be a string")
                continue
            remarks[key] = value

    ordered_remarks = {}
    for key in list(catalog.area_ids()) + [OVERALL_REMARK_KEY]:
        if key in remarks:
            ordered_remarks[key] = remarks[key]

    return DatasetMeta(
        dataset_name=name,
        description=description,
        owner_contact=owner,
        dataset_version=version,
        document_available=available,
        evaluator_remarks=ordered_remarks,
    )


def _optional_str(meta_tree, key, report):
    value = meta_tree.first(key)
    if value is None:
        return None
    if not isinstance(value, str):
        report.add_error("invalid_field", f"meta.{key}", f"{key} must be a string")
        return None
    return value or None


def _check_responses(tree, catalog, report) -> dict:
    responses_tree = _as_raw_object(tree.first("responses"))
    if responses_tree is None:
        report.add_error("missing_field", "responses", "missing responses section")
        responses_tree = RawObject()

    known_ids = set(catalog.criterion_ids())
    reported = set()
    for key in responses_tree.keys():
        if key in reported:
            continue
        if key not in known_ids:
            reported.add(key)
            report.add_error("unknown_criterion", key, f"unknown criterion {key!r}")
        elif responses_tree.count_key(key) > 1:
            reported.add(key)
            report.add_error("duplicate_response", key,
                             f"criterion {key} answered {responses_tree.count_key(key)} times")

    # First pass: resolve each selection so the not-applicable rule can see
    # the preprocessing-status answer of an area.
    resolved = {}
    for crit in catalog.criteria():
        cid = crit.criterion_id
        entry = responses_tree.first(cid)
        if entry is None and responses_tree.count_key(cid) == 0:
            report.add_error("missing_response", cid, f"no response for {cid}")
            continue
        entry_tree = _as_raw_object(entry)
        if entry_tree is None:
            report.add_error("invalid_field", cid, f"response for {cid} must be an object")
            continue
        for key in entry_tree.keys():
            if key not in _RESPONSE_FIELDS:
                report.add_warning("unknown_field", cid,
                                   f"response for {cid} has unknown field {key!r}")
        not_applicable = entry_tree.first("not_applicable")
        selection = entry_tree.first("option")
        if not_applicable is True and selection is not None:
            report.add_error("invalid_field", cid,
                             f"response for {cid} sets both option and not_applicable")
            continue
        if not_applicable is True:
            resolved[cid] = (crit, None)
            continue
        if selection is None:
            report.add_error("missing_response", cid, f"no response for {cid}")
            continue
        if not isinstance(selection, str):
            report.add_error("invalid_field", cid, f"option for {cid} must be a string")
            continue
        option, error = _resolve_option(crit, selection)
        if error == "unknown_option":
            report.add_error(error, cid, f"{cid} has no option matching {selection!r}")
        elif error == "ambiguous_option":
            report.add_error(error, cid, f"selection {selection!r} is ambiguous for {cid}")
        else:
            resolved[cid] = (crit, option)

    # Second pass: reject not-applicable where the rubric does not allow it.
    responses = {}
    for area in catalog.areas:
        raw_ok = _raw_data_selected(area, resolved)
        for crit in area.criteria:
            cid = crit.criterion_id
            if cid not in resolved:
                continue
            _, option = resolved[cid]
            if option is None and not _allows_not_applicable(area, crit, raw_ok):
                report.add_error("not_applicable_disallowed", cid,
                                 f"criterion {cid} is always applicable")
                continue
            responses[cid] = Response(cid, option.key if option else None)
    return responses


def _raw_data_selected(area, resolved):
    """Whether the area's preprocessing-status answer marks the data as raw.

    Unresolved status answers count as raw so a missing status response does
    not cascade into not-applicable errors on its siblings.
    """
    status = area.status_criterion()
    if status is None:
        return False
    if status.criterion_id not in resolved:
        return True
    _, option = resolved[status.criterion_id]
    return option is not None and option.score == -1


def _allows_not_applicable(area, crit, raw_ok) -> bool:
    """Conditional criteria accept an explicit not-applicable; inside an area
    with a preprocessing-status criterion, only while the data is raw."""
    if crit.applicability != CONDITIONAL:
        return False
    if area.status_criterion() is None:
        return True
    return raw_ok


# ---------------------------------------------------------------------------
# Canonical document form
# ---------------------------------------------------------------------------

def intake_to_document(form: IntakeForm, catalog: RubricCatalog) -> dict:
    """Canonical intake document for a validated form, in catalog order."""
    responses = {}
    for crit in catalog.criteria():
        response = form.responses[crit.criterion_id]
        if response.not_applicable:
            responses[crit.criterion_id] = {"not_applicable": True}
        else:
            responses[crit.criterion_id] = {"option": response.option_key}
    doc = {
        "catalog": {"id": form.catalog_id, "version": form.catalog_version},
        "meta": form.meta.to_document(),
        "responses": responses,
    }
    if form.timestamp is not None:
        doc["timestamp"] = form.timestamp
    return doc


def serialize_intake(form: IntakeForm, catalog: RubricCatalog) -> str:
    return json.dumps(intake_to_document(form, catalog), indent=2, ensure_ascii=False) + "\n"
