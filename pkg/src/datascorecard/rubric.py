"""Rubric catalog model: assessment areas, criteria, and scored options.

The built-in catalog covers the five dataset-development assessment areas
(data dictionary, collection process, composition, motivation, preprocessing)
with 57 criteria in total. Every option carries a score in {-1, 0, +1};
scores are aggregated per area by the scoring module.

Catalogs are immutable after construction and safe to share between threads.
External catalogs can be loaded from JSON documents in the same format the
``rubric`` CLI command emits (see ``serialize_catalog``/``load_catalog``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import RubricIntegrityError, RubricParseError

ALWAYS = "always"
CONDITIONAL = "conditional"
APPLICABILITIES = (ALWAYS, CONDITIONAL)

ROLE_NONE = "none"
ROLE_PREPROCESSING_STATUS = "preprocessing_status"
SPECIAL_ROLES = (ROLE_NONE, ROLE_PREPROCESSING_STATUS)

VALID_SCORES = (-1, 0, 1)

#: Version string of the built-in catalog. Evaluations record it so a stored
#: result can always be traced to the rubric that produced it.
BUILTIN_CATALOG_ID = "dataset-development"
BUILTIN_VERSION = "paper-v1"


@dataclass(frozen=True)
class OptionSpec:
    """One selectable answer for a criterion.

    ``recommendation_key`` links into the reporting module's recommendation
    catalog and is required for every option scoring below +1.
    """

    key: str
    label: str
    score: int
    recommendation_key: str | None = None


@dataclass(frozen=True)
class CriterionSpec:
    """A single evaluated aspect of an assessment area.

    ``criterion_id`` is area-scoped (for example ``C112.informed_consent``).
    ``applicability`` is ``conditional`` for criteria that may legitimately
    receive no answer; ``special_role`` marks the preprocessing-status
    criterion that drives the raw-data short-circuit.
    """

    criterion_id: str
    name: str
    description: str
    options: tuple[OptionSpec, ...]
    applicability: str = ALWAYS
    special_role: str = ROLE_NONE
    group: str | None = None

    @property
    def local_id(self) -> str:
        return self.criterion_id.split(".", 1)[1]

    def option(self, key: str) -> OptionSpec:
        for opt in self.options:
            if opt.key == key:
                return opt
        raise KeyError(f"{self.criterion_id} has no option {key!r}")

    def option_keys(self) -> tuple[str, ...]:
        return tuple(opt.key for opt in self.options)


@dataclass(frozen=True)
class AreaSpec:
    """An assessment area: an ordered, non-empty list of criteria."""

    area_id: str
    title: str
    criteria: tuple[CriterionSpec, ...]

    def criterion(self, criterion_id: str) -> CriterionSpec:
        for crit in self.criteria:
            if crit.criterion_id == criterion_id:
                return crit
        raise KeyError(f"area {self.area_id} has no criterion {criterion_id!r}")

    def status_criterion(self) -> CriterionSpec | None:
        """The preprocessing-status criterion of this area, if any."""
        for crit in self.criteria:
            if crit.special_role == ROLE_PREPROCESSING_STATUS:
                return crit
        return None

    def groups(self) -> tuple[str, ...]:
        """Distinct group headers in first-appearance order."""
        seen = []
        for crit in self.criteria:
            if crit.group and crit.group not in seen:
                seen.append(crit.group)
        return tuple(seen)


@dataclass(frozen=True)
class RubricCatalog:
    """A versioned, immutable set of assessment areas."""

    catalog_id: str
    version: str
    areas: tuple[AreaSpec, ...]

    def area(self, area_id: str) -> AreaSpec:
        for area in self.areas:
            if area.area_id == area_id:
                return area
        raise KeyError(f"catalog has no area {area_id!r}")

    def area_ids(self) -> tuple[str, ...]:
        return tuple(area.area_id for area in self.areas)

    def criteria(self):
        """All criteria in catalog order."""
        for area in self.areas:
            yield from area.criteria

    def criterion(self, criterion_id: str) -> CriterionSpec:
        for crit in self.criteria():
            if crit.criterion_id == criterion_id:
                return crit
        raise KeyError(f"catalog has no criterion {criterion_id!r}")

    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(crit.criterion_id for crit in self.criteria())

    def recommendation_keys(self) -> tuple[str, ...]:
        """Distinct recommendation keys referenced anywhere in the catalog."""
        seen = []
        for crit in self.criteria():
            for opt in crit.options:
                if opt.recommendation_key and opt.recommendation_key not in seen:
                    seen.append(opt.recommendation_key)
        return tuple(seen)

    def same_reference(self, catalog_id: str, version: str) -> bool:
        return self.catalog_id == catalog_id and self.version == version


# ---------------------------------------------------------------------------
# Built-in catalog
# ---------------------------------------------------------------------------

def _crit(area_id, local_id, name, description, options, *, applicability=ALWAYS,
          special_role=ROLE_NONE, group=None) -> CriterionSpec:
    criterion_id = f"{area_id}.{local_id}"
    specs = tuple(
        OptionSpec(key, label, score, criterion_id if score < 1 else None)
        for key, label, score in options
    )
    return CriterionSpec(criterion_id, name, description, specs,
                         applicability, special_role, group)


def _c111() -> AreaSpec:
    a = "C111"
    info, files, attrs = "Dataset Information", "Dataset Files", "Dataset Attributes"
    criteria = (
        _crit(a, "dataset_name", "Dataset Name",
              "Indicates whether the official dataset name is provided in the data dictionary",
              [("provided", "Provided", 1),
               ("not_provided", "Not provided", -1)], group=info),
        _crit(a, "dataset_description", "Description",
              "Describes whether a detailed dataset description is included in the data dictionary",
              [("detailed", "Detailed description provided", 1),
               ("limited", "Limited description provided", 0),
               ("none", "No description provided", -1)], group=info),
        _crit(a, "dataset_provider", "Dataset Provider",
              "Availability of dataset provider's contact information (e.g., email)",
              [("provided", "Contact information provided", 1),
               ("not_provided", "Not provided", -1)], group=info),
        _crit(a, "doi", "DOI",
              "Indicates the dataset's availability of a Digital Object Identifier (DOI)",
              [("provided", "DOI provided", 1),
               ("not_provided", "DOI not provided", -1)], group=info),
        _crit(a, "created_date", "Created Date",
              "Indicates if the dataset creation date is provided in the data dictionary",
              [("provided", "Creation date provided", 1),
               ("unknown", "Creation date unknown", -1)], group=info),
        _crit(a, "version", "Version",
              "Indicates if the version information of the dataset is provided",
              [("provided", "Version provided", 1),
               ("unknown", "Version unknown", -1)], group=info),
        _crit(a, "file_name", "File Name",
              "Lists all file names in the data dictionary, particularly for datasets with multiple files",
              [("all_listed", "All files listed", 1),
               ("some_listed", "Some files listed", 0),
               ("none_listed", "No files listed", -1)], group=files),
        _crit(a, "file_description", "Description",
              "Indicates if a detailed description is provided for each file",
              [("detailed", "Detailed description provided", 1),
               ("none", "No description provided", -1)], group=files),
        _crit(a, "file_source", "Source",
              "Indicates if information about the source of the files is provided",
              [("all", "Source provided for all files", 1),
               ("some", "Source provided for some files", 0),
               ("none", "No source provided", -1)], group=files),
        _crit(a, "attribute_name", "Attribute Name",
              "Indicates if all attribute names in each file are provided in the data dictionary",
              [("all", "All attribute names provided", 1),
               ("some_missing", "Some attribute names missing", 0),
               ("none", "No attribute names provided", -1)], group=attrs),
        _crit(a, "parent_file_name", "Parent File Name",
              "Indicates if the file containing the attributes is specified in the dataset",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "Parent file not provided", -1)], group=attrs),
        _crit(a, "attribute_description", "Description",
              "Indicates if a description is provided for each attribute in the data dictionary",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "No description provided", -1)], group=attrs),
        _crit(a, "data_type", "Data Type",
              "Indicates if data types for each attribute are listed in the data dictionary",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "No data type provided", -1)], group=attrs),
        _crit(a, "allowed_value", "Allowed Value",
              "Indicates if allowed values for each attribute are listed in the data dictionary",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "No allowed values provided", -1)], group=attrs),
        _crit(a, "missing_value", "Missing Value",
              "Indicates if the mechanism for handling missing values is described",
              [("provided", "Handling mechanism provided", 1),
               ("not_provided", "Not provided", -1)], group=attrs),
        _crit(a, "example_value", "Example Value",
              "Indicates if example values are provided for each attribute",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "No example values provided", -1)], group=attrs),
        _crit(a, "format", "Format",
              "Indicates if the recorded data format for each attribute is provided",
              [("all", "Provided for all attributes", 1),
               ("some", "Provided for some attributes", 0),
               ("none", "No format provided", -1)], group=attrs),
    )
    return AreaSpec(a, "Data Dictionary", criteria)


def _c112() -> AreaSpec:
    a = "C112"
    criteria = (
        _crit(a, "dataset_source", "Dataset Source",
              "Evaluates the diversity and reliability of the data sources used in dataset development",
              [("diverse", "Diverse and reliable sources, well-documented", 1),
               ("limited", "Limited diversity and moderate documentation", 0),
               ("unsure", "Not sure and poorly documented", -1)]),
        _crit(a, "collection_techniques", "Collection Techniques",
              "Assesses the appropriateness, consistency, and documentation of data collection methods used",
              [("appropriate", "Appropriate, well-documented, consistent techniques", 1),
               ("adequate", "Adequate techniques with partial documentation", 0),
               ("inappropriate", "Inappropriate or poorly documented techniques", -1)]),
        _crit(a, "sampling_strategy", "Sampling Strategy",
              "Evaluates the suitability and documentation of the dataset's sampling strategy, if applicable",
              [("well_suited", "Well-suited to the dataset's goals and documented", 1),
               ("partial", "Partially suitable with documentation", 0),
               ("poorly_documented", "Poorly documented sampling strategy", -1)],
              applicability=CONDITIONAL),
        _crit(a, "involvement", "Involvement",
              "Participants in data collection and details on compensation",
              [("well_documented", "Well-documented involvement and compensation", 1),
               ("partial", "Partial documentation", 0),
               ("limited", "Limited documentation", -1)]),
        _crit(a, "time", "Time",
              "Documents and assesses the timeframe during which data was collected",
              [("documented", "The time frame is documented and known", 1),
               ("vague", "Timeframe is vaguely documented", 0),
               ("unknown", "The time frame is undocumented and unknown", -1)]),
        _crit(a, "notification", "Notification",
              "Whether individuals were informed about data collection",
              [("notified", "Individuals notified", 1),
               ("not_notified", "Individuals not notified", -1)]),
        _crit(a, "informed_consent", "Informed Consent",
              "Whether individuals consented to use the data",
              [("obtained", "Consent obtained", 1),
               ("not_obtained", "Consent not obtained", -1)]),
        _crit(a, "consent_revocation", "Consent Revocation",
              "Whether there is a way to revoke consent after data collection",
              [("clear", "Clear and accessible mechanism available", 1),
               ("limited_access", "Mechanism available but not easily accessible", 0),
               ("none", "No mechanism to revoke consent", -1)]),
        _crit(a, "ethical_review", "Ethical Review",
              "Whether the data collection process underwent ethical review",
              [("comprehensive", "Comprehensive ethical guidelines followed", 1),
               ("some", "Some ethical guidelines followed", 0),
               ("none", "No ethical guidelines followed", -1)]),
        _crit(a, "limitations", "Limitations",
              "Documented constraints or biases during data collection",
              [("comprehensive", "Identified and comprehensively documented", 1),
               ("limited", "Identified but documentation limited", 0),
               ("none", "No limitation identification method", -1)]),
        _crit(a, "feedback", "Feedback",
              "Mechanisms for gathering feedback from data users or participants",
              [("active", "Active mechanism for regular feedback", 1),
               ("occasional", "Occasional feedback incorporation", 0),
               ("none", "No mechanism for feedback incorporation", -1)]),
    )
    return AreaSpec(a, "Collection Process", criteria)


def _c113() -> AreaSpec:
    a = "C113"
    criteria = (
        _crit(a, "number_of_instances", "Number of Instances",
              "Total number of instances within the dataset, whether known or unknown",
              [("exact", "Exact instance count known", 1),
               ("approximate", "Approximate count known", 0),
               ("unknown", "Instance count unknown", -1)]),
        _crit(a, "relationship", "Relationship",
              "Articulation of relationships between instances (e.g., user movie ratings, social network links)",
              [("full", "Relationships fully defined", 1),
               ("partial", "Partially defined relationships", 0),
               ("none", "Relationships not defined", -1)]),
        _crit(a, "type", "Type",
              "Assesses diversity and complexity of instances in the dataset",
              [("single", "Single-type instances (e.g., documents, photos, people)", 1),
               ("multiple", "Multiple types of instances (e.g., movies and ratings, "
                            "people and interactions, nodes and edges)", 0),
               ("unclear", "Unclear or unspecified instance types", -1)]),
        _crit(a, "presence_of_label", "Presence of Label",
              "Evaluates whether instances in the dataset have labels",
              [("all", "All instances labeled", 1),
               ("some", "Some instances labeled", 0),
               ("none", "No instances labeled", -1)]),
        # Two full-credit partitioning schemes; an unpartitioned dataset is
        # merely neutral, so this criterion has no -1 option.
        _crit(a, "dataset_structure", "Dataset Structure",
              "Describes how the dataset is divided into subsets (e.g., training, validation, testing)",
              [("train_val_test", "Training, validation, and testing data", 1),
               ("train_test", "Training and testing data", 1),
               ("none", "No specified partition", 0)]),
        _crit(a, "dependencies", "Dependencies",
              "Reliance on external sources and the quality of these dependencies",
              [("self_contained", "The dataset is self-contained", 1),
               ("external_links", "Dataset links to external resources", 1),
               ("unclear", "External resource dependencies unclear", -1)]),
        _crit(a, "missing_information", "Missing Information",
              "Presence and clarity of missing data within instances",
              [("complete", "All instances are complete", 1),
               ("present", "Present in some instances", -1),
               ("unclear", "Unclear if any information is missing", 0)]),
        _crit(a, "data_quality", "Data Quality",
              "Presence of quality issues like errors, noise, or redundancies",
              [("none", "No known errors, noise, or redundancies", 1),
               ("limited", "Limited errors, noise, or redundancies", 0),
               ("high", "High errors, noise, or redundancies", -1)]),
        _crit(a, "subpopulation", "Subpopulation",
              "Evaluates the identification and de-identification of subpopulations within the dataset",
              [("none", "No identifiable subpopulations", 1),
               ("anonymized", "Subpopulations are fully anonymized", 1),
               ("identified", "Subpopulations are identified", -1)]),
        _crit(a, "individual_identification", "Individual Identification",
              "Potential for identifying individuals and the level of anonymization applied",
              [("none", "No identifiable information present", 1),
               ("anonymized", "Anonymized and protected", 1),
               ("identifiable", "Individuals can be identified and unprotected", -1)]),
        _crit(a, "sensitivity", "Sensitivity",
              "Sensitivity of the dataset content and its impact, including masking",
              [("none", "No potentially sensitive content", 1),
               ("masked", "Sensitive content is present and masked", 1),
               ("unmasked", "Sensitive content is present and unmasked", -1)]),
        _crit(a, "confidentiality", "Confidentiality",
              "Presence and protection of confidential data within the dataset",
              [("none", "No confidential data", 1),
               ("protected", "Confidential data is present and protected", 1),
               ("unprotected", "Confidential data is present and unprotected", -1)]),
    )
    return AreaSpec(a, "Composition", criteria)


def _c114() -> AreaSpec:
    a = "C114"
    criteria = (
        _crit(a, "purpose_statement", "Purpose Statement",
              "Clear articulation of the dataset's intended purpose",
              [("clear", "Clearly stated purpose", 1),
               ("vague", "Vaguely stated purpose", 0),
               ("none", "No stated purpose", -1)]),
        _crit(a, "research_gap_addressed", "Research Gap Addressed",
              "Identification of the specific research gap or problem the dataset aims to address",
              [("identified", "Identified research gap", 1),
               ("vague", "Vaguely identified research gap", 0),
               ("none", "No mention of research gap", -1)]),
        _crit(a, "intended_use_cases", "Intended Use Cases",
              "Description of specific use cases or applications for the dataset",
              [("comprehensive", "Comprehensive list of use cases", 1),
               ("limited", "Limited use cases mentioned", 0),
               ("none", "No use cases specified", -1)]),
        _crit(a, "development_team", "Development Team",
              "Information about the team or individuals responsible for dataset creation",
              [("detailed", "Detailed team information provided", 1),
               ("limited", "Limited team information", 0),
               ("none", "No team information", -1)]),
        _crit(a, "backing_organization", "Backing Organization",
              "Identification of the organization(s) supporting the dataset development",
              [("clear", "Clearly stated backing organization", 1),
               ("vague", "Vague mention of organization", 0),
               ("none", "No organization mentioned", -1)]),
        _crit(a, "funding_sources", "Funding Sources",
              "Disclosure of funding sources, including specific grants if applicable",
              [("detailed", "Detailed funding information", 1),
               ("partial", "Partial funding information", 0),
               ("none", "No funding information", -1)]),
        _crit(a, "potential_impact", "Potential Impact",
              "Discussion of the potential impact or benefits of the dataset",
              [("comprehensive", "Comprehensive impact analysis", 1),
               ("limited", "Limited impact discussion", 0),
               ("none", "No mention of potential impact", -1)]),
    )
    return AreaSpec(a, "Motivation", criteria)


def _c115() -> AreaSpec:
    a = "C115"
    # Every criterion except the status one is conditional: when the status
    # answer is "raw", the scoring module forces the rest to not-applicable.
    criteria = (
        _crit(a, "preprocessing_status", "Preprocessing Status",
              "Indicates whether the dataset has undergone preprocessing or remains in its original form",
              [("applied", "preprocessing has been applied", 1),
               ("raw", "The data remains in its original, unprocessed form", -1)],
              special_role=ROLE_PREPROCESSING_STATUS),
        _crit(a, "steps_applied", "Steps Applied",
              "Describes the specific preprocessing techniques used and their thoroughness",
              [("extensive", "Extensive, well-documented preprocessing", 1),
               ("limited", "Limited documentation and techniques", 0),
               ("minimal", "Minimal or poorly documented preprocessing", -1)],
              applicability=CONDITIONAL),
        _crit(a, "software_availability", "Software Availability",
              "Specifies whether the software used for preprocessing is publicly available or restricted",
              [("public", "The software is publicly available", 1),
               ("restricted", "The software is available under restricted conditions", 0),
               ("unavailable", "The software is not available", -1)],
              applicability=CONDITIONAL),
        _crit(a, "consistency", "Consistency",
              "Assesses whether preprocessing is consistently applied across all data instances",
              [("uniform", "Uniformly applied across all data instances", 1),
               ("varies", "Varies across different segments of the dataset", -1)],
              applicability=CONDITIONAL),
        # Worst case for alignment is partial, so this criterion has no -1.
        _crit(a, "alignment", "Alignment",
              "Evaluates how well preprocessing aligns with the goals of data analysis",
              [("full", "preprocessing fully aligns with analysis goals", 1),
               ("partial", "Partially aligned, with room for improvement", 0)],
              applicability=CONDITIONAL),
        _crit(a, "impact_on_data_quality", "Impact on Data Quality",
              "Measures the effect of preprocessing on the quality of the dataset",
              [("significant", "Improved data quality significantly", 1),
               ("slight", "Slight improvement in data quality", 0),
               ("degraded", "Change or degradation in data quality", -1)],
              applicability=CONDITIONAL),
        _crit(a, "impact_on_data_size", "Impact on Data Size",
              "Assesses the extent of data loss or reduction during preprocessing",
              [("none", "No significant data loss", 1),
               ("acceptable", "Some loss, but within acceptable limits", 0),
               ("significant", "Significant data reduction", -1)],
              applicability=CONDITIONAL),
        _crit(a, "verification", "Verification",
              "Describes the processes in place to verify the preprocessing steps",
              [("comprehensive", "Comprehensive verification processes", 1),
               ("limited", "Limited verification; limited preprocessing steps verified", 0),
               ("none", "No verification mechanism is provided", -1)],
              applicability=CONDITIONAL),
        _crit(a, "retention", "Retention",
              "Indicates whether raw data is retained alongside preprocessed versions",
              [("both", "Raw and preprocessed data retained", 1),
               ("processed_only", "Only preprocessed data retained", -1)],
              applicability=CONDITIONAL),
        _crit(a, "documentation_clarity", "Documentation Clarity",
              "Evaluates the clarity and comprehensiveness of documentation for preprocessing techniques",
              [("well", "Well-documented preprocessing techniques", 1),
               ("partial", "Partial documentation, covering limited techniques", 0),
               ("none", "No preprocessing documentation", -1)],
              applicability=CONDITIONAL),
    )
    return AreaSpec(a, "Preprocessing", criteria)


_BUILTIN: RubricCatalog | None = None


def builtin_catalog() -> RubricCatalog:
    """The complete built-in catalog (5 areas, 57 criteria)."""
    global _BUILTIN
    if _BUILTIN is None:
        catalog = RubricCatalog(
            BUILTIN_CATALOG_ID, BUILTIN_VERSION,
            (_c111(), _c112(), _c113(), _c114(), _c115()),
        )
        validate_catalog(catalog)
        _BUILTIN = catalog
    return _BUILTIN


# ---------------------------------------------------------------------------
# Integrity checks
# ---------------------------------------------------------------------------

def validate_catalog(catalog: RubricCatalog) -> None:
    """Check every catalog invariant; raise RubricIntegrityError listing all
    violations found."""
    problems = []
    if not catalog.areas:
        problems.append("catalog has no areas")
    seen_areas = set()
    seen_criteria = set()
    for area in catalog.areas:
        if area.area_id in seen_areas:
            problems.append(f"duplicate area id {area.area_id!r}")
        seen_areas.add(area.area_id)
        if not area.criteria:
            problems.append(f"area {area.area_id} has no criteria")
        status_count = 0
        for crit in area.criteria:
            cid = crit.criterion_id
            if cid in seen_criteria:
                problems.append(f"duplicate criterion id {cid!r}")
            seen_criteria.add(cid)
            if not cid.startswith(area.area_id + "."):
                problems.append(f"criterion id {cid!r} is not scoped to area {area.area_id}")
            if crit.applicability not in APPLICABILITIES:
                problems.append(f"{cid}: unknown applicability {crit.applicability!r}")
            if crit.special_role not in SPECIAL_ROLES:
                problems.append(f"{cid}: unknown special_role {crit.special_role!r}")
            if crit.special_role == ROLE_PREPROCESSING_STATUS:
                status_count += 1
            problems.extend(_check_options(crit))
        if status_count > 1:
            problems.append(f"area {area.area_id} has more than one preprocessing-status criterion")
    if problems:
        raise RubricIntegrityError("; ".join(problems))


def _check_options(crit: CriterionSpec) -> list[str]:
    cid = crit.criterion_id
    problems = []
    if len(crit.options) < 2:
        problems.append(f"{cid}: fewer than 2 options")
    labels = set()
    keys = set()
    has_top = False
    for opt in crit.options:
        if opt.score not in VALID_SCORES:
            problems.append(f"{cid}: option {opt.key!r} has score {opt.score} outside {{-1, 0, +1}}")
        if opt.score == 1:
            has_top = True
        elif opt.score in VALID_SCORES and not opt.recommendation_key:
            problems.append(f"{cid}: option {opt.key!r} scores below +1 but has no recommendation_key")
        if not opt.label:
            problems.append(f"{cid}: option {opt.key!r} has an empty label")
        if opt.label in labels:
            problems.append(f"{cid}: duplicate option label {opt.label!r}")
        labels.add(opt.label)
        if opt.key in keys:
            problems.append(f"{cid}: duplicate option key {opt.key!r}")
        keys.add(opt.key)
    if crit.options and not has_top:
        problems.append(f"{cid}: no +1 option")
    return problems


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def catalog_to_document(catalog: RubricCatalog) -> dict:
    """Plain-JSON representation in the rubric definition file format."""
    return {
        "catalog_id": catalog.catalog_id,
        "version": catalog.version,
        "areas": [
            {
                "area_id": area.area_id,
                "title": area.title,
                "criteria": [
                    {
                        "criterion_id": crit.criterion_id,
                        "name": crit.name,
                        "description": crit.description,
                        "applicability": crit.applicability,
                        "special_role": crit.special_role,
                        "group": crit.group,
                        "options": [
                            {
                                "key": opt.key,
                                "label": opt.label,
                                "score": opt.score,
                                "recommendation_key": opt.recommendation_key,
                            }
                            for opt in crit.options
                        ],
                    }
                    for crit in area.criteria
                ],
            }
            for area in catalog.areas
        ],
    }


def serialize_catalog(catalog: RubricCatalog) -> str:
    """Stable textual form; identical input yields identical bytes."""
    return json.dumps(catalog_to_document(catalog), indent=2, ensure_ascii=False) + "\n"


def _require(mapping, key, kind, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise RubricParseError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if not isinstance(value, kind):
        raise RubricParseError(f"{where}: field {key!r} has the wrong type")
    return value


def load_catalog(text: str) -> RubricCatalog:
    """Parse a rubric definition document and validate its invariants.

    Raises RubricParseError for malformed documents and RubricIntegrityError
    for structurally valid documents that break a catalog invariant.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RubricParseError(
            f"malformed rubric document: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    if not isinstance(doc, dict):
        raise RubricParseError("rubric document must be a JSON object")

    catalog_id = _require(doc, "catalog_id", str, "catalog")
    version = _require(doc, "version", str, "catalog")
    areas_doc = _require(doc, "areas", list, "catalog")

    areas = []
    for area_doc in areas_doc:
        area_id = _require(area_doc, "area_id", str, "area")
        title = _require(area_doc, "title", str, f"area {area_id}")
        criteria = []
        for crit_doc in _require(area_doc, "criteria", list, f"area {area_id}"):
            cid = _require(crit_doc, "criterion_id", str, f"area {area_id} criterion")
            options = []
            for opt_doc in _require(crit_doc, "options", list, cid):
                rec = opt_doc.get("recommendation_key") if isinstance(opt_doc, dict) else None
                if rec is not None and not isinstance(rec, str):
                    raise RubricParseError(f"{cid}: recommendation_key must be a string or null")
                options.append(OptionSpec(
                    key=_require(opt_doc, "key", str, cid),
                    label=_require(opt_doc, "label", str, cid),
                    score=_require(opt_doc, "score", int, cid),
                    recommendation_key=rec,
                ))
            group = crit_doc.get("group")
            if group is not None and not isinstance(group, str):
                raise RubricParseError(f"{cid}: group must be a string or null")
            criteria.append(CriterionSpec(
                criterion_id=cid,
                name=_require(crit_doc, "name", str, cid),
                description=_require(crit_doc, "description", str, cid),
                options=tuple(options),
                applicability=crit_doc.get("applicability", ALWAYS),
                special_role=crit_doc.get("special_role", ROLE_NONE),
                group=group,
            ))
        areas.append(AreaSpec(area_id, title, tuple(criteria)))

    catalog = RubricCatalog(catalog_id, version, tuple(areas))
    validate_catalog(catalog)
    return catalog


# ---------------------------------------------------------------------------
# Blank intake templates
# ---------------------------------------------------------------------------

#: Placeholder dataset name emitted in blank templates. Kept non-empty so a
#: freshly generated template fails validation only on its unanswered slots.
TEMPLATE_DATASET_NAME = "Unnamed Dataset"


@dataclass(frozen=True)
class TemplateSlot:
    """One unanswered criterion slot plus its dropdown choices."""

    criterion_id: str
    choices: tuple[tuple[str, str], ...]  # (option key, option label)
    allows_not_applicable: bool


@dataclass(frozen=True)
class IntakeTemplate:
    """A blank intake: dataset-metadata placeholders and one slot per criterion."""

    catalog_id: str
    version: str
    area_ids: tuple[str, ...]
    slots: tuple[TemplateSlot, ...]

    def to_document(self) -> dict:
        """The template in the intake file format, selections left empty."""
        responses = {}
        for slot in self.slots:
            responses[slot.criterion_id] = {
                "option": None,
                "choices": {key: label for key, label in slot.choices},
            }
        return {
            "catalog": {"id": self.catalog_id, "version": self.version},
            "meta": {
                "dataset_name": TEMPLATE_DATASET_NAME,
                "description": "",
                "owner_contact": "",
                "dataset_version": "",
                "document_available": {aid: False for aid in self.area_ids},
            },
            "responses": responses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, ensure_ascii=False) + "\n"


def blank_intake(catalog: RubricCatalog) -> IntakeTemplate:
    """Template listing every catalog criterion once, in catalog order."""
    slots = tuple(
        TemplateSlot(
            criterion_id=crit.criterion_id,
            choices=tuple((opt.key, opt.label) for opt in crit.options),
            allows_not_applicable=crit.applicability == CONDITIONAL,
        )
        for crit in catalog.criteria()
    )
    return IntakeTemplate(catalog.catalog_id, catalog.version, catalog.area_ids(), slots)
