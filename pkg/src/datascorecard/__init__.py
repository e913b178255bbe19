"""Rubric-based scoring and scorecard reporting for dataset development audits.

Workflow: obtain a rubric catalog (``builtin_catalog`` or ``load_catalog``),
collect an intake document (``blank_intake`` emits a template), validate it
(``parse_intake`` + ``validate_intake``), score it (``evaluate``), and render
the result (``build_scorecard`` + ``render``, or ``batch_summary`` for many
datasets). The same pipeline is exposed over HTTP (``create_app``) and on the
command line (``datascorecard``).
"""

from .errors import (
    EvaluationError,
    IntakeParseError,
    RecommendationKeyError,
    RenderError,
    RubricIntegrityError,
    RubricParseError,
    ScorecardError,
)
from .intake import (
    DatasetMeta,
    Finding,
    IntakeForm,
    Response,
    ValidationReport,
    intake_to_document,
    parse_intake,
    serialize_intake,
    validate_intake,
)
from .reporting import (
    FORMATS,
    RecommendationCatalog,
    Scorecard,
    ScorecardRow,
    batch_summary,
    build_scorecard,
    default_recommendations,
    deficiencies,
    load_recommendations,
    parse_scorecard,
    render,
    scorecard_to_document,
)
from .rubric import (
    AreaSpec,
    CriterionSpec,
    IntakeTemplate,
    OptionSpec,
    RubricCatalog,
    blank_intake,
    builtin_catalog,
    load_catalog,
    serialize_catalog,
    validate_catalog,
)
from .scoring import (
    AreaEvaluation,
    Color,
    CriterionFinding,
    Evaluation,
    classify,
    display_score,
    evaluate,
    evaluation_from_document,
    evaluation_to_document,
    score_area,
    score_response,
)

__version__ = "0.1.0"

__all__ = [
    "AreaEvaluation",
    "AreaSpec",
    "Color",
    "CriterionFinding",
    "CriterionSpec",
    "DatasetMeta",
    "Evaluation",
    "EvaluationError",
    "FORMATS",
    "Finding",
    "IntakeForm",
    "IntakeParseError",
    "IntakeTemplate",
    "OptionSpec",
    "RecommendationCatalog",
    "RecommendationKeyError",
    "RenderError",
    "Response",
    "RubricCatalog",
    "RubricIntegrityError",
    "RubricParseError",
    "Scorecard",
    "ScorecardError",
    "ScorecardRow",
    "ValidationReport",
    "batch_summary",
    "blank_intake",
    "build_scorecard",
    "builtin_catalog",
    "classify",
    "default_recommendations",
    "deficiencies",
    "display_score",
    "evaluate",
    "evaluation_from_document",
    "evaluation_to_document",
    "intake_to_document",
    "load_catalog",
    "load_recommendations",
    "parse_intake",
    "parse_scorecard",
    "render",
    "score_area",
    "score_response",
    "scorecard_to_document",
    "serialize_catalog",
    "serialize_intake",
    "validate_catalog",
    "validate_intake",
]
