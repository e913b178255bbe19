"""Criterion scoring, area averaging, and color classification.

All arithmetic on area scores is exact: sums and means are computed with
``fractions.Fraction`` so that classification at the 0.39/0.79 band edges
never depends on binary floating point. The two-decimal display string is a
presentation of the exact value, never an input to classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction

from .errors import EvaluationError
from .intake import DatasetMeta, IntakeForm, Response
from .rubric import AreaSpec, CriterionSpec, RubricCatalog

#: Band edges. Scores strictly below RED_BELOW are red, scores strictly above
#: GREEN_ABOVE are green, and everything between (endpoints included) is
#: yellow.
RED_BELOW = Fraction(39, 100)
GREEN_ABOVE = Fraction(79, 100)


class Color(str, Enum):
    RED = "red"
    YELLOW = "yellow"
    GREEN = "green"

    @property
    def word(self) -> str:
        """Display form: Red, Yellow, or Green."""
        return self.value.capitalize()

    @property
    def rank(self) -> int:
        """Ordering from worst (0 = red) to best (2 = green)."""
        return ("red", "yellow", "green").index(self.value)


@dataclass(frozen=True)
class CriterionFinding:
    """The scored outcome of one criterion.

    ``score`` is None when the criterion was not applicable, either by an
    explicit not-applicable response or because the raw-data short-circuit
    forced it. ``option_key`` is retained even for forced findings so the
    original selection stays auditable.
    """

    criterion_id: str
    option_key: str | None
    score: int | None

    @property
    def applicable(self) -> bool:
        return self.score is not None


@dataclass(frozen=True)
class AreaEvaluation:
    area_id: str
    title: str
    applicable_count: int
    exact_score: Fraction
    display_score: str
    color: Color
    findings: tuple[CriterionFinding, ...]
    short_circuited: bool = False


@dataclass(frozen=True)
class Evaluation:
    """A full scored result for one dataset: one AreaEvaluation per catalog area."""

    catalog_id: str
    catalog_version: str
    meta: DatasetMeta
    areas: tuple[AreaEvaluation, ...]
    timestamp: str

    def area(self, area_id: str) -> AreaEvaluation:
        for area in self.areas:
            if area.area_id == area_id:
                return area
        raise KeyError(f"evaluation has no area {area_id!r}")

    def colors(self) -> tuple[Color, ...]:
        return tuple(area.color for area in self.areas)


def classify(score) -> Color:
    """Map an exact area score in [-1, 1] to its color band.

    Accepts ints and Fractions only; floats are rejected because the band
    edges are not representable in binary floating point.
    """
    if isinstance(score, float):
        raise EvaluationError("classify requires an exact rational, not a float")
    exact = Fraction(score)
    if not -1 <= exact <= 1:
        raise EvaluationError(f"score {exact} is outside [-1, 1]")
    if exact < RED_BELOW:
        return Color.RED
    if exact > GREEN_ABOVE:
        return Color.GREEN
    return Color.YELLOW


def display_score(value) -> str:
    """Two-decimal display string, rounding half away from zero.

    Computed exactly on the rational value; -1/12 becomes "-0.08" and
    157/200 (0.785) becomes "0.79". A value that rounds to zero is printed
    "0.00" without a sign.
    """
    exact = Fraction(value)
    hundredths = math.floor(abs(exact) * 100 + Fraction(1, 2))
    if exact < 0:
        hundredths = -hundredths
    if hundredths == 0:
        return "0.00"
    sign = "-" if hundredths < 0 else ""
    return f"{sign}{abs(hundredths) // 100}.{abs(hundredths) % 100:02d}"


def score_response(criterion: CriterionSpec, response: Response) -> CriterionFinding:
    """Turn a validated response into a finding carrying the option's score."""
    if response.criterion_id != criterion.criterion_id:
        raise EvaluationError(
            f"response for {response.criterion_id} scored against {criterion.criterion_id}"
        )
    if response.not_applicable:
        return CriterionFinding(criterion.criterion_id, None, None)
    try:
        option = criterion.option(response.option_key)
    except KeyError as exc:
        raise EvaluationError(str(exc)) from exc
    return CriterionFinding(criterion.criterion_id, option.key, option.score)


def _short_circuited(area: AreaSpec, findings) -> bool:
    status = area.status_criterion()
    if status is None:
        return False
    for finding in findings:
        if finding.criterion_id == status.criterion_id:
            return finding.score == -1
    return False


def score_area(area: AreaSpec, findings) -> AreaEvaluation:
    """Average the applicable findings of one area and classify the result.

    When the area's preprocessing-status criterion scored -1 (the dataset is
    raw), every other finding is forced to not-applicable and the area score
    is pinned at -1.00.
    """
    findings = tuple(findings)
    expected = tuple(c.criterion_id for c in area.criteria)
    got = tuple(f.criterion_id for f in findings)
    if sorted(got) != sorted(expected):
        raise EvaluationError(f"area {area.area_id} needs exactly one finding per criterion")

    short_circuited = _short_circuited(area, findings)
    if short_circuited:
        status_id = area.status_criterion().criterion_id
        findings = tuple(
            f if f.criterion_id == status_id else replace(f, score=None)
            for f in findings
        )

    scores = [f.score for f in findings if f.score is not None]
    if not scores:
        raise EvaluationError(f"area {area.area_id} has no applicable criteria")
    exact = Fraction(sum(scores), len(scores))
    assert -1 <= exact <= 1
    return AreaEvaluation(
        area_id=area.area_id,
        title=area.title,
        applicable_count=len(scores),
        exact_score=exact,
        display_score=display_score(exact),
        color=classify(exact),
        findings=findings,
        short_circuited=short_circuited,
    )


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def evaluate(form: IntakeForm, catalog: RubricCatalog, timestamp: str | None = None) -> Evaluation:
    """Score a validated intake form against its catalog.

    Pure apart from the timestamp, which is taken from the ``timestamp``
    argument, then the form, then the current UTC time.
    """
    if not catalog.same_reference(form.catalog_id, form.catalog_version):
        raise EvaluationError(
            f"intake references catalog {form.catalog_id} {form.catalog_version}, "
            f"not {catalog.catalog_id} {catalog.version}"
        )
    areas = []
    for area in catalog.areas:
        findings = [
            score_response(crit, form.responses[crit.criterion_id])
            for crit in area.criteria
        ]
        areas.append(score_area(area, findings))
    return Evaluation(
        catalog_id=catalog.catalog_id,
        catalog_version=catalog.version,
        meta=form.meta,
        areas=tuple(areas),
        timestamp=timestamp or form.timestamp or _utc_now(),
    )


# ---------------------------------------------------------------------------
# Machine format
# ---------------------------------------------------------------------------

def evaluation_to_document(evaluation: Evaluation) -> dict:
    """Plain-JSON form of an evaluation; exact scores serialize as "num/den"."""
    return {
        "catalog": {"id": evaluation.catalog_id, "version": evaluation.catalog_version},
        "meta": evaluation.meta.to_document(),
        "timestamp": evaluation.timestamp,
        "areas": [
            {
                "area_id": area.area_id,
                "title": area.title,
                "applicable_count": area.applicable_count,
                "exact_score": f"{area.exact_score.numerator}/{area.exact_score.denominator}",
                "display_score": area.display_score,
                "color": area.color.value,
                "short_circuited": area.short_circuited,
                "findings": [
                    {
                        "criterion_id": f.criterion_id,
                        "option": f.option_key,
                        "not_applicable": f.score is None,
                        "score": f.score,
                    }
                    for f in area.findings
                ],
            }
            for area in evaluation.areas
        ],
    }


def evaluation_from_document(doc: dict) -> Evaluation:
    """Inverse of evaluation_to_document."""
    try:
        areas = []
        for area_doc in doc["areas"]:
            findings = tuple(
                CriterionFinding(f["criterion_id"], f.get("option"), f.get("score"))
                for f in area_doc["findings"]
            )
            exact = Fraction(area_doc["exact_score"])
            areas.append(AreaEvaluation(
                area_id=area_doc["area_id"],
                title=area_doc["title"],
                applicable_count=area_doc["applicable_count"],
                exact_score=exact,
                display_score=area_doc["display_score"],
                color=Color(area_doc["color"]),
                findings=findings,
                short_circuited=area_doc["short_circuited"],
            ))
        return Evaluation(
            catalog_id=doc["catalog"]["id"],
            catalog_version=doc["catalog"]["version"],
            meta=DatasetMeta.from_document(doc["meta"]),
            areas=tuple(areas),
            timestamp=doc["timestamp"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise EvaluationError(f"not a valid evaluation document: {exc}") from exc
