"""Scorecard assembly and rendering.

Turns an Evaluation into the human-facing scorecard: per-area rows with
score, color, and remarks, an overall assessment, and per-area
recommendation bullets drawn from a keyed catalog of remediation texts.
Renders to Markdown, HTML, or a lossless machine (JSON) format, and builds
the multi-dataset summary matrix.
"""

from __future__ import annotations

import html
import json
from dataclasses import dataclass
from importlib import resources

from .errors import RecommendationKeyError, RenderError
from .intake import OVERALL_REMARK_KEY
from .rubric import RubricCatalog, builtin_catalog
from .scoring import Color, Evaluation, display_score

FORMAT_MARKDOWN = "markdown"
FORMAT_HTML = "html"
FORMAT_MACHINE = "machine"
FORMATS = (FORMAT_MARKDOWN, FORMAT_HTML, FORMAT_MACHINE)

# Section labels are part of the output contract; tests match them verbatim.
OVERALL_LABEL = "Overall Assessment:"
RECOMMENDATIONS_LABEL = "Recommendations:"

_MAINTAIN = "maintain"
_OVERHAUL = "overhaul"


@dataclass(frozen=True)
class RecommendationText:
    finding: str
    remediation: str


@dataclass(frozen=True)
class RecommendationCatalog:
    """Editable map from recommendation keys to finding/remediation texts."""

    entries: dict

    def get(self, key: str) -> RecommendationText:
        try:
            return self.entries[key]
        except KeyError:
            raise RecommendationKeyError(key) from None

    def missing_keys(self, catalog: RubricCatalog) -> tuple[str, ...]:
        """Rubric recommendation keys this catalog does not cover."""
        return tuple(k for k in catalog.recommendation_keys() if k not in self.entries)


def load_recommendations(text: str) -> RecommendationCatalog:
    doc = json.loads(text)
    entries = {
        key: RecommendationText(value["finding"], value["remediation"])
        for key, value in doc.items()
    }
    return RecommendationCatalog(entries)


_DEFAULT_RECOMMENDATIONS: RecommendationCatalog | None = None


def default_recommendations() -> RecommendationCatalog:
    """The bundled recommendation catalog covering the built-in rubric."""
    global _DEFAULT_RECOMMENDATIONS
    if _DEFAULT_RECOMMENDATIONS is None:
        text = resources.files("datascorecard").joinpath("data/recommendations.json").read_text("utf-8")
        _DEFAULT_RECOMMENDATIONS = load_recommendations(text)
    return _DEFAULT_RECOMMENDATIONS


# ---------------------------------------------------------------------------
# Scorecard structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScorecardRow:
    area_id: str
    title: str
    document_available: bool
    display_score: str
    score_text: str  # scorecard style: integral scores as 1.0/-1.0
    color: Color
    remarks: tuple[str, ...]


@dataclass(frozen=True)
class Scorecard:
    dataset_name: str
    description: str
    timestamp: str
    rows: tuple[ScorecardRow, ...]
    overall_assessment: str
    recommendations: tuple[tuple[str, tuple[str, ...]], ...]  # (area_id, bullets)

    def row(self, area_id: str) -> ScorecardRow:
        for row in self.rows:
            if row.area_id == area_id:
                return row
        raise KeyError(f"scorecard has no area {area_id!r}")

    def bullets(self, area_id: str) -> tuple[str, ...]:
        for aid, bullets in self.recommendations:
            if aid == area_id:
                return bullets
        raise KeyError(f"scorecard has no recommendations for {area_id!r}")


def deficiencies(evaluation: Evaluation):
    """All applicable findings scoring below +1, in catalog order.

    A short-circuited preprocessing area contributes only its status finding;
    the forced not-applicable findings are excluded.
    """
    return [
        finding
        for area in evaluation.areas
        for finding in area.findings
        if finding.score is not None and finding.score < 1
    ]


def _score_text(exact) -> str:
    """Scorecard-row score: whole numbers print with one decimal (1.0, -1.0),
    everything else with the standard two-decimal display."""
    if exact.denominator == 1:
        return f"{exact.numerator}.0"
    return display_score(exact)


def _area_remarks(evaluation, area, recommendation_key_of, recommendations):
    remarks = []
    evaluator = evaluation.meta.evaluator_remarks.get(area.area_id)
    if evaluator:
        remarks.append(evaluator)
    for finding in area.findings:
        if finding.score is None or finding.score >= 1:
            continue
        key = recommendation_key_of(finding)
        remarks.append(recommendations.get(key).finding)
    if not remarks:
        remarks.append("No deficiencies identified in this area.")
    return tuple(remarks)


def _area_bullets(area, recommendation_key_of, recommendations):
    bullets = []
    if area.color == Color.RED:
        bullets.append(recommendations.get(f"{area.area_id}.{_OVERHAUL}").remediation)
    seen = set(bullets)
    for finding in area.findings:
        if finding.score is None or finding.score >= 1:
            continue
        text = recommendations.get(recommendation_key_of(finding)).remediation
        if text not in seen:
            seen.add(text)
            bullets.append(text)
    if not bullets:
        bullets.append(recommendations.get(f"{area.area_id}.{_MAINTAIN}").remediation)
    return tuple(bullets)


def _overall_assessment(evaluation) -> str:
    greens = [a.title for a in evaluation.areas if a.color == Color.GREEN]
    yellows = [a.title for a in evaluation.areas if a.color == Color.YELLOW]
    reds = [a.title for a in evaluation.areas if a.color == Color.RED]
    sentences = []
    if greens:
        sentences.append(f"The dataset shows exemplary development practices in {_join(greens)}.")
    if yellows:
        sentences.append(f"{_join(yellows)} {'shows' if len(yellows) == 1 else 'show'} "
                         "partial adherence and would benefit from targeted improvements.")
    if reds:
        sentences.append(f"Significant deficiencies remain in {_join(reds)}.")
    extra = evaluation.meta.evaluator_remarks.get(OVERALL_REMARK_KEY)
    if extra:
        sentences.append(extra)
    return " ".join(sentences)


def _join(titles) -> str:
    if len(titles) == 1:
        return titles[0]
    return ", ".join(titles[:-1]) + " and " + titles[-1]


def build_scorecard(evaluation: Evaluation,
                    recommendations: RecommendationCatalog | None = None,
                    catalog: RubricCatalog | None = None) -> Scorecard:
    """Assemble the renderable scorecard for an evaluation.

    ``catalog`` supplies the recommendation keys of each option and must be
    the catalog the evaluation was produced with (defaults to the built-in).
    Raises RecommendationKeyError when a referenced key has no text.
    """
    recommendations = recommendations or default_recommendations()
    catalog = catalog or builtin_catalog()
    if not catalog.same_reference(evaluation.catalog_id, evaluation.catalog_version):
        raise RenderError(
            f"evaluation was produced with catalog {evaluation.catalog_id} "
            f"{evaluation.catalog_version}, not {catalog.catalog_id} {catalog.version}"
        )

    def recommendation_key_of(finding):
        option = catalog.criterion(finding.criterion_id).option(finding.option_key)
        if not option.recommendation_key:
            raise RecommendationKeyError(f"{finding.criterion_id}:{finding.option_key}")
        return option.recommendation_key

    rows = []
    recs = []
    for area in evaluation.areas:
        rows.append(ScorecardRow(
            area_id=area.area_id,
            title=area.title,
            document_available=bool(evaluation.meta.document_available.get(area.area_id, False)),
            display_score=area.display_score,
            score_text=_score_text(area.exact_score),
            color=area.color,
            remarks=_area_remarks(evaluation, area, recommendation_key_of, recommendations),
        ))
        recs.append((area.area_id, _area_bullets(area, recommendation_key_of, recommendations)))

    return Scorecard(
        dataset_name=evaluation.meta.dataset_name,
        description=evaluation.meta.description,
        timestamp=evaluation.timestamp,
        rows=tuple(rows),
        overall_assessment=_overall_assessment(evaluation),
        recommendations=tuple(recs),
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render(scorecard: Scorecard, fmt: str = FORMAT_MARKDOWN) -> str:
    if fmt == FORMAT_MARKDOWN:
        return _render_markdown(scorecard)
    if fmt == FORMAT_HTML:
        return _render_html(scorecard)
    if fmt == FORMAT_MACHINE:
        return _render_machine(scorecard)
    raise RenderError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _render_markdown(card: Scorecard) -> str:
    titles = {row.area_id: row.title for row in card.rows}
    lines = [
        "# Data Scorecard",
        "",
        f"**Dataset Name:** {card.dataset_name}",
        "",
        f"**Description:** {card.description}",
        "",
        f"**Evaluated:** {card.timestamp}",
        "",
        "---",
        "",
    ]
    for row in card.rows:
        available = "Yes" if row.document_available else "No"
        lines.append(f"**{row.title}** (Document Available? {available}) "
                     f"[{row.score_text}] [{row.color.word}]")
        lines.append("")
        lines.append(f"**Remarks:** {' '.join(row.remarks)}")
        lines.append("")
    lines.extend([
        "---",
        "",
        f"**{OVERALL_LABEL}** {card.overall_assessment}",
        "",
        "---",
        "",
        f"**{RECOMMENDATIONS_LABEL}**",
        "",
    ])
    for area_id, bullets in card.recommendations:
        lines.append(f"- **{titles[area_id]}:**")
        for bullet in bullets:
            lines.append(f"  - {bullet}")
    lines.append("")
    return "\n".join(lines)


_HTML_STYLE = """\
body { font-family: sans-serif; max-width: 60rem; margin: 2rem auto; }
table.areas { border-collapse: collapse; width: 100%; }
table.areas th, table.areas td { border: 1px solid #ccc; padding: 0.5rem; vertical-align: top; }
.badge { color: #fff; padding: 0.1rem 0.5rem; border-radius: 0.25rem; }
.badge.red { background: #c62828; }
.badge.yellow { background: #b28704; }
.badge.green { background: #2e7d32; }
p.remarks { margin: 0.4rem 0 0 0; font-size: 0.9rem; }\
"""


def _render_html(card: Scorecard) -> str:
    titles = {row.area_id: row.title for row in card.rows}
    esc = html.escape
    parts = [
        "<!doctype html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{esc(card.dataset_name)} scorecard</title>",
        f"<style>\n{_HTML_STYLE}\n</style>",
        "</head>",
        "<body>",
        "<h1>Data Scorecard</h1>",
        f"<p><strong>Dataset Name:</strong> {esc(card.dataset_name)}</p>",
        f"<p><strong>Description:</strong> {esc(card.description)}</p>",
        f"<p><strong>Evaluated:</strong> {esc(card.timestamp)}</p>",
        '<table class="areas">',
        "<thead><tr><th>Criteria</th><th>Document Available?</th>"
        "<th>Score / Assessment Status</th></tr></thead>",
        "<tbody>",
    ]
    for row in card.rows:
        available = "Yes" if row.document_available else "No"
        remarks = esc(" ".join(row.remarks))
        parts.append(
            f'<tr class="area-row" data-area="{esc(row.area_id)}" data-color="{row.color.value}">'
            f"<td>{esc(row.title)}</td><td>{available}</td>"
            f'<td><strong>[{esc(row.score_text)}]</strong> '
            f'<span class="badge {row.color.value}">{row.color.word}</span>'
            f'<p class="remarks">{remarks}</p></td></tr>'
        )
    parts.extend([
        "</tbody>",
        "</table>",
        f"<h2>{OVERALL_LABEL}</h2>",
        f"<p>{esc(card.overall_assessment)}</p>",
        f"<h2>{RECOMMENDATIONS_LABEL}</h2>",
        "<ul>",
    ])
    for area_id, bullets in card.recommendations:
        items = "".join(f"<li>{esc(b)}</li>" for b in bullets)
        parts.append(f"<li><strong>{esc(titles[area_id])}:</strong><ul>{items}</ul></li>")
    parts.extend(["</ul>", "</body>", "</html>", ""])
    return "\n".join(parts)


def scorecard_to_document(card: Scorecard) -> dict:
    return {
        "dataset_name": card.dataset_name,
        "description": card.description,
        "timestamp": card.timestamp,
        "rows": [
            {
                "area_id": row.area_id,
                "title": row.title,
                "document_available": row.document_available,
                "display_score": row.display_score,
                "score_text": row.score_text,
                "color": row.color.value,
                "remarks": list(row.remarks),
            }
            for row in card.rows
        ],
        "overall_assessment": card.overall_assessment,
        "recommendations": [
            {"area_id": area_id, "bullets": list(bullets)}
            for area_id, bullets in card.recommendations
        ],
    }


def _render_machine(card: Scorecard) -> str:
    return json.dumps(scorecard_to_document(card), indent=2, ensure_ascii=False) + "\n"


def parse_scorecard(text: str) -> Scorecard:
    """Inverse of the machine rendering."""
    try:
        doc = json.loads(text)
        rows = tuple(
            ScorecardRow(
                area_id=r["area_id"],
                title=r["title"],
                document_available=r["document_available"],
                display_score=r["display_score"],
                score_text=r["score_text"],
                color=Color(r["color"]),
                remarks=tuple(r["remarks"]),
            )
            for r in doc["rows"]
        )
        recommendations = tuple(
            (r["area_id"], tuple(r["bullets"])) for r in doc["recommendations"]
        )
        return Scorecard(
            dataset_name=doc["dataset_name"],
            description=doc["description"],
            timestamp=doc["timestamp"],
            rows=rows,
            overall_assessment=doc["overall_assessment"],
            recommendations=recommendations,
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise RenderError(f"not a valid machine scorecard: {exc}") from exc


# ---------------------------------------------------------------------------
# Batch summary
# ---------------------------------------------------------------------------

def batch_summary(evaluations) -> str:
    """Markdown matrix with one row per dataset and a score/color column pair
    per area. Datasets are ordered by name."""
    evaluations = list(evaluations)
    if not evaluations:
        raise RenderError("batch summary needs at least one evaluation")
    reference = (evaluations[0].catalog_id, evaluations[0].catalog_version)
    for evaluation in evaluations:
        if (evaluation.catalog_id, evaluation.catalog_version) != reference:
            raise RenderError("batch summary requires a single catalog version")

    ordered = sorted(evaluations, key=lambda e: e.meta.dataset_name)
    areas = ordered[0].areas
    header = ["Dataset"]
    for area in areas:
        header.extend([f"{area.title} Score", f"{area.title} Color"])
    lines = [
        "# Evaluation Summary",
        "",
        "| " + " | ".join(header) + " |",
        "|" + "---|" * len(header),
    ]
    for evaluation in ordered:
        cells = [evaluation.meta.dataset_name]
        for area in evaluation.areas:
            cells.extend([area.display_score, area.color.word])
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    return "\n".join(lines)
