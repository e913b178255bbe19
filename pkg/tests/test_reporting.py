import json
from html.parser import HTMLParser

import pytest

from datascorecard import (
    Color,
    RecommendationCatalog,
    RecommendationKeyError,
    RenderError,
    batch_summary,
    build_scorecard,
    default_recommendations,
    deficiencies,
    evaluate,
    parse_scorecard,
    render,
)
from datascorecard.reporting import OVERALL_LABEL, RECOMMENDATIONS_LABEL


def test_recommendations_cover_builtin_rubric(catalog):
    assert default_recommendations().missing_keys(catalog) == ()


def test_deficiencies_empty_for_all_top(catalog, make_form):
    assert deficiencies(evaluate(make_form(), catalog)) == []


def test_deficiencies_lfw_includes_all_c111(fixture_evaluations, catalog):
    found = deficiencies(fixture_evaluations["lfw"])
    c111 = [f.criterion_id for f in found if f.criterion_id.startswith("C111.")]
    assert sorted(c111) == sorted(c.criterion_id for c in catalog.area("C111").criteria)
    assert all(f.score == -1 for f in found if f.criterion_id.startswith("C111."))


def test_deficiencies_single_seeded_entry(catalog, make_form):
    form = make_form({"C114.funding_sources": "partial"})
    found = deficiencies(evaluate(form, catalog))
    assert [(f.criterion_id, f.score) for f in found] == [("C114.funding_sources", 0)]


def test_deficiencies_short_circuited_area_contributes_status_only(fixture_evaluations):
    found = deficiencies(fixture_evaluations["recidivism"])
    c115 = [f.criterion_id for f in found if f.criterion_id.startswith("C115.")]
    assert c115 == ["C115.preprocessing_status"]


def test_scorecard_lfw_row_and_recommendation(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    row = card.row("C111")
    assert row.score_text == "-1.0"
    assert row.color == Color.RED
    assert row.document_available is False
    bullets = card.bullets("C111")
    assert any("comprehensive data dictionary" in b for b in bullets)


def test_scorecard_mimic_preprocessing_row(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["mimic_iv"], default_recommendations(), catalog)
    row = card.row("C115")
    assert row.color == Color.YELLOW
    assert row.display_score == "0.70"
    bullets = card.bullets("C115")
    assert any("preprocessing documentation" in b for b in bullets)


def test_all_green_scorecard_has_maintenance_only(catalog, make_form):
    card = build_scorecard(evaluate(make_form(), catalog), default_recommendations(), catalog)
    recommendations = default_recommendations()
    for area_id, bullets in card.recommendations:
        assert bullets == (recommendations.get(f"{area_id}.maintain").remediation,)


def test_every_non_green_area_has_bullets(fixture_evaluations, catalog):
    for evaluation in fixture_evaluations.values():
        card = build_scorecard(evaluation, default_recommendations(), catalog)
        for row in card.rows:
            if row.color != Color.GREEN:
                assert len(card.bullets(row.area_id)) >= 1


def test_red_area_minus_one_deficiencies_all_appear(fixture_evaluations, catalog):
    recommendations = default_recommendations()
    for evaluation in fixture_evaluations.values():
        card = build_scorecard(evaluation, recommendations, catalog)
        red_areas = {r.area_id for r in card.rows if r.color == Color.RED}
        for finding in deficiencies(evaluation):
            area_id = finding.criterion_id.split(".")[0]
            if area_id in red_areas and finding.score == -1:
                option = catalog.criterion(finding.criterion_id).option(finding.option_key)
                text = recommendations.get(option.recommendation_key).remediation
                assert text in card.bullets(area_id)


def test_missing_recommendation_key_names_it(fixture_evaluations, catalog):
    sparse = RecommendationCatalog(entries={})
    with pytest.raises(RecommendationKeyError) as exc:
        build_scorecard(fixture_evaluations["lfw"], sparse, catalog)
    assert exc.value.key


def test_evaluator_remarks_lead_area_remarks(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    row = card.row("C112")
    assert row.remarks[0].startswith("Collection documentation is thin")
    assert len(row.remarks) > 1


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def test_markdown_contains_template_sections(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    text = render(card, "markdown")
    assert OVERALL_LABEL in text
    assert RECOMMENDATIONS_LABEL in text
    lines = text.splitlines()
    assert any("**Data Dictionary**" in l and "[-1.0] [Red]" in l for l in lines)
    assert any("**Motivation**" in l and "[1.0] [Green]" in l for l in lines)


def test_markdown_renders_color_words(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["mimic_iv"], default_recommendations(), catalog)
    text = render(card, "markdown")
    assert "[Yellow]" in text and "[Green]" in text and "[Red]" in text


def test_machine_round_trip(fixture_evaluations, catalog):
    for evaluation in fixture_evaluations.values():
        card = build_scorecard(evaluation, default_recommendations(), catalog)
        assert parse_scorecard(render(card, "machine")) == card


class _AreaRowCounter(HTMLParser):
    def __init__(self):
        super().__init__()
        self.count = 0

    def handle_starttag(self, tag, attrs):
        if tag == "tr" and ("class", "area-row") in attrs:
            self.count += 1


def test_html_has_five_area_rows(fixture_evaluations, catalog):
    for evaluation in fixture_evaluations.values():
        card = build_scorecard(evaluation, default_recommendations(), catalog)
        counter = _AreaRowCounter()
        counter.feed(render(card, "html"))
        assert counter.count == 5


def test_unknown_format_rejected(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    with pytest.raises(RenderError, match="pdf"):
        render(card, "pdf")


def test_rendering_is_deterministic(fixture_evaluations, catalog):
    card = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    again = build_scorecard(fixture_evaluations["lfw"], default_recommendations(), catalog)
    for fmt in ("markdown", "html", "machine"):
        assert render(card, fmt) == render(again, fmt)


# ---------------------------------------------------------------------------
# Batch summary
# ---------------------------------------------------------------------------

def test_batch_summary_matrix(fixture_evaluations):
    text = batch_summary(fixture_evaluations.values())
    rows = [l for l in text.splitlines() if l.startswith("| ") and "Score" not in l]
    assert len(rows) == 4
    # ordered by dataset name
    names = [r.split("|")[1].strip() for r in rows]
    assert names == ["BCM-A", "Labeled Faces in the Wild", "MIMIC-IV", "NIJ Recidivism"]
    colors = [[c.strip() for c in r.split("|")[2:-1]][1::2] for r in rows]
    assert colors[0] == ["Green", "Red", "Green", "Green", "Red"]
    assert colors[1] == ["Red", "Red", "Yellow", "Green", "Green"]
    assert colors[2] == ["Green", "Red", "Green", "Green", "Yellow"]
    assert colors[3] == ["Green", "Red", "Green", "Green", "Red"]


def test_batch_summary_single_all_green(catalog, make_form):
    text = batch_summary([evaluate(make_form(name="Solo"), catalog)])
    row = [l for l in text.splitlines() if l.startswith("| Solo")][0]
    cells = [c.strip() for c in row.split("|")[2:-1]]
    assert cells == ["1.00", "Green"] * 5


def test_batch_summary_rejects_empty_and_mixed():
    with pytest.raises(RenderError):
        batch_summary([])


def test_batch_summary_rejects_mixed_versions(fixture_evaluations):
    from dataclasses import replace

    evaluations = list(fixture_evaluations.values())
    evaluations[0] = replace(evaluations[0], catalog_version="paper-v2")
    with pytest.raises(RenderError, match="single catalog version"):
        batch_summary(evaluations)
