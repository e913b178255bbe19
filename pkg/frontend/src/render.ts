// HTML string builders. Kept DOM-free so tests can assert on the markup,
// most importantly that no option score ever reaches the page before
// submission.

import type { FormState } from "./state.js";
import type { BadgeRow, CriterionDoc, FindingDoc, RubricDoc } from "./types.js";

const NA_VALUE = "__not_applicable__";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function selectedValue(state: FormState, criterionId: string): string {
  const selection = state.selection(criterionId);
  if (!selection) return "";
  return selection.kind === "na" ? NA_VALUE : selection.key;
}

function renderCriterion(state: FormState, crit: CriterionDoc): string {
  const auto = state.isAutoNotApplicable(crit.criterion_id);
  const value = auto ? NA_VALUE : selectedValue(state, crit.criterion_id);
  const options = [`<option value=""${value === "" ? " selected" : ""}>Select...</option>`];
  for (const opt of crit.options) {
    const selected = value === opt.key ? " selected" : "";
    options.push(`<option value="${escapeHtml(opt.key)}"${selected}>${escapeHtml(opt.label)}</option>`);
  }
  if (auto || state.allowsExplicitNotApplicable(crit.criterion_id)) {
    const selected = value === NA_VALUE ? " selected" : "";
    options.push(`<option value="${NA_VALUE}"${selected}>Not applicable</option>`);
  }
  return [
    `<div class="criterion" data-criterion="${escapeHtml(crit.criterion_id)}">`,
    `<label for="sel-${escapeHtml(crit.criterion_id)}">${escapeHtml(crit.name)}</label>`,
    `<p class="hint">${escapeHtml(crit.description)}</p>`,
    `<select id="sel-${escapeHtml(crit.criterion_id)}" data-criterion="${escapeHtml(crit.criterion_id)}"${auto ? " disabled" : ""}>`,
    ...options,
    `</select>`,
    `<p class="finding" data-finding-for="${escapeHtml(crit.criterion_id)}"></p>`,
    `</div>`,
  ].join("\n");
}

export function renderMetaFields(state: FormState): string {
  const rows = [
    `<div class="meta-fields">`,
    `<label>Dataset name <input type="text" data-meta="datasetName" value="${escapeHtml(state.meta.datasetName)}"></label>`,
    `<label>Description <textarea data-meta="description">${escapeHtml(state.meta.description)}</textarea></label>`,
    `<label>Owner contact <input type="text" data-meta="ownerContact" value="${escapeHtml(state.meta.ownerContact)}"></label>`,
    `<label>Dataset version <input type="text" data-meta="datasetVersion" value="${escapeHtml(state.meta.datasetVersion)}"></label>`,
  ];
  rows.push(`<fieldset><legend>Document available?</legend>`);
  for (const area of state.rubric.areas) {
    const checked = state.meta.documentAvailable[area.area_id] ? " checked" : "";
    rows.push(
      `<label><input type="checkbox" data-doc-flag="${area.area_id}"${checked}> ${escapeHtml(area.title)}</label>`,
    );
  }
  rows.push(`</fieldset>`, `</div>`);
  return rows.join("\n");
}

export function renderForm(state: FormState): string {
  const rubric: RubricDoc = state.rubric;
  const parts = [renderMetaFields(state)];
  for (const area of rubric.areas) {
    parts.push(`<section class="area" data-area="${area.area_id}">`);
    parts.push(`<h2>${escapeHtml(area.title)} <span class="area-id">${area.area_id}</span></h2>`);
    let group: string | null = null;
    for (const crit of area.criteria) {
      if (crit.group && crit.group !== group) {
        parts.push(`<h3 class="group">${escapeHtml(crit.group)}</h3>`);
      }
      group = crit.group ?? group;
      parts.push(renderCriterion(state, crit));
    }
    parts.push(
      `<label class="remark">Evaluator remarks <textarea data-remark="${area.area_id}">${escapeHtml(state.meta.evaluatorRemarks[area.area_id] ?? "")}</textarea></label>`,
    );
    parts.push(`</section>`);
  }
  parts.push(
    `<label class="remark">Overall remarks <textarea data-remark="overall">${escapeHtml(state.meta.evaluatorRemarks["overall"] ?? "")}</textarea></label>`,
  );
  return parts.join("\n");
}

export function renderProgress(state: FormState): string {
  const percent = state.completeness();
  return [
    `<span class="completeness">${state.answeredCount()}/${state.requiredCount()} answered (${percent}%)</span>`,
    `<button id="submit" ${state.canSubmit() ? "" : "disabled "}type="button">Submit for scoring</button>`,
  ].join("\n");
}

export function renderBadges(rows: BadgeRow[]): string {
  if (rows.length === 0) return "";
  const parts = [`<table class="results"><thead><tr><th>Area</th><th>Score</th>`];
  const hasPrevious = rows.some((r) => r.previousScore !== undefined);
  if (hasPrevious) parts.push(`<th>Previous</th>`);
  parts.push(`</tr></thead><tbody>`);
  for (const row of rows) {
    parts.push(
      `<tr><td>${escapeHtml(row.title)}</td>` +
      `<td><span class="badge ${row.color}">${row.word}</span> ${row.score}</td>`,
    );
    if (hasPrevious) {
      parts.push(
        row.previousScore !== undefined
          ? `<td><span class="badge ${row.previousColor}">${row.previousWord}</span> ${row.previousScore}</td>`
          : `<td></td>`,
      );
    }
    parts.push(`</tr>`);
  }
  parts.push(`</tbody></table>`);
  return parts.join("");
}

export function renderFindings(findings: FindingDoc[]): string {
  if (findings.length === 0) return "";
  const items = findings.map(
    (f) => `<li class="${f.severity}">${escapeHtml(f.path)}: ${escapeHtml(f.message)}</li>`,
  );
  return `<ul class="findings">${items.join("")}</ul>`;
}
