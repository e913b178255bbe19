// Browser wiring: fetch the rubric, render the form, submit intakes, and
// show scores. All scoring happens server-side; this file only moves data
// between the DOM, FormState, and the HTTP API.

import { FormState } from "./state.js";
import { renderBadges, renderFindings, renderForm, renderProgress } from "./render.js";
import type { EvaluationDoc, FindingDoc, RubricDoc } from "./types.js";

const NA_VALUE = "__not_applicable__";
const DRAFT_KEY = "datascorecard-draft";

let state: FormState;
let submitting = false;

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function refreshForm(): void {
  element("form").innerHTML = renderForm(state);
  refreshProgress();
}

function refreshProgress(): void {
  element("progress").innerHTML = renderProgress(state);
  element<HTMLButtonElement>("submit").onclick = () => void submit();
  const submitButton = element<HTMLButtonElement>("submit");
  submitButton.disabled = submitting || !state.canSubmit();
}

function refreshResults(): void {
  element("results").innerHTML = renderBadges(state.badgeRows());
  element("download").hidden = state.submissions.length === 0;
}

function banner(text: string, isError = true): void {
  const box = element("banner");
  box.textContent = text;
  box.className = text ? (isError ? "banner error" : "banner") : "";
}

function clearInlineFindings(): void {
  document.querySelectorAll<HTMLElement>("[data-finding-for]").forEach((node) => {
    node.textContent = "";
  });
}

function showInlineFindings(findings: FindingDoc[]): void {
  clearInlineFindings();
  const leftover: FindingDoc[] = [];
  for (const finding of findings) {
    const slot = document.querySelector<HTMLElement>(
      `[data-finding-for="${finding.path}"]`,
    );
    if (slot) slot.textContent = finding.message;
    else leftover.push(finding);
  }
  element("findings").innerHTML = renderFindings(leftover);
}

async function submit(): Promise<void> {
  if (submitting || !state.canSubmit()) return;
  submitting = true;
  refreshProgress();
  banner("");
  try {
    const response = await fetch("/api/v1/score", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: state.exportJson(),
    });
    if (response.ok) {
      const evaluation = (await response.json()) as EvaluationDoc;
      state.recordSubmission(evaluation);
      clearInlineFindings();
      element("findings").innerHTML = "";
      refreshResults();
    } else {
      const body = await response.json();
      showInlineFindings((body.findings as FindingDoc[]) ?? []);
      banner(`Submission rejected (${body.code}).`);
    }
  } catch {
    banner("Service unreachable; try again.");
  } finally {
    submitting = false;
    refreshProgress();
  }
}

async function downloadScorecard(): Promise<void> {
  const response = await fetch("/api/v1/scorecard?format=markdown", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: state.exportJson(),
  });
  if (!response.ok) {
    banner("Could not render the scorecard.");
    return;
  }
  saveFile(await response.text(), "scorecard.md", "text/markdown");
}

function saveFile(content: string, filename: string, type: string): void {
  const link = document.createElement("a");
  link.href = URL.createObjectURL(new Blob([content], { type }));
  link.download = filename;
  link.click();
  URL.revokeObjectURL(link.href);
}

function wireEvents(): void {
  element("form").addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    if (target instanceof HTMLSelectElement && target.dataset.criterion) {
      const criterionId = target.dataset.criterion;
      const wasRaw = state.rawDataSelected(criterionId.split(".")[0]);
      if (target.value === "") state.clearSelection(criterionId);
      else if (target.value === NA_VALUE) state.setNotApplicable(criterionId);
      else state.setOption(criterionId, target.value);
      // status flips re-render the whole area so auto-disabled selects update
      if (state.rawDataSelected(criterionId.split(".")[0]) !== wasRaw) refreshForm();
      else refreshProgress();
    } else if (target instanceof HTMLInputElement && target.dataset.docFlag) {
      state.meta.documentAvailable[target.dataset.docFlag] = target.checked;
    } else if (target instanceof HTMLTextAreaElement && target.dataset.remark) {
      state.meta.evaluatorRemarks[target.dataset.remark] = target.value;
    } else if (target instanceof HTMLInputElement || target instanceof HTMLTextAreaElement) {
      const field = target.dataset.meta;
      if (field === "datasetName") state.meta.datasetName = target.value;
      if (field === "description") state.meta.description = target.value;
      if (field === "ownerContact") state.meta.ownerContact = target.value;
      if (field === "datasetVersion") state.meta.datasetVersion = target.value;
      refreshProgress();
    }
  });

  element("download").onclick = () => void downloadScorecard();
  element("export").onclick = () =>
    saveFile(state.exportJson(), "dataset.intake.json", "application/json");

  element<HTMLInputElement>("import").onchange = async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      state.importIntake(await file.text());
      refreshForm();
      banner("Intake imported.", false);
    } catch (error) {
      banner(String(error));
    }
    input.value = "";
  };

  element("save-draft").onclick = () => {
    localStorage.setItem(DRAFT_KEY, state.toDraft());
    banner("Draft saved locally.", false);
  };
  element("load-draft").onclick = () => {
    const draft = localStorage.getItem(DRAFT_KEY);
    if (!draft) return; // nothing stored: no-op
    try {
      state.loadDraft(draft);
      refreshForm();
      banner("Draft restored.", false);
    } catch (error) {
      banner(String(error));
    }
  };
}

async function boot(): Promise<void> {
  try {
    const response = await fetch("/api/v1/rubric");
    if (!response.ok) throw new Error(`rubric fetch failed: ${response.status}`);
    const rubric = (await response.json()) as RubricDoc;
    state = new FormState(rubric);
    wireEvents();
    refreshForm();
    refreshResults();
  } catch (error) {
    banner(`Cannot load the rubric (${String(error)}). Retry?`);
    const box = element("banner");
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.onclick = () => void boot();
    box.appendChild(retry);
  }
}

void boot();
