// Form state: selections, metadata, completeness, drafts, and submissions.
// Pure data logic; no DOM access, so it is directly unit-testable.

import type {
  BadgeRow,
  CriterionDoc,
  EvaluationDoc,
  IntakeDoc,
  IntakeMeta,
  ResponseEntry,
  RubricDoc,
} from "./types.js";

export type Selection = { kind: "option"; key: string } | { kind: "na" };

export interface MetaState {
  datasetName: string;
  description: string;
  ownerContact: string;
  datasetVersion: string;
  documentAvailable: Record<string, boolean>;
  evaluatorRemarks: Record<string, string>;
}

const OVERALL = "overall";

interface DraftDoc {
  catalog: { id: string; version: string };
  meta: MetaState;
  selections: Record<string, Selection>;
  timestamp?: string;
  savedAt: string;
}

export class FormState {
  readonly rubric: RubricDoc;
  meta: MetaState;
  timestamp?: string;
  private selections = new Map<string, Selection>();
  /** Newest first; at most two entries for the before/after view. */
  submissions: EvaluationDoc[] = [];

  constructor(rubric: RubricDoc) {
    this.rubric = rubric;
    const documentAvailable: Record<string, boolean> = {};
    for (const area of rubric.areas) documentAvailable[area.area_id] = false;
    this.meta = {
      datasetName: "",
      description: "",
      ownerContact: "",
      datasetVersion: "",
      documentAvailable,
      evaluatorRemarks: {},
    };
  }

  // -- rubric lookups ------------------------------------------------------

  criterion(criterionId: string): CriterionDoc {
    for (const area of this.rubric.areas) {
      for (const crit of area.criteria) {
        if (crit.criterion_id === criterionId) return crit;
      }
    }
    throw new Error(`unknown criterion ${criterionId}`);
  }

  private areaOf(criterionId: string) {
    const areaId = criterionId.split(".")[0];
    const area = this.rubric.areas.find((a) => a.area_id === areaId);
    if (!area) throw new Error(`unknown area for ${criterionId}`);
    return area;
  }

  private statusCriterion(areaId: string): CriterionDoc | undefined {
    const area = this.rubric.areas.find((a) => a.area_id === areaId);
    return area?.criteria.find((c) => c.special_role === "preprocessing_status");
  }

  /** True while the area's preprocessing-status answer marks the data raw. */
  rawDataSelected(areaId: string): boolean {
    const status = this.statusCriterion(areaId);
    if (!status) return false;
    const selection = this.selections.get(status.criterion_id);
    if (!selection || selection.kind !== "option") return false;
    const option = status.options.find((o) => o.key === selection.key);
    return option !== undefined && option.score === -1;
  }

  /** Criteria that are forced to not-applicable by the raw short-circuit. */
  isAutoNotApplicable(criterionId: string): boolean {
    const crit = this.criterion(criterionId);
    if (crit.special_role === "preprocessing_status") return false;
    if (crit.applicability !== "conditional") return false;
    const area = this.areaOf(criterionId);
    if (!this.statusCriterion(area.area_id)) return false;
    return this.rawDataSelected(area.area_id);
  }

  allowsExplicitNotApplicable(criterionId: string): boolean {
    const crit = this.criterion(criterionId);
    if (crit.applicability !== "conditional") return false;
    const area = this.areaOf(criterionId);
    if (!this.statusCriterion(area.area_id)) return true;
    return this.rawDataSelected(area.area_id);
  }

  // -- selections ----------------------------------------------------------

  selection(criterionId: string): Selection | undefined {
    return this.selections.get(criterionId);
  }

  setOption(criterionId: string, key: string): void {
    const crit = this.criterion(criterionId);
    if (!crit.options.some((o) => o.key === key)) {
      throw new Error(`${criterionId} has no option ${key}`);
    }
    this.selections.set(criterionId, { kind: "option", key });
  }

  setNotApplicable(criterionId: string): void {
    if (!this.allowsExplicitNotApplicable(criterionId)) {
      throw new Error(`${criterionId} is always applicable`);
    }
    this.selections.set(criterionId, { kind: "na" });
  }

  clearSelection(criterionId: string): void {
    this.selections.delete(criterionId);
  }

  // -- completeness --------------------------------------------------------

  requiredCount(): number {
    let count = 0;
    for (const area of this.rubric.areas) count += area.criteria.length;
    return count;
  }

  answeredCount(): number {
    let count = 0;
    for (const area of this.rubric.areas) {
      for (const crit of area.criteria) {
        if (this.selections.has(crit.criterion_id) ||
            this.isAutoNotApplicable(crit.criterion_id)) {
          count += 1;
        }
      }
    }
    return count;
  }

  completeness(): number {
    return Math.round((100 * this.answeredCount()) / this.requiredCount());
  }

  canSubmit(): boolean {
    return this.answeredCount() === this.requiredCount() &&
      this.meta.datasetName.trim().length > 0;
  }

  // -- intake document -----------------------------------------------------

  buildIntakeDocument(): IntakeDoc {
    const documentAvailable: Record<string, boolean> = {};
    for (const area of this.rubric.areas) {
      documentAvailable[area.area_id] = this.meta.documentAvailable[area.area_id] ?? false;
    }
    const remarks: Record<string, string> = {};
    for (const area of this.rubric.areas) {
      const text = this.meta.evaluatorRemarks[area.area_id];
      if (text) remarks[area.area_id] = text;
    }
    if (this.meta.evaluatorRemarks[OVERALL]) {
      remarks[OVERALL] = this.meta.evaluatorRemarks[OVERALL];
    }
    // key order matches the engine's canonical serialization byte for byte
    const meta: IntakeMeta = {
      dataset_name: this.meta.datasetName,
      description: this.meta.description,
      ...(this.meta.ownerContact ? { owner_contact: this.meta.ownerContact } : {}),
      ...(this.meta.datasetVersion ? { dataset_version: this.meta.datasetVersion } : {}),
      document_available: documentAvailable,
      ...(Object.keys(remarks).length > 0 ? { evaluator_remarks: remarks } : {}),
    };

    const responses: Record<string, ResponseEntry> = {};
    for (const area of this.rubric.areas) {
      for (const crit of area.criteria) {
        const selection = this.selections.get(crit.criterion_id);
        if (selection?.kind === "option") {
          responses[crit.criterion_id] = { option: selection.key };
        } else if (selection?.kind === "na" || this.isAutoNotApplicable(crit.criterion_id)) {
          responses[crit.criterion_id] = { not_applicable: true };
        } else {
          responses[crit.criterion_id] = { option: null };
        }
      }
    }

    const doc: IntakeDoc = {
      catalog: { id: this.rubric.catalog_id, version: this.rubric.version },
      meta,
      responses,
    };
    if (this.timestamp) doc.timestamp = this.timestamp;
    return doc;
  }

  /** Intake file bytes, byte-compatible with the CLI's canonical output. */
  exportJson(): string {
    return JSON.stringify(this.buildIntakeDocument(), null, 2) + "\n";
  }

  importIntake(text: string): void {
    const doc = JSON.parse(text) as IntakeDoc;
    if (!doc.catalog || doc.catalog.id !== this.rubric.catalog_id ||
        doc.catalog.version !== this.rubric.version) {
      throw new Error(
        `intake targets catalog ${doc.catalog?.id} ${doc.catalog?.version}, ` +
        `form uses ${this.rubric.catalog_id} ${this.rubric.version}`,
      );
    }
    this.meta.datasetName = doc.meta?.dataset_name ?? "";
    this.meta.description = doc.meta?.description ?? "";
    this.meta.ownerContact = doc.meta?.owner_contact ?? "";
    this.meta.datasetVersion = doc.meta?.dataset_version ?? "";
    for (const area of this.rubric.areas) {
      this.meta.documentAvailable[area.area_id] =
        doc.meta?.document_available?.[area.area_id] ?? false;
    }
    this.meta.evaluatorRemarks = { ...(doc.meta?.evaluator_remarks ?? {}) };
    this.timestamp = doc.timestamp;
    this.selections.clear();
    for (const [criterionId, entry] of Object.entries(doc.responses ?? {})) {
      if ("not_applicable" in entry && entry.not_applicable) {
        this.selections.set(criterionId, { kind: "na" });
      } else if ("option" in entry && entry.option !== null) {
        this.setOption(criterionId, entry.option);
      }
    }
  }

  // -- drafts --------------------------------------------------------------

  toDraft(): string {
    const selections: Record<string, Selection> = {};
    for (const [criterionId, selection] of this.selections) {
      selections[criterionId] = selection;
    }
    const draft: DraftDoc = {
      catalog: { id: this.rubric.catalog_id, version: this.rubric.version },
      meta: this.meta,
      selections,
      timestamp: this.timestamp,
      savedAt: new Date().toISOString(),
    };
    return JSON.stringify(draft);
  }

  loadDraft(text: string): void {
    const draft = JSON.parse(text) as DraftDoc;
    if (draft.catalog.id !== this.rubric.catalog_id ||
        draft.catalog.version !== this.rubric.version) {
      throw new Error(
        `draft was saved for catalog ${draft.catalog.id} ${draft.catalog.version}, ` +
        `form uses ${this.rubric.catalog_id} ${this.rubric.version}`,
      );
    }
    this.meta = { ...this.meta, ...draft.meta };
    this.timestamp = draft.timestamp;
    this.selections.clear();
    for (const [criterionId, selection] of Object.entries(draft.selections)) {
      if (selection.kind === "option") this.setOption(criterionId, selection.key);
      else this.selections.set(criterionId, selection);
    }
  }

  // -- submissions (what-if view) ------------------------------------------

  recordSubmission(evaluation: EvaluationDoc): void {
    this.submissions = [evaluation, ...this.submissions].slice(0, 2);
  }

  badgeRows(): BadgeRow[] {
    const [current, previous] = this.submissions;
    if (!current) return [];
    return current.areas.map((area) => {
      const row: BadgeRow = {
        areaId: area.area_id,
        title: area.title,
        score: area.display_score,
        color: area.color,
        word: area.color.charAt(0).toUpperCase() + area.color.slice(1),
      };
      const before = previous?.areas.find((a) => a.area_id === area.area_id);
      if (before) {
        row.previousScore = before.display_score;
        row.previousColor = before.color;
        row.previousWord = before.color.charAt(0).toUpperCase() + before.color.slice(1);
      }
      return row;
    });
  }
}
