// Wire types mirroring the service's JSON formats.

export interface OptionDoc {
  key: string;
  label: string;
  score: number; // held in memory only; never rendered before submission
  recommendation_key: string | null;
}

export interface CriterionDoc {
  criterion_id: string;
  name: string;
  description: string;
  applicability: "always" | "conditional";
  special_role: "none" | "preprocessing_status";
  group: string | null;
  options: OptionDoc[];
}

export interface AreaDoc {
  area_id: string;
  title: string;
  criteria: CriterionDoc[];
}

export interface RubricDoc {
  catalog_id: string;
  version: string;
  areas: AreaDoc[];
}

export type ResponseEntry = { option: string | null } | { not_applicable: true };

export interface IntakeMeta {
  dataset_name: string;
  description: string;
  owner_contact?: string;
  dataset_version?: string;
  document_available: Record<string, boolean>;
  evaluator_remarks?: Record<string, string>;
}

export interface IntakeDoc {
  catalog: { id: string; version: string };
  meta: IntakeMeta;
  responses: Record<string, ResponseEntry>;
  timestamp?: string;
}

export interface FindingDoc {
  severity: "error" | "warning";
  code: string;
  path: string;
  message: string;
}

export interface AreaEvaluationDoc {
  area_id: string;
  title: string;
  applicable_count: number;
  exact_score: string;
  display_score: string;
  color: "red" | "yellow" | "green";
  short_circuited: boolean;
  findings: {
    criterion_id: string;
    option: string | null;
    not_applicable: boolean;
    score: number | null;
  }[];
}

export interface EvaluationDoc {
  catalog: { id: string; version: string };
  meta: IntakeMeta;
  timestamp: string;
  areas: AreaEvaluationDoc[];
}

export interface BadgeRow {
  areaId: string;
  title: string;
  score: string;
  color: string;
  word: string;
  previousScore?: string;
  previousColor?: string;
  previousWord?: string;
}
