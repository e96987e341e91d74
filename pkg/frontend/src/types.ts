/**
 * Wire types mirroring the analysis service payloads.
 *
 * The UI never recomputes scores, labels, or colors: everything shown
 * comes verbatim from these payloads.
 */

export type NodeShape = "hardGoal" | "softGoal" | "belief" | "task";

export type SatisfactionLabel =
  | "Satisfied"
  | "WeaklySatisfied"
  | "None"
  | "WeaklyDenied"
  | "Denied";

export interface NodeView {
  name: string;
  shape: NodeShape;
  color: string;
  score: number;
  label: string;
  persona: string;
}

export interface EdgeView {
  source: string;
  destination: string;
  meansEnd: "means" | "end";
  strength: string;
}

export interface GoalModelPayload {
  revision: number;
  personas: string[];
  nodes: NodeView[];
  edges: EdgeView[];
  dot: string;
}

export interface FindingDependency {
  depender: string;
  dependee: string;
  dependum: string;
}

export interface FindingView {
  dependency: FindingDependency;
  dependum: string;
  cause: "ObstructedDependum" | "DeniedLinkedUserGoal";
  trail: string[];
}

export interface FindingsPayload {
  revision: number;
  findings: FindingView[];
}

export interface ModelSummary {
  revision: number;
  personas: string[];
  counts: Record<string, number>;
}

export interface StrategyAssignment {
  goal: string;
  label: SatisfactionLabel;
}
