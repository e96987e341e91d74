/**
 * What-if session controller.
 *
 * Holds the latest service snapshot (nodes, edges, findings, revision)
 * and drives the mutation loop: every satisfaction change issues exactly
 * one PUT /strategy, then refetches scores and findings. On a service
 * failure the previous snapshot is restored and an error notice is set.
 * Responses older than the current revision are discarded.
 */

import { ApiClient } from "./api";
import type {
  EdgeView,
  FindingView,
  NodeView,
  SatisfactionLabel,
} from "./types";

export interface ViewState {
  revision: number;
  persona: string;
  nodes: NodeView[];
  edges: EdgeView[];
  findings: FindingView[];
  selectedNode: string | null;
  highlightedTrail: string[];
  errorNotice: string | null;
}

export type StateListener = (state: ViewState) => void;

function emptyState(): ViewState {
  return {
    revision: -1,
    persona: "",
    nodes: [],
    edges: [],
    findings: [],
    selectedNode: null,
    highlightedTrail: [],
    errorNotice: null,
  };
}

export class WhatIfController {
  private state: ViewState = emptyState();
  private listeners: StateListener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): ViewState {
    return this.state;
  }

  subscribe(listener: StateListener): void {
    this.listeners.push(listener);
  }

  private setState(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Load (or switch to) a persona's goal model plus current findings. */
  async load(persona: string): Promise<void> {
    const [model, findings] = await Promise.all([
      this.api.getGoalModel(persona),
      this.api.getFindings(),
    ]);
    if (model.revision < this.state.revision) return; // stale
    this.setState({
      revision: model.revision,
      persona,
      nodes: model.nodes,
      edges: model.edges,
      findings: findings.findings,
      errorNotice: null,
    });
  }

  selectNode(name: string | null): void {
    this.setState({ selectedNode: name, highlightedTrail: [] });
  }

  /** Highlight the witness trail of a finding in the graph. */
  highlightFinding(finding: FindingView): void {
    this.setState({ highlightedTrail: [...finding.trail] });
  }

  /**
   * Set a node's satisfaction level through the service.
   *
   * One PUT per call; the refreshed scores, colors, and findings all
   * come back from the service. A failure rolls the view back to the
   * state before the call.
   */
  async setNodeSatisfaction(
    node: string,
    label: SatisfactionLabel,
  ): Promise<void> {
    const before = this.state;
    try {
      const { revision } = await this.api.putStrategy(
        [{ goal: node, label }],
        true,
      );
      const [model, findings] = await Promise.all([
        this.api.getGoalModel(before.persona),
        this.api.getFindings(),
      ]);
      if (model.revision < revision || findings.revision < revision) {
        return; // stale refetch; a newer update owns the view
      }
      this.setState({
        revision: model.revision,
        nodes: model.nodes,
        edges: model.edges,
        findings: findings.findings,
        errorNotice: null,
      });
    } catch (error) {
      this.state = before;
      this.setState({
        errorNotice:
          error instanceof Error ? error.message : "service unavailable",
      });
    }
  }

  /** Drop every override and return to baseline scores. */
  async clearOverrides(): Promise<void> {
    const before = this.state;
    try {
      await this.api.clearStrategy();
      await this.load(before.persona);
    } catch (error) {
      this.state = before;
      this.setState({
        errorNotice:
          error instanceof Error ? error.message : "service unavailable",
      });
    }
  }
}
