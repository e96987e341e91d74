/**
 * Thin typed client for the analysis service routes.
 */

import type {
  FindingsPayload,
  GoalModelPayload,
  ModelSummary,
  StrategyAssignment,
} from "./types";

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(
    path: string,
    method = "GET",
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status >= 400) {
      let detail = `${method} ${path} failed with status ${response.status}`;
      try {
        const payload = (await response.json()) as { detail?: string };
        if (payload.detail) detail = payload.detail;
      } catch {
        // keep the generic message
      }
      throw new ServiceError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  getSummary(): Promise<ModelSummary> {
    return this.request("/model/summary");
  }

  getGoalModel(persona: string): Promise<GoalModelPayload> {
    return this.request(`/personas/${encodeURIComponent(persona)}/goal-model`);
  }

  putStrategy(
    assignments: StrategyAssignment[],
    merge = true,
  ): Promise<{ revision: number }> {
    return this.request("/strategy", "PUT", { assignments, merge });
  }

  clearStrategy(): Promise<{ revision: number }> {
    return this.request("/strategy", "DELETE");
  }

  getFindings(): Promise<FindingsPayload> {
    return this.request("/findings");
  }

  reloadModel(): Promise<{ revision: number }> {
    return this.request("/model/reload", "POST");
  }
}
