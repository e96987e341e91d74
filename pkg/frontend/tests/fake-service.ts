/**
 * In-memory stand-in for the analysis service, speaking the same wire
 * format over a FetchLike transport. Models the criterion fixture: a
 * belief B with a SomeNegative link to goal U, where U is linked to a
 * system goal that role R1 depends on role R2 for.
 */

import type { FetchLike } from "../src/api";
import type {
  FindingsPayload,
  GoalModelPayload,
  NodeView,
} from "../src/types";

const BASELINE_U: NodeView = {
  name: "U",
  shape: "hardGoal",
  color: "#ffff00",
  score: 0,
  label: "None",
  persona: "P",
};

const DENIED_U: NodeView = {
  name: "U",
  shape: "hardGoal",
  color: "#c58000",
  score: -50,
  label: "WeaklyDenied",
  persona: "P",
};

function beliefNode(score: number): NodeView {
  return {
    name: "B",
    shape: "belief",
    color: score >= 75 ? "#006400" : "#ffff00",
    score,
    label: score >= 75 ? "Satisfied" : "None",
    persona: "P",
  };
}

export class FakeService {
  revision = 0;
  putCount = 0;
  failNextPut = false;
  /** When set, reads report this revision instead of the real one. */
  staleReadRevision: number | null = null;
  private overrides = new Map<string, string>();

  private goalModel(): GoalModelPayload {
    const satisfied = this.overrides.get("B") === "Satisfied";
    return {
      revision: this.staleReadRevision ?? this.revision,
      personas: ["P"],
      nodes: [beliefNode(satisfied ? 100 : 0), satisfied ? DENIED_U : BASELINE_U],
      edges: [
        { source: "B", destination: "U", meansEnd: "means", strength: "SomeNegative" },
      ],
      dot: "digraph usergoals {}",
    };
  }

  private findings(): FindingsPayload {
    const denied = this.overrides.get("B") === "Satisfied";
    return {
      revision: this.staleReadRevision ?? this.revision,
      findings: denied
        ? [
            {
              dependency: { depender: "R1", dependee: "R2", dependum: "G" },
              dependum: "G",
              cause: "DeniedLinkedUserGoal",
              trail: ["G", "U"],
            },
          ]
        : [],
    };
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const respond = (status: number, body: unknown) => ({
      status,
      json: async () => body,
    });

    if (method === "PUT" && url.endsWith("/strategy")) {
      this.putCount += 1;
      if (this.failNextPut) {
        this.failNextPut = false;
        return respond(500, { detail: "service unavailable" });
      }
      const body = JSON.parse(init?.body ?? "{}") as {
        assignments: { goal: string; label: string }[];
        merge: boolean;
      };
      if (!body.merge) this.overrides.clear();
      for (const { goal, label } of body.assignments) {
        if (goal !== "B" && goal !== "U") {
          return respond(404, { detail: `unknown user goal: ${goal}` });
        }
        this.overrides.set(goal, label);
      }
      this.revision += 1;
      return respond(200, { revision: this.revision });
    }
    if (method === "DELETE" && url.endsWith("/strategy")) {
      this.overrides.clear();
      this.revision += 1;
      return respond(200, { revision: this.revision });
    }
    if (url.endsWith("/model/summary")) {
      return respond(200, {
        revision: this.revision,
        personas: ["P"],
        counts: { userGoals: 2 },
      });
    }
    if (url.includes("/personas/P/goal-model")) {
      return respond(200, this.goalModel());
    }
    if (url.endsWith("/findings")) {
      return respond(200, this.findings());
    }
    return respond(404, { detail: `no route: ${method} ${url}` });
  };
}
