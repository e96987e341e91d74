/**
 * DOM wiring: connects the controller to the page.
 */

import { ApiClient } from "./api";
import { WhatIfController } from "./controller";
import { renderFindingsPanel, renderGraphSvg } from "./view";
import type { SatisfactionLabel } from "./types";

const LEVELS: SatisfactionLabel[] = [
  "Satisfied",
  "WeaklySatisfied",
  "None",
  "WeaklyDenied",
  "Denied",
];

export async function start(root: HTMLElement, baseUrl = ""): Promise<void> {
  const api = new ApiClient(baseUrl);
  const controller = new WhatIfController(api);

  root.innerHTML = `
    <header>
      <select id="persona-select"></select>
      <select id="level-select" disabled>
        <option value="">set satisfaction&#8230;</option>
        ${LEVELS.map((l) => `<option value="${l}">${l}</option>`).join("")}
      </select>
      <button id="clear-overrides">clear overrides</button>
      <span id="error-notice" class="error"></span>
    </header>
    <main>
      <section id="graph"></section>
      <aside id="findings"></aside>
    </main>
  `;

  const personaSelect = root.querySelector<HTMLSelectElement>("#persona-select")!;
  const levelSelect = root.querySelector<HTMLSelectElement>("#level-select")!;
  const clearButton = root.querySelector<HTMLButtonElement>("#clear-overrides")!;
  const graphHost = root.querySelector<HTMLElement>("#graph")!;
  const findingsHost = root.querySelector<HTMLElement>("#findings")!;
  const errorNotice = root.querySelector<HTMLElement>("#error-notice")!;

  controller.subscribe((state) => {
    graphHost.innerHTML = renderGraphSvg(state);
    findingsHost.innerHTML = renderFindingsPanel(state.findings);
    errorNotice.textContent = state.errorNotice ?? "";
    levelSelect.disabled = state.selectedNode === null;

    for (const nodeEl of graphHost.querySelectorAll<SVGGElement>("g.node")) {
      nodeEl.addEventListener("click", () => {
        controller.selectNode(nodeEl.dataset.node ?? null);
      });
    }
    for (const item of findingsHost.querySelectorAll<HTMLElement>(".finding")) {
      item.addEventListener("click", () => {
        const index = Number(item.dataset.finding);
        controller.highlightFinding(state.findings[index]);
      });
    }
  });

  levelSelect.addEventListener("change", () => {
    const node = controller.getState().selectedNode;
    const label = levelSelect.value as SatisfactionLabel | "";
    levelSelect.value = "";
    if (node && label) void controller.setNodeSatisfaction(node, label);
  });
  clearButton.addEventListener("click", () => void controller.clearOverrides());
  personaSelect.addEventListener("change", () =>
    void controller.load(personaSelect.value),
  );

  const summary = await api.getSummary();
  personaSelect.innerHTML = summary.personas
    .map((p) => `<option value="${p}">${p}</option>`)
    .join("");
  if (summary.personas.length > 0) {
    await controller.load(summary.personas[0]);
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void start(document.getElementById("app")!);
}
