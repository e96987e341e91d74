/**
 * Pure SVG/HTML rendering of the goal graph and findings panel.
 *
 * Shapes follow the GRL visual semantics: a rounded box for a hard
 * goal, a rounded polygon for a soft goal, an ellipse for a belief,
 * a hexagon for a task, and a dashed rectangle for the persona's
 * actor boundary. Fill colors are used exactly as delivered by the
 * service.
 */

import { layoutGraph, NODE_HEIGHT, NODE_WIDTH } from "./layout";
import type { Point } from "./layout";
import type { ViewState } from "./controller";
import type { FindingView } from "./types";

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function polygonPoints(center: Point, corners: Point[]): string {
  return corners
    .map((p) => `${center.x + p.x},${center.y + p.y}`)
    .join(" ");
}

function shapeSvg(
  shape: string,
  center: Point,
  color: string,
  emphasized: boolean,
): string {
  const w = NODE_WIDTH / 2;
  const h = NODE_HEIGHT / 2;
  const stroke = emphasized ? 'stroke="#1d4ed8" stroke-width="3"' : 'stroke="#444"';
  switch (shape) {
    case "softGoal":
      return `<polygon points="${polygonPoints(center, [
        { x: -w + 14, y: -h },
        { x: w - 14, y: -h },
        { x: w, y: 0 },
        { x: w - 14, y: h },
        { x: -w + 14, y: h },
        { x: -w, y: 0 },
      ])}" stroke-linejoin="round" fill="${color}" ${stroke} />`;
    case "belief":
      return `<ellipse cx="${center.x}" cy="${center.y}" rx="${w}" ry="${h}" fill="${color}" ${stroke} />`;
    case "task":
      return `<polygon points="${polygonPoints(center, [
        { x: -w + 18, y: -h },
        { x: w - 18, y: -h },
        { x: w, y: 0 },
        { x: w - 18, y: h },
        { x: -w + 18, y: h },
        { x: -w, y: 0 },
      ])}" fill="${color}" ${stroke} />`;
    default: // hardGoal
      return `<rect x="${center.x - w}" y="${center.y - h}" width="${NODE_WIDTH}" height="${NODE_HEIGHT}" rx="10" fill="${color}" ${stroke} />`;
  }
}

/** Render the full goal graph as an SVG document string. */
export function renderGraphSvg(state: ViewState): string {
  const { positions, width, height } = layoutGraph(state.nodes, state.edges);
  const highlighted = new Set(state.highlightedTrail);
  const parts: string[] = [];

  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">`,
  );

  // Actor boundary around the persona's own elements (tasks sit outside).
  const personaNodes = state.nodes.filter((n) => n.persona === state.persona);
  if (personaNodes.length > 0) {
    const points = personaNodes.map((n) => positions.get(n.name)!);
    const minX = Math.min(...points.map((p) => p.x)) - NODE_WIDTH;
    const maxX = Math.max(...points.map((p) => p.x)) + NODE_WIDTH;
    const minY = Math.min(...points.map((p) => p.y)) - NODE_HEIGHT * 1.5;
    const maxY = Math.max(...points.map((p) => p.y)) + NODE_HEIGHT * 1.5;
    parts.push(
      `<rect class="actor-boundary" x="${minX}" y="${minY}" width="${maxX - minX}" height="${maxY - minY}" fill="none" stroke="#888" stroke-dasharray="8 6" />`,
      `<text x="${minX + 12}" y="${minY + 22}" font-style="italic">${escapeXml(state.persona)}</text>`,
    );
  }

  for (const edge of state.edges) {
    const from = positions.get(edge.source);
    const to = positions.get(edge.destination);
    if (!from || !to) continue;
    const midX = (from.x + to.x) / 2;
    const midY = (from.y + to.y) / 2;
    parts.push(
      `<line class="edge" x1="${from.x}" y1="${from.y}" x2="${to.x}" y2="${to.y}" stroke="#666" marker-end="url(#arrow)" />`,
      `<text class="edge-label" x="${midX}" y="${midY - 6}" text-anchor="middle" font-size="11">${escapeXml(edge.strength)}</text>`,
    );
  }

  for (const node of state.nodes) {
    const center = positions.get(node.name)!;
    const emphasized =
      node.name === state.selectedNode || highlighted.has(node.name);
    parts.push(
      `<g class="node" data-node="${escapeXml(node.name)}" data-score="${node.score}">`,
      shapeSvg(node.shape, center, node.color, emphasized),
      `<text x="${center.x}" y="${center.y - 2}" text-anchor="middle" font-size="11">${escapeXml(node.name)}</text>`,
      `<text x="${center.x}" y="${center.y + 14}" text-anchor="middle" font-size="10">${node.score} (${escapeXml(node.label)})</text>`,
      "</g>",
    );
  }

  parts.push(
    '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#666" /></marker></defs>',
    "</svg>",
  );
  return parts.join("\n");
}

/** Render the findings list; each entry carries its index for clicks. */
export function renderFindingsPanel(findings: FindingView[]): string {
  if (findings.length === 0) {
    return '<p class="empty">No implicit vulnerabilities.</p>';
  }
  const items = findings.map((finding, index) => {
    const dep = finding.dependency;
    return (
      `<li class="finding" data-finding="${index}">` +
      `<strong>${escapeXml(finding.cause)}</strong> ` +
      `${escapeXml(dep.depender)} &#8594; ${escapeXml(dep.dependee)} ` +
      `for <em>${escapeXml(finding.dependum)}</em>` +
      `<br /><small>${finding.trail.map(escapeXml).join(" &#8594; ")}</small>` +
      "</li>"
    );
  });
  return `<ul class="findings">${items.join("")}</ul>`;
}
