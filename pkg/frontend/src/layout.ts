/**
 * Client-side layered layout for the structural graph.
 *
 * The service supplies structure only; positions are computed here.
 * Nodes are placed on layers by contribution depth (sources low,
 * influenced goals above them), then spread horizontally.
 */

import type { EdgeView, NodeView } from "./types";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutResult {
  positions: Map<string, Point>;
  width: number;
  height: number;
}

export const NODE_WIDTH = 140;
export const NODE_HEIGHT = 48;
const H_GAP = 40;
const V_GAP = 80;
const MARGIN = 60;

/**
 * Longest-path layering that tolerates cycles by capping depth.
 */
function layerOf(
  name: string,
  incoming: Map<string, string[]>,
  memo: Map<string, number>,
  active: Set<string>,
): number {
  const known = memo.get(name);
  if (known !== undefined) return known;
  if (active.has(name)) return 0;
  active.add(name);
  let layer = 0;
  for (const source of incoming.get(name) ?? []) {
    layer = Math.max(layer, layerOf(source, incoming, memo, active) + 1);
  }
  active.delete(name);
  memo.set(name, layer);
  return layer;
}

export function layoutGraph(
  nodes: NodeView[],
  edges: EdgeView[],
): LayoutResult {
  const incoming = new Map<string, string[]>();
  for (const edge of edges) {
    const sources = incoming.get(edge.destination) ?? [];
    sources.push(edge.source);
    incoming.set(edge.destination, sources);
  }

  const memo = new Map<string, number>();
  const layers = new Map<number, string[]>();
  for (const node of nodes) {
    const layer = layerOf(node.name, incoming, memo, new Set());
    const entries = layers.get(layer) ?? [];
    entries.push(node.name);
    layers.set(layer, entries);
  }

  const layerCount = layers.size === 0 ? 1 : Math.max(...layers.keys()) + 1;
  const widest = Math.max(1, ...[...layers.values()].map((l) => l.length));
  const width = MARGIN * 2 + widest * (NODE_WIDTH + H_GAP);
  const height = MARGIN * 2 + layerCount * (NODE_HEIGHT + V_GAP);

  const positions = new Map<string, Point>();
  for (const [layer, names] of layers) {
    names.sort();
    const rowWidth = names.length * (NODE_WIDTH + H_GAP);
    names.forEach((name, index) => {
      positions.set(name, {
        x: (width - rowWidth) / 2 + index * (NODE_WIDTH + H_GAP) + NODE_WIDTH / 2,
        y: height - MARGIN - layer * (NODE_HEIGHT + V_GAP) - NODE_HEIGHT / 2,
      });
    });
  }
  return { positions, width, height };
}
