// Pure scene construction: ViewState -> list of draw primitives.
// Keeping this free of canvas calls makes the render goldens testable;
// painter.ts replays the primitives onto a real 2D context.

import { metersToPixels, worldToScreen, CANVAS_SIZE_PX } from "./coords.js";
import type { ObstacleKind, Snapshot } from "./types.js";

export interface ObstacleDraft {
  kind: ObstacleKind;
  orientation: "horizontal" | "vertical";
  x: number;
  y: number;
  length: number;
}

export interface ViewState {
  snapshot: Snapshot | null;
  visualize: boolean;
  selection: { type: "reader" | "tag" | "obstacle"; id: string } | null;
  draft: ObstacleDraft | null;
  autoRunTicksPerSecond: number;
}

export type Shape =
  | { kind: "circle"; cx: number; cy: number; r: number; stroke: string; width: number }
  | { kind: "line"; x1: number; y1: number; x2: number; y2: number; stroke: string; width: number; dash?: number[] }
  | { kind: "marker"; shape: "square" | "dot" | "cross"; cx: number; cy: number; size: number; color: string; tag?: string }
  | { kind: "label"; x: number; y: number; text: string; color: string };

const MATERIAL_COLORS: Record<string, string> = {
  "Thin Wall": "#8d6e63",
  Glass: "#4fc3f7",
  "Tree structure": "#66bb6a",
  "Iron door": "#78909c",
};

export function materialColor(material: string): string {
  return MATERIAL_COLORS[material] ?? "#9e9e9e";
}

export function renderWorld(view: ViewState): Shape[] {
  const shapes: Shape[] = [];
  const snap = view.snapshot;
  if (!snap) return shapes;

  for (const obs of snap.obstacles) {
    const a = worldToScreen({ x: obs.x, y: obs.y });
    const b = worldToScreen(
      obs.orientation === "horizontal"
        ? { x: obs.x + obs.length, y: obs.y }
        : { x: obs.x, y: obs.y + obs.length },
    );
    shapes.push({
      kind: "line",
      x1: a.px, y1: a.py, x2: b.px, y2: b.py,
      stroke: materialColor(obs.material),
      width: 4,
    });
  }

  if (view.draft && view.draft.length > 0) {
    const a = worldToScreen({ x: view.draft.x, y: view.draft.y });
    const b = worldToScreen(
      view.draft.orientation === "horizontal"
        ? { x: view.draft.x + view.draft.length, y: view.draft.y }
        : { x: view.draft.x, y: view.draft.y + view.draft.length },
    );
    shapes.push({
      kind: "line",
      x1: a.px, y1: a.py, x2: b.px, y2: b.py,
      stroke: "#bdbdbd", width: 2, dash: [4, 4],
    });
  }

  const selectedByTag = new Map<string, Set<string>>();
  const measuredByTag = new Map<string, Map<string, number>>();
  for (const rec of snap.records) {
    selectedByTag.set(rec.tag_id, new Set(rec.selected));
    measuredByTag.set(
      rec.tag_id,
      new Map(rec.measurements.map((m) => [m.reader_id, m.distance])),
    );
  }

  for (const reader of snap.readers) {
    const p = worldToScreen({ x: reader.x, y: reader.y });
    if (view.visualize) {
      shapes.push({
        kind: "circle",
        cx: p.px, cy: p.py,
        r: metersToPixels(reader.range),
        stroke: "#90caf9",
        width: 1,
      });
      for (const tag of snap.tags) {
        const selected = selectedByTag.get(tag.id);
        if (!selected || !selected.has(reader.id)) continue;
        const measured = measuredByTag.get(tag.id)?.get(reader.id);
        if (measured === undefined) continue;
        const t = worldToScreen({ x: tag.x, y: tag.y });
        const dx = t.px - p.px;
        const dy = t.py - p.py;
        const len = Math.hypot(dx, dy) || 1;
        const drawLen = metersToPixels(measured);
        shapes.push({
          kind: "line",
          x1: p.px, y1: p.py,
          x2: p.px + (dx / len) * drawLen,
          y2: p.py + (dy / len) * drawLen,
          stroke: "#ef9a9a",
          width: 1,
        });
      }
    }
    shapes.push({
      kind: "marker", shape: "square",
      cx: p.px, cy: p.py, size: 10, color: "#1565c0", tag: reader.id,
    });
    shapes.push({ kind: "label", x: p.px + 8, y: p.py - 8, text: reader.id, color: "#1565c0" });
  }

  for (const tag of snap.tags) {
    const p = worldToScreen({ x: tag.x, y: tag.y });
    shapes.push({
      kind: "marker", shape: "dot",
      cx: p.px, cy: p.py, size: 6, color: "#2e7d32", tag: `${tag.id}:true`,
    });
    if (tag.estimate !== null) {
      const e = worldToScreen({ x: tag.estimate[0], y: tag.estimate[1] });
      shapes.push({
        kind: "marker", shape: "cross",
        cx: e.px, cy: e.py, size: 8, color: "#c62828", tag: `${tag.id}:estimate`,
      });
    }
  }

  return shapes;
}

export function hitTestReader(
  snap: Snapshot,
  px: number,
  py: number,
  radiusPx = 12,
): string | null {
  for (const reader of snap.readers) {
    const p = worldToScreen({ x: reader.x, y: reader.y });
    if (Math.hypot(p.px - px, p.py - py) <= radiusPx) return reader.id;
  }
  return null;
}

export function emptyView(): ViewState {
  return {
    snapshot: null,
    visualize: false,
    selection: null,
    draft: null,
    autoRunTicksPerSecond: 0,
  };
}

export { CANVAS_SIZE_PX };
