// Form validation: every user action yields exactly one command or one
// inline validation error, mirroring the service's 4xx rules.

import { WORLD_SIZE_M } from "./coords.js";
import type { Command, ObstacleKind } from "./types.js";

const KINDS: ObstacleKind[] = ["wall", "glass", "wood", "iron"];

export interface ObstacleFormInput {
  kind: string;
  orientation: string;
  x: number;
  y: number;
  length: number;
}

export type FormResult =
  | { ok: true; command: Command }
  | { ok: false; error: string };

export function obstacleFormSubmit(input: ObstacleFormInput, id: string): FormResult {
  if (!KINDS.includes(input.kind as ObstacleKind)) {
    return { ok: false, error: `unknown obstacle kind "${input.kind}"` };
  }
  if (input.orientation !== "horizontal" && input.orientation !== "vertical") {
    return { ok: false, error: `orientation must be horizontal or vertical` };
  }
  if (!(input.length > 0)) {
    return { ok: false, error: "length must be > 0" };
  }
  const endX = input.orientation === "horizontal" ? input.x + input.length : input.x;
  const endY = input.orientation === "vertical" ? input.y + input.length : input.y;
  for (const [cx, cy] of [[input.x, input.y], [endX, endY]]) {
    if (!(cx >= 0 && cx <= WORLD_SIZE_M && cy >= 0 && cy <= WORLD_SIZE_M)) {
      return { ok: false, error: `obstacle leaves the ${WORLD_SIZE_M} m world` };
    }
  }
  return {
    ok: true,
    command: {
      type: "add_obstacle",
      id,
      kind: input.kind as ObstacleKind,
      orientation: input.orientation,
      x: input.x,
      y: input.y,
      length: input.length,
    },
  };
}

// `value` is the raw editor input; null means the editor was cancelled.
export function rangeEditSubmit(readerId: string, value: string | null): FormResult | null {
  if (value === null) return null;
  const range = Number(value);
  if (!Number.isFinite(range) || range <= 0) {
    return { ok: false, error: "range must be a positive number of meters" };
  }
  return { ok: true, command: { type: "set_reader_range", id: readerId, range } };
}

export function moveTagSubmit(tagId: string, x: number, y: number): FormResult {
  if (!(x >= 0 && x <= WORLD_SIZE_M && y >= 0 && y <= WORLD_SIZE_M)) {
    return { ok: false, error: "target outside the world" };
  }
  return { ok: true, command: { type: "move_tag", id: tagId, x, y } };
}
