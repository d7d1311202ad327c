// World (meters, y-up) <-> canvas (pixels, y-down) mapping.
// The backend fixes the scale at 0.2 m/px over a 500x500 px canvas;
// the y-flip is purely a drawing concern and lives only here.

export const CANVAS_SIZE_PX = 500;
export const WORLD_SIZE_M = 100;
export const METERS_PER_PIXEL = WORLD_SIZE_M / CANVAS_SIZE_PX; // 0.2

export interface ScreenPoint {
  px: number;
  py: number;
}

export interface WorldPoint {
  x: number;
  y: number;
}

export function worldToScreen(p: WorldPoint): ScreenPoint {
  return {
    px: p.x / METERS_PER_PIXEL,
    py: CANVAS_SIZE_PX - p.y / METERS_PER_PIXEL,
  };
}

export function screenToWorld(p: ScreenPoint): WorldPoint {
  return {
    x: p.px * METERS_PER_PIXEL,
    y: (CANVAS_SIZE_PX - p.py) * METERS_PER_PIXEL,
  };
}

export function metersToPixels(m: number): number {
  return m / METERS_PER_PIXEL;
}
