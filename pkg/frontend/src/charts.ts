// Chart models fed exclusively by snapshots: no physics is recomputed
// on the client, every number displayed is a snapshot field.

import type { Snapshot } from "./types.js";

export interface ErrorPoint {
  tick: number;
  error: number | null; // null = NoFix gap
}

export class ErrorChart {
  readonly series = new Map<string, ErrorPoint[]>();

  append(snap: Snapshot): void {
    for (const rec of snap.records) {
      let points = this.series.get(rec.tag_id);
      if (!points) {
        points = [];
        this.series.set(rec.tag_id, points);
      }
      const last = points[points.length - 1];
      if (last && last.tick >= rec.tick) continue; // command snapshots repeat the last tick
      points.push({ tick: rec.tick, error: rec.error });
    }
  }

  reset(): void {
    this.series.clear();
  }
}

export interface DistanceRow {
  reader_id: string;
  real: number;
  calculated: number;
  in_range: boolean;
  selected: boolean;
}

export function distanceTable(snap: Snapshot, tagId: string): DistanceRow[] {
  const rec = snap.records.find((r) => r.tag_id === tagId);
  if (!rec) return [];
  const selected = new Set(rec.selected);
  return rec.measurements.map((m) => ({
    reader_id: m.reader_id,
    real: m.true_distance,
    calculated: m.distance,
    in_range: m.in_range,
    selected: selected.has(m.reader_id),
  }));
}

export interface Polyline {
  tagId: string;
  // one run of consecutive fixes; gaps split the line into several runs
  runs: { x: number; y: number }[][];
}

export function errorPolylines(
  chart: ErrorChart,
  width: number,
  height: number,
  maxPoints = 300,
): Polyline[] {
  const out: Polyline[] = [];
  for (const [tagId, allPoints] of chart.series) {
    const points = allPoints.slice(-maxPoints);
    if (points.length === 0) {
      out.push({ tagId, runs: [] });
      continue;
    }
    const t0 = points[0].tick;
    const t1 = points[points.length - 1].tick;
    const span = Math.max(t1 - t0, 1);
    const maxErr = Math.max(...points.map((p) => p.error ?? 0), 1e-9);
    const runs: { x: number; y: number }[][] = [];
    let run: { x: number; y: number }[] = [];
    for (const p of points) {
      if (p.error === null) {
        if (run.length) runs.push(run);
        run = [];
        continue;
      }
      run.push({
        x: ((p.tick - t0) / span) * width,
        y: height - (p.error / maxErr) * height,
      });
    }
    if (run.length) runs.push(run);
    out.push({ tagId, runs });
  }
  return out;
}
