import { describe, expect, it } from "vitest";

import { ErrorChart, distanceTable, errorPolylines } from "../src/charts.js";
import type { Snapshot } from "../src/types.js";

import fixture from "./fixtures/snapshots.json";

const snapshots = fixture as unknown as Snapshot[];

describe("ErrorChart", () => {
  it("stores chart values strictly equal to snapshot values", () => {
    const chart = new ErrorChart();
    for (const snap of snapshots) chart.append(snap);

    const byTagTick = new Map<string, Map<number, number | null>>();
    for (const snap of snapshots) {
      for (const rec of snap.records) {
        let ticks = byTagTick.get(rec.tag_id);
        if (!ticks) byTagTick.set(rec.tag_id, (ticks = new Map()));
        ticks.set(rec.tick, rec.error);
      }
    }

    for (const [tagId, points] of chart.series) {
      for (const p of points) {
        const expected = byTagTick.get(tagId)!.get(p.tick);
        // exact equality: the client never recomputes physics
        expect(Object.is(p.error, expected)).toBe(true);
      }
    }
  });

  it("keeps NoFix ticks as gaps, not zeros", () => {
    const chart = new ErrorChart();
    for (const snap of snapshots) chart.append(snap);
    const points = [...chart.series.values()][0];
    const gaps = points.filter((p) => p.error === null);
    expect(gaps.length).toBeGreaterThan(0);
    expect(points.some((p) => p.error === 0 && p.error === null)).toBe(false);
  });

  it("does not duplicate ticks when command snapshots repeat records", () => {
    const chart = new ErrorChart();
    for (const snap of snapshots) chart.append(snap);
    for (const points of chart.series.values()) {
      const ticks = points.map((p) => p.tick);
      expect(new Set(ticks).size).toBe(ticks.length);
      expect([...ticks].sort((a, b) => a - b)).toEqual(ticks);
    }
  });

  it("draws exactly one point per fix", () => {
    const chart = new ErrorChart();
    for (const snap of snapshots) chart.append(snap);
    const [line] = errorPolylines(chart, 540, 180);
    const points = [...chart.series.values()][0];
    const fixes = points.filter((p) => p.error !== null).length;
    const drawn = line.runs.reduce((n, run) => n + run.length, 0);
    expect(drawn).toBe(fixes);
  });

  it("splits polylines at a mid-sequence gap", () => {
    const chart = new ErrorChart();
    chart.series.set("t1", [
      { tick: 1, error: 0.1 },
      { tick: 2, error: 0.2 },
      { tick: 3, error: null },
      { tick: 4, error: 0.3 },
      { tick: 5, error: 0.4 },
    ]);
    const [line] = errorPolylines(chart, 540, 180);
    expect(line.runs).toHaveLength(2);
    expect(line.runs[0]).toHaveLength(2);
    expect(line.runs[1]).toHaveLength(2);
  });
});

describe("distanceTable", () => {
  it("mirrors the latest record's per-reader values exactly", () => {
    const withRecords = snapshots.filter((s) => s.records.length > 0);
    expect(withRecords.length).toBeGreaterThan(0);
    for (const snap of withRecords) {
      const rec = snap.records[0];
      const rows = distanceTable(snap, rec.tag_id);
      expect(rows).toHaveLength(rec.measurements.length);
      rows.forEach((row, i) => {
        const m = rec.measurements[i];
        expect(row.reader_id).toBe(m.reader_id);
        expect(Object.is(row.real, m.true_distance)).toBe(true);
        expect(Object.is(row.calculated, m.distance)).toBe(true);
        expect(row.in_range).toBe(m.in_range);
        expect(row.selected).toBe(rec.selected.includes(m.reader_id));
      });
    }
  });

  it("returns no rows for an unknown tag", () => {
    expect(distanceTable(snapshots[0], "nope")).toEqual([]);
  });
});
