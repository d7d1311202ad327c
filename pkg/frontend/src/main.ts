// DOM wiring: canvas, controls, charts. All state changes flow through
// snapshots; commands are fire-and-confirm (UI updates only on receipt).

import { ApiClient, ApiError } from "./api.js";
import { ErrorChart, distanceTable, errorPolylines } from "./charts.js";
import { CANVAS_SIZE_PX, screenToWorld } from "./coords.js";
import { moveTagSubmit, obstacleFormSubmit, rangeEditSubmit } from "./forms.js";
import { emptyView, hitTestReader, renderWorld, materialColor } from "./scene.js";
import type { ViewState, ObstacleDraft } from "./scene.js";
import { paint } from "./painter.js";
import type { Command, Snapshot } from "./types.js";

const api = new ApiClient("");
const view: ViewState = emptyView();
const chart = new ErrorChart();
let obstacleCounter = 0;
let autoRunTimer: number | null = null;

const worldCanvas = document.getElementById("world") as HTMLCanvasElement;
const chartCanvas = document.getElementById("error-chart") as HTMLCanvasElement;
const statusEl = document.getElementById("status")!;
const formErrorEl = document.getElementById("form-error")!;
const distanceBody = document.getElementById("distance-body")!;
const infoEl = document.getElementById("info")!;

function setStatus(text: string): void {
  statusEl.textContent = text;
}

function showFormError(text: string): void {
  formErrorEl.textContent = text;
}

async function send(command: Command): Promise<void> {
  showFormError("");
  try {
    applySnapshot(await api.postCommand(command));
  } catch (err) {
    if (err instanceof ApiError) showFormError(`${err.errorName}: ${err.detail}`);
    else setStatus(`request failed: ${err}`);
  }
}

function applySnapshot(snap: Snapshot): void {
  view.snapshot = snap;
  chart.append(snap);
  redraw();
}

function redraw(): void {
  const snap = view.snapshot;
  const ctx = worldCanvas.getContext("2d")!;
  paint(ctx, renderWorld(view), CANVAS_SIZE_PX);
  if (!snap) return;

  setStatus(`tick ${snap.tick}`);

  const tag = snap.tags[0];
  if (tag) {
    const est = tag.estimate ? `(${tag.estimate[0].toFixed(2)}, ${tag.estimate[1].toFixed(2)})` : "no fix";
    const rec = snap.records.find((r) => r.tag_id === tag.id);
    const err = rec && rec.error !== null ? `${rec.error.toFixed(3)} m` : "-";
    infoEl.textContent =
      `real (${tag.x.toFixed(2)}, ${tag.y.toFixed(2)}) m | estimate ${est} | error ${err}`;
  }

  // per-reader real vs calculated distances, latest tick
  distanceBody.innerHTML = "";
  if (tag) {
    for (const row of distanceTable(snap, tag.id)) {
      const tr = document.createElement("tr");
      if (!row.in_range) tr.classList.add("out-of-range");
      if (row.selected) tr.classList.add("selected");
      for (const cell of [row.reader_id, String(row.real), String(row.calculated), row.in_range ? "yes" : "no"]) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.appendChild(td);
      }
      distanceBody.appendChild(tr);
    }
  }

  drawErrorChart();
}

function drawErrorChart(): void {
  const ctx = chartCanvas.getContext("2d")!;
  const w = chartCanvas.width;
  const h = chartCanvas.height;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#e0e0e0";
  ctx.strokeRect(0.5, 0.5, w - 1, h - 1);
  const palette = ["#c62828", "#1565c0", "#2e7d32", "#6a1b9a"];
  let i = 0;
  for (const line of errorPolylines(chart, w, h)) {
    ctx.strokeStyle = palette[i++ % palette.length];
    ctx.lineWidth = 1.5;
    for (const run of line.runs) {
      if (run.length < 2) continue;
      ctx.beginPath();
      ctx.moveTo(run[0].x, run[0].y);
      for (const p of run.slice(1)) ctx.lineTo(p.x, p.y);
      ctx.stroke();
    }
  }
}

// --- canvas interactions -------------------------------------------------

let dragStart: { px: number; py: number } | null = null;

worldCanvas.addEventListener("mousedown", (ev) => {
  dragStart = canvasPoint(ev);
});

worldCanvas.addEventListener("mousemove", (ev) => {
  if (!dragStart) return;
  view.draft = draftFromDrag(dragStart, canvasPoint(ev));
  redraw();
});

worldCanvas.addEventListener("mouseup", (ev) => {
  const start = dragStart;
  dragStart = null;
  const end = canvasPoint(ev);
  if (!view.snapshot) return;

  const dragged = start && Math.hypot(end.px - start.px, end.py - start.py) > 5;
  if (dragged && start) {
    const draft = draftFromDrag(start, end);
    view.draft = null;
    submitDraft(draft);
    return;
  }

  const readerId = hitTestReader(view.snapshot, end.px, end.py);
  if (readerId) {
    const current = view.snapshot.readers.find((r) => r.id === readerId)!.range;
    const result = rangeEditSubmit(readerId, window.prompt(`Range for ${readerId} (m):`, String(current)));
    if (result === null) return;
    if (result.ok) void send(result.command);
    else showFormError(result.error);
    return;
  }

  if (ev.shiftKey && view.snapshot.tags[0]) {
    const world = screenToWorld(end);
    const result = moveTagSubmit(view.snapshot.tags[0].id, world.x, world.y);
    if (result.ok) void send(result.command);
    else showFormError(result.error);
  }
});

function canvasPoint(ev: MouseEvent): { px: number; py: number } {
  const rect = worldCanvas.getBoundingClientRect();
  return { px: ev.clientX - rect.left, py: ev.clientY - rect.top };
}

function draftFromDrag(
  start: { px: number; py: number },
  end: { px: number; py: number },
): ObstacleDraft {
  const a = screenToWorld(start);
  const b = screenToWorld(end);
  const kindSel = document.getElementById("obstacle-kind") as HTMLSelectElement;
  const horizontal = Math.abs(b.x - a.x) >= Math.abs(b.y - a.y);
  if (horizontal) {
    return {
      kind: kindSel.value as ObstacleDraft["kind"],
      orientation: "horizontal",
      x: Math.min(a.x, b.x),
      y: a.y,
      length: Math.abs(b.x - a.x),
    };
  }
  return {
    kind: kindSel.value as ObstacleDraft["kind"],
    orientation: "vertical",
    x: a.x,
    y: Math.min(a.y, b.y),
    length: Math.abs(b.y - a.y),
  };
}

function submitDraft(draft: ObstacleDraft): void {
  const result = obstacleFormSubmit(draft, `o${++obstacleCounter}`);
  if (result.ok) void send(result.command);
  else showFormError(result.error);
}

// --- controls ------------------------------------------------------------

document.getElementById("step-1")!.addEventListener("click", () => void send({ type: "step", n: 1 }));
document.getElementById("step-10")!.addEventListener("click", () => void send({ type: "step", n: 10 }));

(document.getElementById("visualize") as HTMLInputElement).addEventListener("change", (ev) => {
  view.visualize = (ev.target as HTMLInputElement).checked;
  redraw();
});

(document.getElementById("auto-run") as HTMLInputElement).addEventListener("change", (ev) => {
  const on = (ev.target as HTMLInputElement).checked;
  const rate = Number((document.getElementById("auto-rate") as HTMLInputElement).value) || 2;
  if (autoRunTimer !== null) {
    window.clearInterval(autoRunTimer);
    autoRunTimer = null;
  }
  if (on) {
    autoRunTimer = window.setInterval(() => void send({ type: "step", n: 1 }), 1000 / rate);
  }
});

document.getElementById("obstacle-form")!.addEventListener("submit", (ev) => {
  ev.preventDefault();
  const get = (id: string) => (document.getElementById(id) as HTMLInputElement).value;
  submitDraft({
    kind: get("obstacle-kind") as ObstacleDraft["kind"],
    orientation: get("obstacle-orientation") as ObstacleDraft["orientation"],
    x: Number(get("obstacle-x")),
    y: Number(get("obstacle-y")),
    length: Number(get("obstacle-length")),
  });
});

// --- boot ----------------------------------------------------------------

async function boot(): Promise<void> {
  try {
    applySnapshot(await api.getState());
  } catch (err) {
    setStatus(`backend unreachable: ${err}`);
    return;
  }
  const kindSel = document.getElementById("obstacle-kind") as HTMLSelectElement;
  for (const kind of ["wall", "glass", "wood", "iron"]) {
    const opt = document.createElement("option");
    opt.value = kind;
    opt.textContent = kind;
    opt.style.color = materialColor(kind);
    kindSel.appendChild(opt);
  }
  api.connectStream(applySnapshot);
}

void boot();
