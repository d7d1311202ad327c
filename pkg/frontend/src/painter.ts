// Replays scene primitives onto a 2D canvas context.

import type { Shape } from "./scene.js";

export function paint(ctx: CanvasRenderingContext2D, shapes: Shape[], size: number): void {
  ctx.clearRect(0, 0, size, size);
  ctx.strokeStyle = "#e0e0e0";
  ctx.lineWidth = 1;
  ctx.strokeRect(0.5, 0.5, size - 1, size - 1);
  for (const s of shapes) {
    switch (s.kind) {
      case "circle":
        ctx.beginPath();
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = s.width;
        ctx.arc(s.cx, s.cy, s.r, 0, Math.PI * 2);
        ctx.stroke();
        break;
      case "line":
        ctx.beginPath();
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = s.width;
        ctx.setLineDash(s.dash ?? []);
        ctx.moveTo(s.x1, s.y1);
        ctx.lineTo(s.x2, s.y2);
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      case "marker":
        ctx.fillStyle = s.color;
        ctx.strokeStyle = s.color;
        if (s.shape === "square") {
          ctx.fillRect(s.cx - s.size / 2, s.cy - s.size / 2, s.size, s.size);
        } else if (s.shape === "dot") {
          ctx.beginPath();
          ctx.arc(s.cx, s.cy, s.size / 2, 0, Math.PI * 2);
          ctx.fill();
        } else {
          ctx.lineWidth = 2;
          ctx.beginPath();
          ctx.moveTo(s.cx - s.size / 2, s.cy - s.size / 2);
          ctx.lineTo(s.cx + s.size / 2, s.cy + s.size / 2);
          ctx.moveTo(s.cx - s.size / 2, s.cy + s.size / 2);
          ctx.lineTo(s.cx + s.size / 2, s.cy - s.size / 2);
          ctx.stroke();
        }
        break;
      case "label":
        ctx.fillStyle = s.color;
        ctx.font = "11px sans-serif";
        ctx.fillText(s.text, s.x, s.y);
        break;
    }
  }
}
