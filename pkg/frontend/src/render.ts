/** Immediate-mode canvas painting, split into base and brush surfaces.
 *
 * The base surface carries points, lines/areas, axes and grid; the brush
 * surface carries only highlighted elements.  Brush diffs repaint just
 * the overlay, which is what keeps brushing cheap.
 */

import { Camera, type Size } from "./camera.js";
import type { ViewState } from "./viewstate.js";

const BRUSH_COLOR = "#ffb300";

export function paintBase(
  ctx: CanvasRenderingContext2D,
  view: ViewState,
  camera: Camera,
  size: Size,
): void {
  ctx.clearRect(0, 0, size.width, size.height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, size.width, size.height);

  ctx.strokeStyle = "#ececec";
  ctx.lineWidth = 1;
  for (const t of view.grid.xTicks) {
    const [sx] = camera.toScreen(t, view.axes.ylim[0], view.axes, size);
    line(ctx, sx, 0, sx, size.height);
  }
  for (const t of view.grid.yTicks) {
    const [, sy] = camera.toScreen(view.axes.xlim[0], t, view.axes, size);
    line(ctx, 0, sy, size.width, sy);
  }

  if (view.mode === "area") {
    for (const poly of view.polygons) {
      ctx.beginPath();
      poly.xs.forEach((x, i) => {
        const [sx, sy] = camera.toScreen(x, poly.ys[i], view.axes, size);
        i === 0 ? ctx.moveTo(sx, sy) : ctx.lineTo(sx, sy);
      });
      ctx.closePath();
      ctx.fillStyle = withAlpha(poly.color, 0.45);
      ctx.fill();
    }
  }

  for (const seg of view.segments) {
    const [ax, ay] = camera.toScreen(seg.ax, seg.ay, view.axes, size);
    const [bx, by] = camera.toScreen(seg.bx, seg.by, view.axes, size);
    ctx.strokeStyle = seg.color;
    ctx.lineWidth = 1.2;
    line(ctx, ax, ay, bx, by);
  }

  for (let i = 0; i < view.x.length; i++) {
    const [sx, sy] = camera.toScreen(view.x[i], view.y[i], view.axes, size);
    ctx.fillStyle = view.colors[i] ?? "#333333";
    dot(ctx, sx, sy, 1.8);
  }

  ctx.fillStyle = "#555555";
  ctx.font = "10px sans-serif";
  ctx.textAlign = "center";
  for (const t of view.grid.xTicks) {
    const [sx] = camera.toScreen(t, view.axes.ylim[0], view.axes, size);
    ctx.fillText(format(t), sx, size.height - 4);
  }
  ctx.textAlign = "left";
  for (const t of view.grid.yTicks) {
    const [, sy] = camera.toScreen(view.axes.xlim[0], t, view.axes, size);
    ctx.fillText(format(t), 4, sy - 2);
  }
}

export function paintBrush(
  ctx: CanvasRenderingContext2D,
  view: ViewState,
  camera: Camera,
  size: Size,
): void {
  ctx.clearRect(0, 0, size.width, size.height);
  if (view.mode === "area") {
    for (const i of view.brushHighlight.polygons) {
      const poly = view.polygons[i];
      if (!poly) continue;
      ctx.beginPath();
      poly.xs.forEach((x, k) => {
        const [sx, sy] = camera.toScreen(x, poly.ys[k], view.axes, size);
        k === 0 ? ctx.moveTo(sx, sy) : ctx.lineTo(sx, sy);
      });
      ctx.closePath();
      ctx.fillStyle = withAlpha(BRUSH_COLOR, 0.7);
      ctx.fill();
    }
  }
  ctx.strokeStyle = BRUSH_COLOR;
  ctx.lineWidth = 2.4;
  for (const i of view.brushHighlight.segments) {
    const seg = view.segments[i];
    if (!seg) continue;
    const [ax, ay] = camera.toScreen(seg.ax, seg.ay, view.axes, size);
    const [bx, by] = camera.toScreen(seg.bx, seg.by, view.axes, size);
    line(ctx, ax, ay, bx, by);
  }
  ctx.fillStyle = BRUSH_COLOR;
  for (const i of view.brushHighlight.points) {
    const [sx, sy] = camera.toScreen(view.x[i], view.y[i], view.axes, size);
    dot(ctx, sx, sy, 3);
  }
}

export function paintHistogram(
  ctx: CanvasRenderingContext2D,
  counts: number[],
  highlighted: boolean[],
  size: Size,
): void {
  ctx.clearRect(0, 0, size.width, size.height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, size.width, size.height);
  const maxCount = Math.max(...counts, 1);
  const barWidth = size.width / counts.length;
  counts.forEach((count, i) => {
    const h = (count / maxCount) * (size.height - 12);
    ctx.fillStyle = highlighted[i] ? BRUSH_COLOR : "#7f9bbd";
    ctx.fillRect(i * barWidth + 1, size.height - h, barWidth - 2, h);
  });
}

function line(ctx: CanvasRenderingContext2D, x0: number, y0: number, x1: number, y1: number): void {
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x1, y1);
  ctx.stroke();
}

function dot(ctx: CanvasRenderingContext2D, x: number, y: number, r: number): void {
  ctx.beginPath();
  ctx.arc(x, y, r, 0, Math.PI * 2);
  ctx.fill();
}

function withAlpha(hex: string, alpha: number): string {
  const v = parseInt(hex.slice(1), 16);
  const r = (v >> 16) & 255;
  const g = (v >> 8) & 255;
  const b = v & 255;
  return `rgba(${r},${g},${b},${alpha})`;
}

function format(t: number): string {
  return Math.abs(t - Math.round(t)) < 1e-9 ? String(Math.round(t)) : t.toFixed(2);
}
