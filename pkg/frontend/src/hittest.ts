/** Pixel-space hit testing for hover, drag-to-shift and brushing. */

import type { AxisLimits, Size } from "./camera.js";
import { Camera } from "./camera.js";
import type { SegmentW } from "./protocol.js";

export interface PointHit {
  index: number;
  distance: number;
}

export function nearestPoint(
  xs: number[],
  ys: number[],
  camera: Camera,
  axes: AxisLimits,
  size: Size,
  px: number,
  py: number,
  tolerancePx: number,
): PointHit | null {
  let best = -1;
  let bestDist = Infinity;
  for (let i = 0; i < xs.length; i++) {
    const [sx, sy] = camera.toScreen(xs[i], ys[i], axes, size);
    const d = Math.hypot(sx - px, sy - py);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  if (best < 0 || bestDist > tolerancePx) return null;
  return { index: best, distance: bestDist };
}

function pointSegmentDistance(
  px: number, py: number,
  ax: number, ay: number,
  bx: number, by: number,
): number {
  const vx = bx - ax;
  const vy = by - ay;
  const lengthSq = vx * vx + vy * vy;
  const t = lengthSq === 0 ? 0 : Math.max(0, Math.min(1, ((px - ax) * vx + (py - ay) * vy) / lengthSq));
  return Math.hypot(px - (ax + t * vx), py - (ay + t * vy));
}

/** The drawable line group under the pointer, if any segment is close enough. */
export function hitSeries(
  segments: SegmentW[],
  camera: Camera,
  axes: AxisLimits,
  size: Size,
  px: number,
  py: number,
  tolerancePx: number,
): number | null {
  let best: number | null = null;
  let bestDist = Infinity;
  for (const seg of segments) {
    const [ax, ay] = camera.toScreen(seg.ax, seg.ay, axes, size);
    const [bx, by] = camera.toScreen(seg.bx, seg.by, axes, size);
    const d = pointSegmentDistance(px, py, ax, ay, bx, by);
    if (d < bestDist) {
      bestDist = d;
      best = seg.group;
    }
  }
  return bestDist <= tolerancePx ? best : null;
}
