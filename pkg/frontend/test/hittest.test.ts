import { describe, expect, it } from "vitest";

import { Camera } from "../src/camera.js";
import { hitSeries, nearestPoint } from "../src/hittest.js";
import type { SegmentW } from "../src/protocol.js";

const axes = { xlim: [0, 10] as [number, number], ylim: [0, 10] as [number, number] };
const size = { width: 100, height: 100 };

describe("hit testing", () => {
  it("finds the nearest point within tolerance", () => {
    const camera = new Camera();
    const xs = [1, 5, 9];
    const ys = [1, 5, 9];
    const [sx, sy] = camera.toScreen(5, 5, axes, size);
    const hit = nearestPoint(xs, ys, camera, axes, size, sx + 2, sy - 1, 6);
    expect(hit?.index).toBe(1);
    expect(nearestPoint(xs, ys, camera, axes, size, 0, 0, 3)).toBeNull();
  });

  it("hits a series through any of its segments", () => {
    const camera = new Camera();
    const segments: SegmentW[] = [
      { ax: 0, ay: 2, bx: 10, by: 2, a: 0, b: 1, source: 0, group: 1, color: "#000" },
      { ax: 0, ay: 8, bx: 10, by: 8, a: 2, b: 3, source: 2, group: 2, color: "#000" },
    ];
    const [sx, sy] = camera.toScreen(5, 8, axes, size);
    expect(hitSeries(segments, camera, axes, size, sx, sy + 2, 5)).toBe(2);
    const [mx, my] = camera.toScreen(5, 5, axes, size);
    expect(hitSeries(segments, camera, axes, size, mx, my, 5)).toBeNull();
  });
});
