/** Client-side session mirror: hello + layerDiff messages fold into this.
 *
 * The client holds no authoritative state; replaying the server messages
 * into a fresh ViewState reproduces the view.  Diffs older than the
 * current version are dropped.  A diff without coordinates (brushing)
 * leaves the base geometry untouched so only the brush overlay repaints.
 */

import type { HelloMsg, LayerDiff, SegmentW, PolygonW, HighlightMode } from "./protocol.js";

export interface ApplyResult {
  applied: boolean;
  baseChanged: boolean;
  brushChanged: boolean;
}

export class ViewState {
  version = -1;
  n = 0;
  variables: string[] = [];
  individuals: string[] = [];
  labels: string[] = [];
  colors: string[] = [];
  varIdx: number[] = [];
  indIdx: number[] = [];
  series: number[] = [];
  timeIndex: number[] = [];
  wide: HelloMsg["wide"] = null;

  mode: "line" | "area" = "line";
  aspect = 2;
  axes: LayerDiff["axes"] = { xlim: [0, 1], ylim: [0, 1] };
  grid: LayerDiff["grid"] = { xTicks: [], yTicks: [] };
  x: number[] = [];
  y: number[] = [];
  segments: SegmentW[] = [];
  polygons: PolygonW[] = [];
  brushedLong: boolean[] = [];
  brushedWide: boolean[] = [];
  brushHighlight: LayerDiff["brush"] = { points: [], segments: [], polygons: [] };

  brushMode: HighlightMode = "wholeSeries";

  applyHello(msg: HelloMsg): void {
    this.n = msg.n;
    this.variables = msg.variables;
    this.individuals = msg.individuals;
    this.labels = msg.labels;
    this.colors = msg.colors;
    this.varIdx = msg.varIdx;
    this.indIdx = msg.indIdx;
    this.series = msg.series;
    this.timeIndex = msg.timeIndex;
    this.wide = msg.wide;
    this.version = msg.version;
    this.brushedLong = new Array(msg.n).fill(false);
    this.brushedWide = new Array(msg.wide ? msg.wide.times.length : 0).fill(false);
  }

  applyDiff(diff: LayerDiff): ApplyResult {
    if (diff.version < this.version) {
      return { applied: false, baseChanged: false, brushChanged: false };
    }
    this.version = diff.version;
    this.mode = diff.mode;
    this.aspect = diff.aspect;
    this.axes = diff.axes;
    this.grid = diff.grid;
    let baseChanged = false;
    if (diff.coords) {
      this.x = diff.coords.x;
      this.y = diff.coords.y;
      this.segments = diff.segments ?? [];
      this.polygons = diff.polygons ?? [];
      baseChanged = true;
    }
    this.brushedLong = diff.attrs.long.brushed;
    if (diff.attrs.wide) this.brushedWide = diff.attrs.wide.brushed;
    this.brushHighlight = diff.brush;
    return { applied: true, baseChanged, brushChanged: true };
  }

  /** Row ids inside a data-space rectangle (for drag-rectangle brushing). */
  pointsInRect(x0: number, x1: number, y0: number, y1: number): number[] {
    const [xa, xb] = x0 <= x1 ? [x0, x1] : [x1, x0];
    const [ya, yb] = y0 <= y1 ? [y0, y1] : [y1, y0];
    const out: number[] = [];
    for (let i = 0; i < this.x.length; i++) {
      if (this.x[i] >= xa && this.x[i] <= xb && this.y[i] >= ya && this.y[i] <= yb) {
        out.push(i);
      }
    }
    return out;
  }

  cycleBrushMode(): HighlightMode {
    const order: HighlightMode[] = ["singlePoint", "wholeSeries", "sameTime"];
    this.brushMode = order[(order.indexOf(this.brushMode) + 1) % order.length];
    return this.brushMode;
  }
}
