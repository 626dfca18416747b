/** Message types and builders for the session wire protocol.
 *
 * One JSON message per WebSocket text frame; the TCP transport wraps the
 * same JSON in 4-byte big-endian length prefixes (see framing.ts).
 */

export interface WideData {
  times: number[];
  labels: string[];
  columns: Record<string, number[]>;
}

export interface HelloMsg {
  kind: "hello";
  protocol: number;
  session: string;
  version: number;
  n: number;
  variables: string[];
  individuals: string[];
  labels: string[];
  colors: string[];
  varIdx: number[];
  indIdx: number[];
  series: number[];
  timeIndex: number[];
  wide: WideData | null;
}

export interface SegmentW {
  ax: number;
  ay: number;
  bx: number;
  by: number;
  a: number | null;
  b: number | null;
  source: number;
  group: number;
  color: string;
}

export interface PolygonW {
  xs: number[];
  ys: number[];
  color: string;
  source: number;
  segment: number;
}

export interface LayerDiff {
  kind: "layerDiff";
  version: number;
  reason: string;
  mode: "line" | "area";
  aspect: number;
  axes: { xlim: [number, number]; ylim: [number, number] };
  grid: { xTicks: number[]; yTicks: number[] };
  coords: { x: number[]; y: number[] } | null;
  segments: SegmentW[] | null;
  polygons: PolygonW[] | null;
  attrs: { long: { brushed: boolean[] }; wide?: { brushed: boolean[] } };
  brush: { points: number[]; segments: number[]; polygons: number[] };
}

export interface QueryReply {
  kind: "queryAt";
  result: {
    point: number;
    time: string;
    variable: string;
    individual: string;
    value: number;
    x: number;
    y: number;
  } | null;
}

export interface ErrorMsg {
  kind: "error";
  message: string;
}

export type ServerMsg = HelloMsg | LayerDiff | QueryReply | ErrorMsg;

export type HighlightMode = "singlePoint" | "wholeSeries" | "sameTime";

export const HIGHLIGHT_MODES: HighlightMode[] = [
  "singlePoint",
  "wholeSeries",
  "sameTime",
];

export type ClientMsg = Record<string, unknown> & { kind: string };

export const hello = (): ClientMsg => ({ kind: "hello" });

export const interact = (op: string, params: Record<string, unknown> = {}): ClientMsg => ({
  kind: "interact",
  op,
  ...params,
});

export const brush = (
  ids: number[],
  mode: HighlightMode,
  table: "long" | "wide" = "long",
): ClientMsg => ({ kind: "brush", ids, mode, table });

export const queryAt = (x: number, y: number, radius = 0.03): ClientMsg => ({
  kind: "queryAt",
  x,
  y,
  radius,
});

export const loadData = (csv: string, format: "wide" | "long"): ClientMsg => ({
  kind: "loadData",
  csv,
  format,
});
