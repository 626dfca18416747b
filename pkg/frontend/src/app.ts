/** Browser entry point: linked time plot, histogram and series list.
 *
 * The client is a thin mirror: every input becomes one wire message and
 * every visual change comes back as a layerDiff.  At most one
 * interaction message is in flight; further inputs queue client-side
 * until its diff arrives.
 */

import { Camera } from "./camera.js";
import { binValues, highlightBins } from "./histogram.js";
import { hitSeries, nearestPoint } from "./hittest.js";
import { actionForKey } from "./keys.js";
import * as proto from "./protocol.js";
import { paintBase, paintBrush, paintHistogram } from "./render.js";
import { ViewState } from "./viewstate.js";

const view = new ViewState();
const camera = new Camera();

const baseCanvas = document.getElementById("plot-base") as HTMLCanvasElement;
const brushCanvas = document.getElementById("plot-brush") as HTMLCanvasElement;
const histCanvas = document.getElementById("histogram") as HTMLCanvasElement;
const seriesList = document.getElementById("series-list") as HTMLElement;
const tooltip = document.getElementById("tooltip") as HTMLElement;
const status = document.getElementById("status") as HTMLElement;

const size = { width: baseCanvas.width, height: baseCanvas.height };
const histSize = { width: histCanvas.width, height: histCanvas.height };

const socket = new WebSocket(`ws://${location.host}/ws`);
let awaitingDiff = false;
const sendQueue: proto.ClientMsg[] = [];

function send(message: proto.ClientMsg): void {
  if (message.kind === "interact" && awaitingDiff) {
    sendQueue.push(message);
    return;
  }
  if (message.kind === "interact") awaitingDiff = true;
  socket.send(JSON.stringify(message));
}

socket.addEventListener("open", () => send(proto.hello()));

socket.addEventListener("message", (event) => {
  const msg = JSON.parse(event.data as string) as proto.ServerMsg;
  if (msg.kind === "hello") {
    view.applyHello(msg);
    renderSeriesList();
    setStatus(`session ${msg.session}: ${msg.n} points, ${msg.variables.length} variable(s)`);
  } else if (msg.kind === "layerDiff") {
    const result = view.applyDiff(msg);
    if (!result.applied) return; // stale diff dropped
    if (msg.reason === "interact") {
      awaitingDiff = false;
      const next = sendQueue.shift();
      if (next) send(next);
    }
    if (result.baseChanged) paintBase(baseCtx, view, camera, size);
    paintBrush(brushCtx, view, camera, size);
    renderHistogram();
    renderSeriesList();
  } else if (msg.kind === "queryAt") {
    if (msg.result) {
      tooltip.textContent =
        `${msg.result.time} | ${msg.result.variable}` +
        (msg.result.individual !== "all" ? ` | ${msg.result.individual}` : "") +
        ` | value ${msg.result.value}`;
      tooltip.style.display = "block";
    } else {
      tooltip.style.display = "none";
    }
  } else if (msg.kind === "error") {
    setStatus(`error: ${msg.message}`);
  }
});

const baseCtx = baseCanvas.getContext("2d")!;
const brushCtx = brushCanvas.getContext("2d")!;
const histCtx = histCanvas.getContext("2d")!;

function setStatus(text: string): void {
  status.textContent = `${text} | brush mode: ${view.brushMode}`;
}

function renderHistogram(): void {
  if (!view.wide) {
    histCtx.clearRect(0, 0, histSize.width, histSize.height);
    return;
  }
  const first = Object.keys(view.wide.columns)[0];
  const model = highlightBins(binValues(view.wide.columns[first]), view.brushedWide);
  paintHistogram(histCtx, model.counts, model.highlighted, histSize);
}

function renderSeriesList(): void {
  const bySeries = new Map<number, { label: string; color: string; rows: number[] }>();
  for (let i = 0; i < view.n; i++) {
    const s = view.series[i];
    if (!bySeries.has(s)) {
      const label =
        view.individuals.length > 1
          ? `${view.variables[view.varIdx[i]]} / ${view.individuals[view.indIdx[i]]}`
          : view.variables[view.varIdx[i]];
      bySeries.set(s, { label, color: view.colors[i], rows: [] });
    }
    bySeries.get(s)!.rows.push(i);
  }
  seriesList.innerHTML = "";
  for (const [, entry] of [...bySeries.entries()].sort((a, b) => a[0] - b[0])) {
    const item = document.createElement("div");
    item.className = "series-item";
    const brushedCount = entry.rows.filter((r) => view.brushedLong[r]).length;
    if (brushedCount > 0) item.classList.add("brushed");
    item.innerHTML = `<span class="swatch" style="background:${entry.color}"></span>` +
      `${entry.label} <span class="count">${brushedCount}/${entry.rows.length}</span>`;
    item.addEventListener("click", () => {
      send(proto.brush([entry.rows[0]], "wholeSeries"));
    });
    seriesList.appendChild(item);
  }
}

// -- pointer interaction on the time plot ------------------------------

interface DragState {
  startX: number;
  startY: number;
  group: number | null; // a series hit makes the drag a shift, else a brush rect
}

let drag: DragState | null = null;

brushCanvas.addEventListener("pointerdown", (ev) => {
  const rect = brushCanvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  const group = hitSeries(view.segments, camera, view.axes, size, px, py, 6);
  drag = { startX: px, startY: py, group };
  brushCanvas.setPointerCapture(ev.pointerId);
});

brushCanvas.addEventListener("pointermove", (ev) => {
  const rect = brushCanvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  if (!drag) {
    const [dx, dy] = camera.toData(px, py, view.axes, size);
    send(proto.queryAt(dx, dy, 0.03));
    return;
  }
  if (ev.altKey) {
    camera.panBy(ev.movementX, ev.movementY);
    paintBase(baseCtx, view, camera, size);
    paintBrush(brushCtx, view, camera, size);
  }
});

brushCanvas.addEventListener("pointerup", (ev) => {
  if (!drag) return;
  const rect = brushCanvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  const wasClick = Math.hypot(px - drag.startX, py - drag.startY) < 3;
  if (drag.group !== null && !wasClick) {
    // horizontal drag on a series: shift it by the data-space delta
    const dataDelta = camera.dataDeltaX(px - drag.startX, view.axes, size);
    const [fromX] = camera.toData(drag.startX, drag.startY, view.axes, size);
    send(proto.interact("shiftX", { group: drag.group, from: fromX, to: fromX + dataDelta }));
  } else if (wasClick) {
    const hit = nearestPoint(view.x, view.y, camera, view.axes, size, px, py, 8);
    send(proto.brush(hit ? [hit.index] : [], view.brushMode));
  } else {
    const [x0, y0] = camera.toData(drag.startX, drag.startY, view.axes, size);
    const [x1, y1] = camera.toData(px, py, view.axes, size);
    send(proto.brush(view.pointsInRect(x0, x1, y0, y1), view.brushMode));
  }
  drag = null;
});

brushCanvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const rect = brushCanvas.getBoundingClientRect();
  camera.zoomAt(ev.clientX - rect.left, ev.clientY - rect.top, ev.deltaY < 0 ? 1.15 : 1 / 1.15);
  paintBase(baseCtx, view, camera, size);
  paintBrush(brushCtx, view, camera, size);
});

window.addEventListener("keydown", (ev) => {
  if (ev.target instanceof HTMLInputElement) return;
  const action = actionForKey(ev.key);
  if (!action) return;
  if (action.kind === "message") {
    send(action.message);
  } else if (action.kind === "cycleBrushMode") {
    view.cycleBrushMode();
    setStatus("ready");
  } else if (action.kind === "promptPeriod") {
    const period = Number(window.prompt("period length (points):", "12"));
    if (Number.isFinite(period) && period >= 3) {
      send(proto.interact("wrapPeriod", { period }));
    }
  }
});
