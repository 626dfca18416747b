/** Live round-trip against the real session server.
 *
 * The automated client speaks the TCP wire transport (identical JSON
 * messages to the browser's WebSocket path): 75 wrap keypresses plus a
 * facet must land in three stacked cycles, verified against the CLI's
 * coordinate export rather than pixels; brushing in the time plot must
 * highlight the matching wide-table rows for the histogram view within
 * a single diff cycle.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import type { Socket } from "node:net";
import { connect } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { FrameDecoder, encodeFrame } from "../src/framing.js";
import { highlightBins, binValues } from "../src/histogram.js";
import type { HelloMsg, LayerDiff, ServerMsg } from "../src/protocol.js";
import { ViewState } from "../src/viewstate.js";

const FOLDPLOT = "foldplot";

function lynxCsv(): string {
  const lines = ["time,variable,value"];
  for (let i = 0; i < 114; i++) {
    const value = Math.round(Math.exp(2.2 * Math.sin((i / 9.6) * 2 * Math.PI)) * 500 + (i % 7));
    lines.push(`${1821 + i},trappings,${value}`);
  }
  return lines.join("\n") + "\n";
}

function panelCsv(): string {
  const lines = ["Time,alpha,beta,gamma"];
  for (let t = 1; t <= 24; t++) {
    const alpha = (100 + 10 * Math.sin(t / 2)).toFixed(3);
    const beta = (50 + t).toFixed(3);
    const gamma = (5 * Math.cos(t / 3) + 20).toFixed(3);
    lines.push(`${t},${alpha},${beta},${gamma}`);
  }
  return lines.join("\n") + "\n";
}

class WireClient {
  private decoder = new FrameDecoder();
  private queue: ServerMsg[] = [];
  private waiters: ((msg: ServerMsg) => void)[] = [];

  constructor(private socket: Socket) {
    socket.on("data", (chunk: Buffer) => {
      for (const msg of this.decoder.push(new Uint8Array(chunk))) {
        const typed = msg as ServerMsg;
        const waiter = this.waiters.shift();
        if (waiter) waiter(typed);
        else this.queue.push(typed);
      }
    });
  }

  send(message: unknown): void {
    this.socket.write(encodeFrame(message));
  }

  next(timeoutMs = 15000): Promise<ServerMsg> {
    const queued = this.queue.shift();
    if (queued) return Promise.resolve(queued);
    return new Promise((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("timed out waiting for a frame")), timeoutMs);
      this.waiters.push((msg) => {
        clearTimeout(timer);
        resolve(msg);
      });
    });
  }

  async nextOfKind<T extends ServerMsg>(kind: T["kind"]): Promise<T> {
    for (;;) {
      const msg = await this.next();
      if (msg.kind === kind) return msg as T;
    }
  }
}

let server: ChildProcess;
let client: WireClient;
let socket: Socket;
let workDir: string;
let csvPath: string;

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "foldplot-ui-"));
  csvPath = join(workDir, "lynx.csv");
  writeFileSync(csvPath, lynxCsv());

  server = spawn(FOLDPLOT, ["load", csvPath, "serve", "--port", "0", "--wire-port", "0"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const wirePort = await new Promise<number>((resolve, reject) => {
    let all = "";
    const timer = setTimeout(() => reject(new Error(`server never reported ports: ${all}`)), 20000);
    server.stdout!.on("data", (chunk: Buffer) => {
      all += chunk.toString();
      const match = all.match(/wire on :(\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(Number(match[1]));
      }
    });
    server.on("exit", (code) => reject(new Error(`server exited early (${code}): ${all}`)));
  });
  socket = connect(wirePort, "127.0.0.1");
  await new Promise((resolve) => socket.once("connect", resolve));
  client = new WireClient(socket);
}, 60000);

afterAll(() => {
  socket?.destroy();
  server?.kill();
});

describe("wire round-trip", () => {
  it("75 wrap keypresses + facet produce 3 stacked cycles matching the export", async () => {
    const view = new ViewState();
    client.send({ kind: "hello" });
    const hello = await client.nextOfKind<HelloMsg>("hello");
    view.applyHello(hello);
    expect(hello.n).toBe(114);
    expect(hello.labels[0]).toBe("1821");
    view.applyDiff(await client.nextOfKind<LayerDiff>("layerDiff"));

    for (let i = 0; i < 75; i++) {
      client.send({ kind: "interact", op: "wrapX", count: 1 });
    }
    client.send({ kind: "interact", op: "facetVar" });
    let last: LayerDiff | null = null;
    for (let i = 0; i < 76; i++) {
      last = await client.nextOfKind<LayerDiff>("layerDiff");
      view.applyDiff(last);
    }
    expect(last!.axes.xlim).toEqual([1, 39]);

    // the reference: the CLI's coordinate export for the same interactions
    const scriptPath = join(workDir, "wrap.fps");
    writeFileSync(scriptPath, "wrapX 75\nfacetVar\n");
    const coordsPath = join(workDir, "coords.csv");
    execFileSync(FOLDPLOT, ["load", csvPath, "script", scriptPath, "export-coords", coordsPath]);
    const rows = readFileSync(coordsPath, "utf8").trimEnd().split("\n").slice(1)
      .map((line) => line.split(","));
    expect(rows).toHaveLength(114);

    let cycles = 0;
    rows.forEach((cells, i) => {
      const [, , y0, x, y] = cells;
      const wrapGroup = Number(cells[8]);
      expect(view.x[i]).toBe(Number(x)); // exact: repr round-trips doubles
      expect(view.y[i]).toBe(Number(y));
      // stacked cycles: each point sits in its wrap group's unit band
      expect(view.y[i] - Number(y0)).toBeCloseTo(wrapGroup - 1, 9);
      expect(view.x[i]).toBeGreaterThanOrEqual(1);
      expect(view.x[i]).toBeLessThanOrEqual(39);
      cycles = Math.max(cycles, wrapGroup);
    });
    expect(cycles).toBe(3);
  });

  it("brushing the time plot highlights histogram rows within one diff cycle", async () => {
    const view = new ViewState();
    client.send({ kind: "loadData", csv: panelCsv(), format: "wide" });
    const hello = await client.nextOfKind<HelloMsg>("hello");
    view.applyHello(hello);
    expect(hello.wide).not.toBeNull();
    expect(hello.variables).toEqual(["alpha", "beta", "gamma"]);
    view.applyDiff(await client.nextOfKind<LayerDiff>("layerDiff"));

    // brush one time-plot point with same-time linking: wide row 4 (time 5)
    const target = hello.timeIndex.findIndex((t, i) => t === 5 && hello.varIdx[i] === 1);
    client.send({ kind: "brush", ids: [target], mode: "sameTime" });
    const diff = await client.nextOfKind<LayerDiff>("layerDiff");
    const result = view.applyDiff(diff);

    // one diff cycle: this very diff carries the wide-table highlight
    expect(diff.reason).toBe("brush");
    expect(result.baseChanged).toBe(false); // brush repaints only the overlay
    expect(diff.attrs.wide!.brushed[4]).toBe(true);
    expect(diff.attrs.wide!.brushed.filter(Boolean)).toHaveLength(1);

    // and the histogram view model lights the bin holding that row
    const alpha = view.wide!.columns["alpha"];
    const model = highlightBins(binValues(alpha), view.brushedWide);
    const binOfRow = model.rows.findIndex((rows) => rows.includes(4));
    expect(model.highlighted[binOfRow]).toBe(true);
    expect(model.highlighted.filter(Boolean)).toHaveLength(1);
  });
});
