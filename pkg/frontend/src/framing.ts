/** Length-delimited framing for the raw TCP transport.
 *
 * 4-byte big-endian payload length followed by UTF-8 JSON.  The browser
 * path uses WebSocket frames instead; this codec serves node clients and
 * the round-trip tests.
 */

export function encodeFrame(message: unknown): Uint8Array {
  const body = new TextEncoder().encode(JSON.stringify(message));
  const out = new Uint8Array(4 + body.length);
  new DataView(out.buffer).setUint32(0, body.length, false);
  out.set(body, 4);
  return out;
}

export class FrameDecoder {
  private buffer = new Uint8Array(0);

  /** Feed raw bytes; returns every complete message they finish. */
  push(chunk: Uint8Array): unknown[] {
    const merged = new Uint8Array(this.buffer.length + chunk.length);
    merged.set(this.buffer, 0);
    merged.set(chunk, this.buffer.length);
    this.buffer = merged;
    const messages: unknown[] = [];
    for (;;) {
      if (this.buffer.length < 4) break;
      const view = new DataView(this.buffer.buffer, this.buffer.byteOffset);
      const length = view.getUint32(0, false);
      if (this.buffer.length < 4 + length) break;
      const body = this.buffer.slice(4, 4 + length);
      this.buffer = this.buffer.slice(4 + length);
      messages.push(JSON.parse(new TextDecoder().decode(body)));
    }
    return messages;
  }
}
