/** Keyboard bindings for the time-plot view.
 *
 * Every interaction key maps to exactly one wire message; the brush-mode
 * key cycles a client-side mode that rides on the next brush message.
 * Bindings are a plain object so embedders can rebind them.
 */

import { interact, type ClientMsg } from "./protocol.js";

export type KeyAction =
  | { kind: "message"; message: ClientMsg }
  | { kind: "cycleBrushMode" }
  | { kind: "promptPeriod" };

export interface KeyBindings {
  [key: string]: () => KeyAction;
}

export const defaultBindings: KeyBindings = {
  w: () => ({ kind: "message", message: interact("wrapX", { count: 1 }) }),
  W: () => ({ kind: "message", message: interact("wrapX", { count: -1 }) }),
  p: () => ({ kind: "promptPeriod" }),
  y: () => ({ kind: "message", message: interact("wrapY", { band: 0.25 }) }),
  f: () => ({ kind: "message", message: interact("facetInd", { steps: 1 }) }),
  v: () => ({ kind: "message", message: interact("facetVar") }),
  m: () => ({ kind: "message", message: interact("mirror", { divider: "mean" }) }),
  a: () => ({ kind: "message", message: interact("switch") }),
  s: () => ({ kind: "message", message: interact("standardize") }),
  b: () => ({ kind: "cycleBrushMode" }),
};

export function actionForKey(key: string, bindings: KeyBindings = defaultBindings): KeyAction | null {
  const entry = bindings[key];
  return entry ? entry() : null;
}
