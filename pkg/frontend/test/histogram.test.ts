import { describe, expect, it } from "vitest";

import { binValues, highlightBins } from "../src/histogram.js";

describe("histogram model", () => {
  it("bins values and keeps row membership", () => {
    const model = binValues([0, 1, 2, 3, 4, 5, 6, 7, 8, 10], 5);
    expect(model.counts.reduce((a, b) => a + b, 0)).toBe(10);
    expect(model.rows[0]).toContain(0);
    expect(model.rows[4]).toContain(9); // max value closes the last bin
  });

  it("highlights exactly the bins holding brushed rows", () => {
    const model = binValues([1, 2, 9, 10], 2);
    const brushed = [false, false, true, false];
    const highlighted = highlightBins(model, brushed);
    expect(highlighted.highlighted).toEqual([false, true]);
  });
});
