/** Histogram model for a wide-table variable, linked through brushing. */

export interface HistogramModel {
  edges: number[];
  counts: number[];
  rows: number[][];
  highlighted: boolean[];
}

export function binValues(values: number[], binCount = 10): Omit<HistogramModel, "highlighted"> {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const width = (hi - lo) / binCount || 1;
  const edges: number[] = [];
  for (let i = 0; i <= binCount; i++) edges.push(lo + i * width);
  const counts = new Array(binCount).fill(0);
  const rows: number[][] = Array.from({ length: binCount }, () => []);
  values.forEach((v, row) => {
    let bin = Math.floor((v - lo) / width);
    if (bin >= binCount) bin = binCount - 1; // the max value closes the last bin
    if (bin < 0) bin = 0;
    counts[bin]++;
    rows[bin].push(row);
  });
  return { edges, counts, rows };
}

/** A bin highlights when any of its rows is brushed in the wide table. */
export function highlightBins(
  model: Omit<HistogramModel, "highlighted">,
  brushedWide: boolean[],
): HistogramModel {
  const highlighted = model.rows.map((rows) => rows.some((r) => brushedWide[r]));
  return { ...model, highlighted };
}
