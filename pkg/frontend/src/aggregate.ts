/**
 * Collapse trial records into one (x, y) series per group value.
 */

import { DataError, Row } from "./csv.js";

export type Agg = "mean" | "median";

export interface Series {
  label: string;
  points: { x: number; y: number }[];
}

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 === 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

/**
 * Group rows by `group`, then aggregate `y` over every row sharing an `x`
 * value.  Rows where x or y is null/non-numeric (failed trials, skipped
 * exact references) are dropped; a series with no usable rows is an error.
 */
export function aggregate(rows: Row[], x: string, y: string, group: string, agg: Agg): Series[] {
  const byGroup = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    const xv = row[x];
    const yv = row[y];
    if (typeof xv !== "number" || typeof yv !== "number") continue;
    const label = String(row[group]);
    let xs = byGroup.get(label);
    if (!xs) byGroup.set(label, (xs = new Map()));
    let ys = xs.get(xv);
    if (!ys) xs.set(xv, (ys = []));
    ys.push(yv);
  }
  if (byGroup.size === 0) {
    throw new DataError(`no rows with numeric '${x}' and '${y}' values`);
  }
  const reduce = agg === "mean" ? mean : median;
  return [...byGroup.entries()]
    .sort(([a], [b]) => a.localeCompare(b))
    .map(([label, xs]) => ({
      label,
      points: [...xs.entries()]
        .sort(([a], [b]) => a - b)
        .map(([xv, ys]) => ({ x: xv, y: reduce(ys) })),
    }));
}
