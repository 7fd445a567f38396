import { describe, expect, it } from "vitest";

import { aggregate } from "../dist/aggregate.js";
import { DataError, Row } from "../dist/csv.js";

const rows: Row[] = [
  { n: 100, err: 1.0, alg: "r1" },
  { n: 100, err: 3.0, alg: "r1" },
  { n: 200, err: 2.0, alg: "r1" },
  { n: 100, err: 0.5, alg: "r3" },
  { n: 200, err: null, alg: "r3" },
];

describe("aggregate", () => {
  it("groups and sorts series by label", () => {
    const series = aggregate(rows, "n", "err", "alg", "mean");
    expect(series.map((s) => s.label)).toEqual(["r1", "r3"]);
  });

  it("averages trials at the same x", () => {
    const [r1] = aggregate(rows, "n", "err", "alg", "mean");
    expect(r1.points).toEqual([
      { x: 100, y: 2.0 },
      { x: 200, y: 2.0 },
    ]);
  });

  it("median of an even count is the midpoint", () => {
    const four: Row[] = [1, 2, 3, 10].map((v) => ({ n: 1, err: v, alg: "a" }));
    const [a] = aggregate(four, "n", "err", "alg", "median");
    expect(a.points[0].y).toBe(2.5);
  });

  it("drops rows with null y", () => {
    const [, r3] = aggregate(rows, "n", "err", "alg", "median");
    expect(r3.points).toEqual([{ x: 100, y: 0.5 }]);
  });

  it("errors when nothing is numeric", () => {
    const bad: Row[] = [{ n: 1, err: null, alg: "a" }];
    expect(() => aggregate(bad, "n", "err", "alg", "mean")).toThrow(DataError);
  });
});
