#!/usr/bin/env node
/**
 * plot — render a benchmark sweep CSV as an SVG line chart.
 *
 * Example:
 *   plot --in sweep.csv --x n --y abs_error --group algorithm \
 *        --agg median --logx --logy --out error_vs_n.svg
 */

import { writeFileSync } from "fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { Agg, aggregate } from "./aggregate.js";
import { DataError, loadCsv, requireFields, Row } from "./csv.js";
import { renderChart } from "./svg.js";

export function run(argv: string[]): number {
  const args = yargs(argv)
    .option("in", { type: "string", array: true, demandOption: true, describe: "input CSV path(s)" })
    .option("x", { type: "string", demandOption: true, describe: "x-axis field" })
    .option("y", { type: "string", demandOption: true, describe: "y-axis field" })
    .option("group", { type: "string", demandOption: true, describe: "one line per value of this field" })
    .option("agg", { choices: ["mean", "median"] as const, default: "median" as Agg, describe: "trial aggregation" })
    .option("logx", { type: "boolean", default: false })
    .option("logy", { type: "boolean", default: false })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .strict()
    .exitProcess(false)
    .fail((msg) => {
      throw new UsageError(msg);
    })
    .parseSync();

  const rows: Row[] = [];
  for (const path of args.in) {
    const fileRows = loadCsv(path);
    requireFields(fileRows, [args.x, args.y, args.group]);
    rows.push(...fileRows);
  }
  const series = aggregate(rows, args.x, args.y, args.group, args.agg);
  const svg = renderChart({
    series,
    xLabel: args.x,
    yLabel: `${args.agg} ${args.y}`,
    logx: args.logx,
    logy: args.logy,
    title: `${args.y} vs ${args.x}`,
  });
  writeFileSync(args.out, svg);
  console.log(`wrote ${series.length} series to ${args.out}`);
  return 0;
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    return run(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 2;
    }
    if (err instanceof DataError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(hideBin(process.argv)));
}
