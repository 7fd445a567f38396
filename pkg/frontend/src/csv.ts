/**
 * Loading and validation for benchmark sweep CSVs.
 *
 * The schema is whatever the producing CLI wrote in the header row; we only
 * require that the fields named in the plot spec exist.  Empty cells (e.g.
 * `exact` when the reference was skipped) become null.
 */

import { readFileSync } from "fs";
import Papa from "papaparse";

export type Row = Record<string, string | number | null>;

export class DataError extends Error {}

export function loadCsv(path: string): Row[] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new DataError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new DataError(`${path}: ${e.message} (row ${e.row})`);
  }
  if (parsed.data.length === 0) {
    throw new DataError(`${path}: no data rows`);
  }
  return parsed.data.map((row) => {
    const out: Row = {};
    for (const [key, value] of Object.entries(row)) {
      out[key] = value === "" || value === undefined ? null : value;
    }
    return out;
  });
}

/** Throw unless every named field appears in every loaded file's header. */
export function requireFields(rows: Row[], fields: string[]): void {
  const header = new Set(Object.keys(rows[0]));
  const missing = fields.filter((f) => !header.has(f));
  if (missing.length > 0) {
    throw new DataError(
      `missing field(s) ${missing.join(", ")}; header has ${[...header].join(", ")}`,
    );
  }
}
