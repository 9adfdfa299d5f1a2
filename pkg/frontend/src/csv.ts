/**
 * Reader for the sqzmet CSV format: '#'-prefixed manifest echo lines,
 * one header row, full-precision numeric cells.
 */

import { readFileSync } from "node:fs";

export interface Manifest {
  command: string;
  version: string;
  options: Record<string, unknown>;
  output: string;
}

export interface CsvTable {
  manifest: Manifest | null;
  header: string[];
  /** column-major values, one Float64Array per header entry */
  columns: Map<string, Float64Array>;
  rowCount: number;
}

export class SchemaError extends Error {
  readonly offending: string[];

  constructor(message: string, offending: string[] = []) {
    super(offending.length ? `${message}: ${offending.join(", ")}` : message);
    this.name = "SchemaError";
    this.offending = offending;
  }
}

const MANIFEST_PREFIX = "# sqzmet-manifest: ";

export function parseCsv(text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  let manifest: Manifest | null = null;
  let start = 0;
  while (start < lines.length && lines[start].startsWith("#")) {
    const line = lines[start];
    if (line.startsWith(MANIFEST_PREFIX) && manifest === null) {
      try {
        manifest = JSON.parse(line.slice(MANIFEST_PREFIX.length)) as Manifest;
      } catch {
        throw new SchemaError("unparseable manifest echo line");
      }
    }
    start += 1;
  }
  if (start >= lines.length) {
    throw new SchemaError("no header row");
  }
  const header = lines[start].split(",");
  const dataLines = lines.slice(start + 1);
  const columns = new Map<string, Float64Array>(
    header.map((name) => [name, new Float64Array(dataLines.length)]),
  );
  const badRows: string[] = [];
  dataLines.forEach((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      badRows.push(`row ${i + 1}`);
      return;
    }
    cells.forEach((cell, j) => {
      columns.get(header[j])![i] = Number(cell);
    });
  });
  if (badRows.length > 0) {
    throw new SchemaError("rows with wrong column count", badRows);
  }
  return { manifest, header, columns, rowCount: dataLines.length };
}

export function readCsvFile(path: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch {
    throw new SchemaError(`missing CSV file ${path}`);
  }
  return parseCsv(text);
}

/**
 * Assert the table belongs to the named figure and carries the needed
 * columns with at least one data row.
 */
export function requireFigureTable(
  table: CsvTable,
  figure: string,
  required: string[],
): void {
  if (table.manifest === null) {
    throw new SchemaError("CSV carries no manifest echo line");
  }
  const name = (table.manifest.options as { name?: unknown }).name;
  if (table.manifest.command !== "figure" || name !== figure) {
    throw new SchemaError(
      `manifest does not match figure ${figure}`,
      [`command=${table.manifest.command}`, `name=${String(name)}`],
    );
  }
  const missing = required.filter((c) => !table.columns.has(c));
  if (missing.length > 0) {
    throw new SchemaError("missing columns", missing);
  }
  if (table.rowCount === 0) {
    throw new SchemaError("empty grid", required);
  }
}
