/**
 * Figure-level rendering: validate a CSV against its figure schema and
 * produce the PNG. All numbers come from the CSV; no physics here.
 */

import { writeFileSync, mkdirSync } from "node:fs";
import { dirname } from "node:path";

import { SchemaError, readCsvFile, requireFigureTable, type CsvTable }
  from "./csv.js";
import { encodePng } from "./png.js";
import { Raster } from "./raster.js";
import { heatmap, lineChart, surface, type Grid } from "./plot.js";
import { SCHEMAS, requiredColumns, type FigureSchema } from "./schema.js";

export interface PlotSpec {
  figure: string;
  csvPath: string;
  outPath: string;
  xLabel?: string;
  yLabel?: string;
  width?: number;
  height?: number;
}

export interface RenderResult {
  outPath: string;
  width: number;
  height: number;
  pixels: Uint8Array;
  png: Buffer;
}

function gridFromTable(table: CsvTable, schema: FigureSchema): Grid {
  const ax = table.columns.get(schema.x)!;
  const ay = table.columns.get(schema.y!)!;
  const av = table.columns.get(schema.value!)!;
  const valid = table.columns.get("valid")!;
  const xs = [...new Set(ax)].sort((a, b) => a - b);
  const ys = [...new Set(ay)].sort((a, b) => a - b);
  if (xs.length < 2 || ys.length < 2) {
    throw new SchemaError("grid needs at least 2 distinct values per axis",
      [schema.x, schema.y!]);
  }
  if (xs.length * ys.length !== table.rowCount) {
    throw new SchemaError("rows do not form a complete grid",
      [schema.x, schema.y!]);
  }
  const xi = new Map(xs.map((v, i) => [v, i]));
  const yi = new Map(ys.map((v, i) => [v, i]));
  const values = xs.map(() => ys.map(() => Number.NaN));
  for (let k = 0; k < table.rowCount; k += 1) {
    const v = valid[k] !== 0 ? av[k] : Number.NaN;
    values[xi.get(ax[k])!][yi.get(ay[k])!] = v;
  }
  return { xs, ys, values };
}

export function render(spec: PlotSpec): RenderResult {
  const schema = SCHEMAS[spec.figure];
  if (!schema) {
    throw new SchemaError(`unknown figure ${spec.figure}`);
  }
  const table = readCsvFile(spec.csvPath);
  requireFigureTable(table, spec.figure, requiredColumns(schema));

  const width = spec.width ?? 640;
  const height = spec.height ?? 480;
  const raster = new Raster(width, height);

  if (schema.style === "line") {
    const others = table.header.filter((h) => h !== schema.x);
    if (others.length === 0) {
      throw new SchemaError("line figure needs at least one curve column",
        [schema.x]);
    }
    const xs = table.columns.get(schema.x)!;
    const series = others.map((label) => ({
      label,
      values: table.columns.get(label)!,
    }));
    lineChart(raster, xs, series, spec.xLabel ?? schema.x,
      spec.yLabel ?? others[0].split("[")[0], schema.name);
  } else {
    const grid = gridFromTable(table, schema);
    if (schema.style === "heatmap") {
      heatmap(raster, grid, spec.xLabel ?? schema.x,
        spec.yLabel ?? schema.y!, `${schema.name}: ${schema.value}`,
        schema.diverging);
    } else {
      const ref = schema.reference
        ? table.columns.get(schema.reference)![0]
        : undefined;
      surface(raster, grid, spec.xLabel ?? schema.x,
        spec.yLabel ?? schema.y!, `${schema.name}: ${schema.value}`, ref);
    }
  }

  const png = encodePng(width, height, raster.pixels);
  mkdirSync(dirname(spec.outPath), { recursive: true });
  writeFileSync(spec.outPath, png);
  return { outPath: spec.outPath, width, height, pixels: raster.pixels, png };
}
