/**
 * figplot: render sqzmet figure CSVs to PNG.
 *
 * Usage:
 *   figplot fig9 fig4a --csv-dir out --out-dir plots
 *   figplot --all --csv-dir out --out-dir plots
 *
 * Exit codes: 0 ok, 1 schema or I/O error, 2 usage error.
 */

import { join } from "node:path";
import { exit, argv, stderr, stdout } from "node:process";

import { SchemaError } from "./csv.js";
import { render } from "./render.js";
import { FIGURE_NAMES } from "./schema.js";

interface Args {
  figures: string[];
  csvDir: string;
  outDir: string;
}

function parseArgs(raw: string[]): Args {
  const figures: string[] = [];
  let csvDir = ".";
  let outDir = ".";
  let all = false;
  for (let i = 0; i < raw.length; i += 1) {
    const arg = raw[i];
    if (arg === "--csv-dir" || arg === "--out-dir") {
      const value = raw[i + 1];
      if (value === undefined) {
        throw new UsageError(`${arg} needs a value`);
      }
      if (arg === "--csv-dir") csvDir = value;
      else outDir = value;
      i += 1;
    } else if (arg === "--all") {
      all = true;
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown flag ${arg}`);
    } else {
      figures.push(arg);
    }
  }
  if (all) figures.push(...FIGURE_NAMES);
  if (figures.length === 0) {
    throw new UsageError(
      `no figures given; known: ${FIGURE_NAMES.join(", ")}`);
  }
  for (const name of figures) {
    if (!FIGURE_NAMES.includes(name)) {
      throw new UsageError(`unknown figure ${name}`);
    }
  }
  return { figures, csvDir, outDir };
}

class UsageError extends Error {}

function main(): void {
  let args: Args;
  try {
    args = parseArgs(argv.slice(2));
  } catch (err) {
    stderr.write(`usage error: ${(err as Error).message}\n`);
    exit(2);
  }
  for (const name of args.figures) {
    try {
      const result = render({
        figure: name,
        csvPath: join(args.csvDir, `${name}.csv`),
        outPath: join(args.outDir, `${name}.png`),
      });
      stdout.write(`wrote ${result.outPath}\n`);
    } catch (err) {
      if (err instanceof SchemaError) {
        stderr.write(`schema error for ${name}: ${err.message}\n`);
      } else {
        stderr.write(`error for ${name}: ${(err as Error).message}\n`);
      }
      exit(1);
    }
  }
}

main();
