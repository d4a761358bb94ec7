import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { SchemaError } from "./csv.js";
import { renderHeatmap } from "./heatmap.js";
import { renderSlices } from "./slices.js";

const USAGE = `usage:
  plotkit heatmap --csv GRID.csv --out FIG.png [--column NAME] [--title TEXT] [--cell N]
  plotkit slices  --csv GRID.csv [--csv GRID2.csv ...] --out FIG.svg
                  [--label TEXT ...] [--q2 VALUE] [--column NAME] [--title TEXT]

Reads grid CSVs written by "pairtrain grid" (each with its .meta.json
sidecar) and renders figures.  heatmap writes a PNG of the full grid;
slices writes an SVG overlaying the q1 profile of each CSV at fixed q2.`;

class UsageError extends Error {}

function requireString(value: string | undefined, flag: string): string {
  if (value === undefined) throw new UsageError(`missing required flag ${flag}`);
  return value;
}

function parseNumberFlag(value: string, flag: string): number {
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) throw new UsageError(`${flag} expects a number, got "${value}"`);
  return parsed;
}

function runHeatmap(args: string[]): string {
  const { values } = parseArgs({
    args,
    options: {
      csv: { type: "string" },
      out: { type: "string" },
      column: { type: "string" },
      title: { type: "string" },
      cell: { type: "string" },
    },
  });
  let cellSize: number | undefined;
  if (values.cell !== undefined) {
    cellSize = parseNumberFlag(values.cell, "--cell");
    if (!Number.isInteger(cellSize) || cellSize < 1) {
      throw new UsageError("--cell expects a positive integer");
    }
  }
  return renderHeatmap({
    csv: requireString(values.csv, "--csv"),
    out: requireString(values.out, "--out"),
    column: values.column,
    title: values.title,
    cellSize,
  });
}

function runSlices(args: string[]): string {
  const { values } = parseArgs({
    args,
    options: {
      csv: { type: "string", multiple: true },
      label: { type: "string", multiple: true },
      out: { type: "string" },
      q2: { type: "string" },
      column: { type: "string" },
      title: { type: "string" },
    },
  });
  const csvs = values.csv ?? [];
  if (csvs.length === 0) throw new UsageError("missing required flag --csv");
  const labels = values.label ?? [];
  if (labels.length > csvs.length) {
    throw new UsageError("more --label flags than --csv flags");
  }
  return renderSlices({
    series: csvs.map((csv, i) => ({ csv, label: labels[i] })),
    out: requireString(values.out, "--out"),
    q2: values.q2 === undefined ? undefined : parseNumberFlag(values.q2, "--q2"),
    column: values.column,
    title: values.title,
  });
}

/** Run the CLI on argv (without the node/script prefix); returns the exit code. */
export function runCli(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    let out: string;
    if (command === "heatmap") out = runHeatmap(rest);
    else if (command === "slices") out = runSlices(rest);
    else if (command === undefined || command === "--help" || command === "-h") {
      process.stdout.write(USAGE + "\n");
      return command === undefined ? 2 : 0;
    } else throw new UsageError(`unknown command "${command}"`);
    process.stdout.write(out + "\n");
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 2;
    }
    if (err instanceof SchemaError || (err as NodeJS.ErrnoException)?.code === "ENOENT") {
      process.stderr.write(`error: ${(err as Error).message}\n`);
      return 2;
    }
    // parseArgs rejections (unknown flags, missing values) read fine as-is
    if (err instanceof TypeError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 2;
    }
    throw err;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(runCli(process.argv.slice(2)));
}
