import { readFileSync } from "node:fs";

/** Violation of the grid CSV / sidecar contract. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

/** Sidecar fields the renderers rely on; the config echo rides along. */
export interface GridMeta {
  kind: string;
  csv: string;
  columns: string[];
  shape: [number, number];
  u: number;
  bare: boolean;
  config: unknown;
}

/** A parsed grid scan: axes plus one flat row-major array per column. */
export interface GridTable {
  /** q1 axis, length n1 (fastest-varying CSV column). */
  q1: Float64Array;
  /** q2 axis, length n2. */
  q2: Float64Array;
  n1: number;
  n2: number;
  /** Data columns (everything except q1/q2), each of length n1 * n2. */
  columns: Map<string, Float64Array>;
  meta: GridMeta;
}

function parseNumberStrict(field: string, where: string): number {
  const trimmed = field.trim();
  if (trimmed.length === 0) throw new SchemaError(`empty numeric field at ${where}`);
  const value = Number(trimmed);
  if (Number.isNaN(value)) throw new SchemaError(`not a number at ${where}: ${field}`);
  return value;
}

function readMeta(csvPath: string): GridMeta {
  const metaPath = csvPath + ".meta.json";
  let raw: string;
  try {
    raw = readFileSync(metaPath, "utf8");
  } catch {
    throw new SchemaError(`cannot read sidecar ${metaPath}`);
  }
  let doc: Record<string, unknown>;
  try {
    doc = JSON.parse(raw) as Record<string, unknown>;
  } catch (err) {
    throw new SchemaError(`sidecar ${metaPath} is not valid JSON: ${(err as Error).message}`);
  }
  if (doc["kind"] !== "grid") {
    throw new SchemaError(`sidecar kind is ${JSON.stringify(doc["kind"])}, expected "grid"`);
  }
  const columns = doc["columns"];
  if (!Array.isArray(columns) || columns.some((c) => typeof c !== "string")) {
    throw new SchemaError("sidecar columns must be an array of strings");
  }
  const shape = doc["shape"];
  if (
    !Array.isArray(shape) ||
    shape.length !== 2 ||
    shape.some((n) => typeof n !== "number" || !Number.isInteger(n) || n < 0)
  ) {
    throw new SchemaError("sidecar shape must be two non-negative integers [n2, n1]");
  }
  return {
    kind: "grid",
    csv: String(doc["csv"] ?? ""),
    columns: columns as string[],
    shape: [shape[0] as number, shape[1] as number],
    u: Number(doc["u"]),
    bare: Boolean(doc["bare"]),
    config: doc["config"],
  };
}

/**
 * Read a grid CSV together with its `<csv>.meta.json` sidecar.
 *
 * The CSV schema is the scan layout the engine CLI writes: a header row
 * naming the columns, then shape[0] * shape[1] data rows with q1 varying
 * fastest.  Anything off that contract raises SchemaError without
 * touching any output.
 */
export function readGridCsv(csvPath: string): GridTable {
  const meta = readMeta(csvPath);
  const [n2, n1] = meta.shape;
  if (n1 === 0 || n2 === 0) throw new SchemaError("empty grid: nothing to render");
  if (meta.columns.length < 3 || meta.columns[0] !== "q1" || meta.columns[1] !== "q2") {
    throw new SchemaError(`unexpected column set: ${meta.columns.join(",")}`);
  }

  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch {
    throw new SchemaError(`cannot read ${csvPath}`);
  }
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaError("empty grid: nothing to render");
  if (lines[0] !== meta.columns.join(",")) {
    throw new SchemaError(`CSV header "${lines[0]}" does not match sidecar columns`);
  }
  const rows = lines.length - 1;
  if (rows !== n1 * n2) {
    throw new SchemaError(`expected ${n1 * n2} data rows for shape [${n2}, ${n1}], found ${rows}`);
  }

  const data = meta.columns.map(() => new Float64Array(rows));
  for (let r = 0; r < rows; r++) {
    const fields = lines[r + 1].split(",");
    if (fields.length !== meta.columns.length) {
      throw new SchemaError(`row ${r + 1} has ${fields.length} fields, expected ${meta.columns.length}`);
    }
    for (let c = 0; c < fields.length; c++) {
      data[c][r] = parseNumberStrict(fields[c], `row ${r + 1}, column ${meta.columns[c]}`);
    }
  }

  // rebuild the axes and insist the scan really is the regular product grid
  const q1 = data[0].slice(0, n1);
  const q2 = new Float64Array(n2);
  for (let i2 = 0; i2 < n2; i2++) q2[i2] = data[1][i2 * n1];
  for (let i2 = 0; i2 < n2; i2++) {
    for (let i1 = 0; i1 < n1; i1++) {
      const r = i2 * n1 + i1;
      if (data[0][r] !== q1[i1] || data[1][r] !== q2[i2]) {
        throw new SchemaError(`row ${r + 1} breaks the regular grid layout`);
      }
    }
  }

  const columns = new Map<string, Float64Array>();
  for (let c = 2; c < meta.columns.length; c++) columns.set(meta.columns[c], data[c]);
  return { q1, q2, n1, n2, columns, meta };
}

/** Pick a named data column, defaulting to the density. */
export function gridColumn(table: GridTable, column?: string): Float64Array {
  const name = column ?? "density";
  const values = table.columns.get(name);
  if (!values) {
    throw new SchemaError(
      `no column "${name}" in this grid (have: ${[...table.columns.keys()].join(", ")})`,
    );
  }
  return values;
}

/** Extract the 1-D slice along q1 from the row whose q2 is nearest to the target. */
export function sliceAtQ2(
  table: GridTable,
  q2 = 0,
  column?: string,
): { q1: Float64Array; values: Float64Array; q2: number } {
  const data = gridColumn(table, column);
  let best = 0;
  for (let i2 = 1; i2 < table.n2; i2++) {
    if (Math.abs(table.q2[i2] - q2) < Math.abs(table.q2[best] - q2)) best = i2;
  }
  return {
    q1: table.q1,
    values: data.slice(best * table.n1, (best + 1) * table.n1),
    q2: table.q2[best],
  };
}
