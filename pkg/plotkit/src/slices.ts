import { writeFileSync } from "node:fs";

import { fmtNumber, niceTicks } from "./axes.js";
import { LINE_COLORS } from "./colormap.js";
import { readGridCsv, sliceAtQ2, SchemaError, type GridTable } from "./csv.js";

/** One curve: a grid CSV plus an optional legend label. */
export interface SliceSeries {
  csv: string;
  label?: string;
}

/** How to turn one or more grid CSVs into an overlaid q2-slice SVG. */
export interface SlicesRecipe {
  series: SliceSeries[];
  /** Output SVG path. */
  out: string;
  /** Data column to plot (default "density"). */
  column?: string;
  /** Slice position; the nearest grid row is used (default 0). */
  q2?: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  width?: number;
  height?: number;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function sameAxis(a: Float64Array, b: Float64Array): boolean {
  if (a.length !== b.length) return false;
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) return false;
  }
  return true;
}

/**
 * Build the SVG document for the recipe from already-read tables.  The
 * output is a plain string assembled with fixed-precision coordinates, so
 * identical inputs give identical bytes.
 */
export function renderSlicesSvg(tables: GridTable[], recipe: SlicesRecipe): string {
  if (tables.length === 0) throw new SchemaError("no series to plot");
  for (let i = 1; i < tables.length; i++) {
    if (!sameAxis(tables[0].q1, tables[i].q1)) {
      throw new SchemaError(
        `mismatched grids: series ${i} has a different q1 axis than series 0`,
      );
    }
  }

  const slices = tables.map((t) => sliceAtQ2(t, recipe.q2 ?? 0, recipe.column));
  const q1 = slices[0].q1;
  const width = recipe.width ?? 640;
  const height = recipe.height ?? 400;
  const margin = { left: 64, right: 16, top: recipe.title ? 34 : 16, bottom: 46 };
  const panelW = width - margin.left - margin.right;
  const panelH = height - margin.top - margin.bottom;

  let yMax = 0;
  for (const s of slices) {
    for (const v of s.values) {
      if (v > yMax) yMax = v;
    }
  }
  const yTop = yMax > 0 ? 1.05 * yMax : 1;
  const xLo = q1[0];
  const xHi = q1[q1.length - 1];
  const xSpan = xHi - xLo;

  const px = (v: number): string =>
    (margin.left + (xSpan === 0 ? 0.5 : (v - xLo) / xSpan) * panelW).toFixed(2);
  const py = (v: number): string => (margin.top + (1 - v / yTop) * panelH).toFixed(2);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`);

  // axes with ticks and numeric labels
  const axisStyle = 'stroke="black" stroke-width="1"';
  const textStyle = 'font-family="monospace" font-size="11"';
  const x0 = margin.left;
  const y0 = margin.top + panelH;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0 + panelW}" y2="${y0}" ${axisStyle}/>`);
  parts.push(`<line x1="${x0}" y1="${margin.top}" x2="${x0}" y2="${y0}" ${axisStyle}/>`);
  for (const v of niceTicks(xLo, xHi)) {
    const x = px(v);
    parts.push(`<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 4}" ${axisStyle}/>`);
    parts.push(
      `<text x="${x}" y="${y0 + 16}" text-anchor="middle" ${textStyle}>${fmtNumber(v)}</text>`,
    );
  }
  for (const v of niceTicks(0, yTop)) {
    if (v > yTop) continue;
    const y = py(v);
    parts.push(`<line x1="${x0 - 4}" y1="${y}" x2="${x0}" y2="${y}" ${axisStyle}/>`);
    parts.push(
      `<text x="${x0 - 7}" y="${y}" text-anchor="end" dominant-baseline="middle" ` +
        `${textStyle}>${fmtNumber(v)}</text>`,
    );
  }

  const xLabel = recipe.xLabel ?? "q1/m";
  parts.push(
    `<text x="${x0 + panelW / 2}" y="${height - 10}" text-anchor="middle" ${textStyle}>` +
      `${esc(xLabel)}</text>`,
  );
  if (recipe.yLabel) {
    parts.push(
      `<text x="14" y="${margin.top + panelH / 2}" text-anchor="middle" ${textStyle} ` +
        `transform="rotate(-90 14 ${margin.top + panelH / 2})">${esc(recipe.yLabel)}</text>`,
    );
  }
  if (recipe.title) {
    parts.push(
      `<text x="${x0 + panelW / 2}" y="20" text-anchor="middle" font-family="monospace" ` +
        `font-size="13">${esc(recipe.title)}</text>`,
    );
  }

  // curves, clipped to the panel by construction (y >= 0, max scaled in)
  slices.forEach((s, i) => {
    const color = LINE_COLORS[i % LINE_COLORS.length];
    const pts: string[] = [];
    for (let k = 0; k < q1.length; k++) {
      pts.push(`${px(q1[k])},${py(s.values[k])}`);
    }
    parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${pts.join(" ")}"/>`,
    );
  });

  // legend, top right inside the panel
  const labels = recipe.series.map((s, i) => s.label ?? `series ${i}`);
  const legendW = Math.max(...labels.map((t) => t.length)) * 7 + 34;
  let ly = margin.top + 8;
  const lx = margin.left + panelW - legendW;
  labels.forEach((label, i) => {
    const color = LINE_COLORS[i % LINE_COLORS.length];
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="${color}" ` +
        `stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${lx + 24}" y="${ly}" dominant-baseline="middle" ${textStyle}>` +
        `${esc(label)}</text>`,
    );
    ly += 15;
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Read every CSV named in the recipe and write the overlaid slice SVG.
 * Schema problems (including mismatched q1 axes) throw before the output
 * file is created.  Returns the output path.
 */
export function renderSlices(recipe: SlicesRecipe): string {
  const tables = recipe.series.map((s) => readGridCsv(s.csv));
  const svg = renderSlicesSvg(tables, recipe);
  writeFileSync(recipe.out, svg);
  return recipe.out;
}
