import { writeFileSync } from "node:fs";

import { fmtNumber, niceTicks } from "./axes.js";
import { colormap } from "./colormap.js";
import { drawText, drawTextVertical, textWidth } from "./font.js";
import { gridColumn, readGridCsv, type GridTable } from "./csv.js";
import { Raster } from "./png.js";

const BLACK: [number, number, number] = [0, 0, 0];

/** How to turn one grid CSV into a heatmap PNG. */
export interface HeatmapRecipe {
  /** Grid CSV path; its `<csv>.meta.json` sidecar must sit next to it. */
  csv: string;
  /** Output PNG path. */
  out: string;
  /** Data column to plot (default "density"). */
  column?: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** Integer pixels per grid cell; default targets a ~480 px wide panel. */
  cellSize?: number;
}

interface Layout {
  cell: number;
  left: number;
  top: number;
  panelW: number;
  panelH: number;
  width: number;
  height: number;
}

function layout(table: GridTable, recipe: HeatmapRecipe): Layout {
  const cell =
    recipe.cellSize ?? Math.max(1, Math.min(16, Math.round(480 / Math.max(table.n1, table.n2))));
  if (!Number.isInteger(cell) || cell < 1) throw new Error("cellSize must be a positive integer");
  const panelW = table.n1 * cell;
  const panelH = table.n2 * cell;
  const left = 56;
  const top = recipe.title ? 26 : 12;
  return {
    cell,
    left,
    top,
    panelW,
    panelH,
    width: left + panelW + 88,
    height: top + panelH + 44,
  };
}

/** Pixel x of a q1 value (cell centers at both axis ends). */
function xPixel(l: Layout, q1: Float64Array, v: number): number {
  const span = q1[q1.length - 1] - q1[0];
  const frac = span === 0 ? 0.5 : (v - q1[0]) / span;
  return Math.round(l.left + l.cell / 2 + frac * (l.panelW - l.cell));
}

function yPixel(l: Layout, q2: Float64Array, v: number): number {
  const span = q2[q2.length - 1] - q2[0];
  const frac = span === 0 ? 0.5 : (v - q2[0]) / span;
  return Math.round(l.top + l.panelH - l.cell / 2 - frac * (l.panelH - l.cell));
}

/** Render the heatmap into a raster; pure apart from reading the table. */
export function renderHeatmapRaster(table: GridTable, recipe: HeatmapRecipe): Raster {
  const values = gridColumn(table, recipe.column);
  const l = layout(table, recipe);
  const raster = new Raster(l.width, l.height);

  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const scale = hi > lo ? 1 / (hi - lo) : 0;

  // cells; q2 increases upward, PNG rows run downward
  for (let i2 = 0; i2 < table.n2; i2++) {
    const y = l.top + (table.n2 - 1 - i2) * l.cell;
    for (let i1 = 0; i1 < table.n1; i1++) {
      const t = scale === 0 ? 0.5 : (values[i2 * table.n1 + i1] - lo) * scale;
      raster.fillRect(l.left + i1 * l.cell, y, l.cell, l.cell, colormap(t));
    }
  }

  // frame
  raster.fillRect(l.left - 1, l.top - 1, l.panelW + 2, 1, BLACK);
  raster.fillRect(l.left - 1, l.top + l.panelH, l.panelW + 2, 1, BLACK);
  raster.fillRect(l.left - 1, l.top - 1, 1, l.panelH + 2, BLACK);
  raster.fillRect(l.left + l.panelW, l.top - 1, 1, l.panelH + 2, BLACK);

  // x ticks and labels
  for (const v of niceTicks(table.q1[0], table.q1[table.n1 - 1])) {
    const x = xPixel(l, table.q1, v);
    raster.fillRect(x, l.top + l.panelH + 1, 1, 4, BLACK);
    const label = fmtNumber(v);
    drawText(raster, x - Math.floor(textWidth(label) / 2), l.top + l.panelH + 8, label, BLACK);
  }
  const xLabel = recipe.xLabel ?? "q1/m";
  drawText(
    raster,
    l.left + Math.floor((l.panelW - textWidth(xLabel)) / 2),
    l.top + l.panelH + 22,
    xLabel,
    BLACK,
  );

  // y ticks and label
  for (const v of niceTicks(table.q2[0], table.q2[table.n2 - 1])) {
    const y = yPixel(l, table.q2, v);
    raster.fillRect(l.left - 5, y, 4, 1, BLACK);
    const label = fmtNumber(v);
    drawText(raster, l.left - 8 - textWidth(label), y - 3, label, BLACK);
  }
  const yLabel = recipe.yLabel ?? "q2/m";
  drawTextVertical(
    raster,
    8,
    l.top + Math.floor((l.panelH - textWidth(yLabel)) / 2),
    yLabel,
    BLACK,
  );

  // colour bar with its extrema
  const barX = l.left + l.panelW + 12;
  for (let i = 0; i < l.panelH; i++) {
    raster.fillRect(barX, l.top + i, 12, 1, colormap(1 - i / Math.max(1, l.panelH - 1)));
  }
  raster.fillRect(barX - 1, l.top - 1, 14, 1, BLACK);
  raster.fillRect(barX - 1, l.top + l.panelH, 14, 1, BLACK);
  raster.fillRect(barX - 1, l.top - 1, 1, l.panelH + 2, BLACK);
  raster.fillRect(barX + 12, l.top - 1, 1, l.panelH + 2, BLACK);
  drawText(raster, barX + 16, l.top - 3, fmtNumber(hi), BLACK);
  drawText(raster, barX + 16, l.top + l.panelH - 4, fmtNumber(lo), BLACK);

  if (recipe.title) {
    drawText(
      raster,
      l.left + Math.floor((l.panelW - textWidth(recipe.title)) / 2),
      Math.floor((l.top - 7) / 2),
      recipe.title,
      BLACK,
    );
  }
  return raster;
}

/**
 * Read the CSV named in the recipe and write the heatmap PNG.  Schema
 * problems (including an empty grid) throw before the output file is
 * created.  Returns the output path.
 */
export function renderHeatmap(recipe: HeatmapRecipe): string {
  const table = readGridCsv(recipe.csv);
  const raster = renderHeatmapRaster(table, recipe);
  writeFileSync(recipe.out, raster.encode());
  return recipe.out;
}
