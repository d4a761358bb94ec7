export { SchemaError, readGridCsv, gridColumn, sliceAtQ2 } from "./csv.js";
export type { GridMeta, GridTable } from "./csv.js";
export { colormap, LINE_COLORS } from "./colormap.js";
export { encodePng, Raster } from "./png.js";
export { niceTicks, fmtNumber } from "./axes.js";
export { renderHeatmap, renderHeatmapRaster } from "./heatmap.js";
export type { HeatmapRecipe } from "./heatmap.js";
export { renderSlices, renderSlicesSvg } from "./slices.js";
export type { SliceSeries, SlicesRecipe } from "./slices.js";
export { runCli } from "./cli.js";
