import type { Raster } from "./png.js";

/**
 * A small 5x7 pixel font: digits, lowercase letters, and the punctuation
 * that appears in axis labels and tick values.  Uppercase input is folded
 * to lowercase; anything else renders as a hollow box so missing glyphs
 * are visible rather than silent.
 */
const GLYPHS: Record<string, readonly string[]> = {
  "0": [".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."],
  "1": ["..X..", ".XX..", "..X..", "..X..", "..X..", "..X..", ".XXX."],
  "2": [".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"],
  "3": [".XXX.", "X...X", "....X", "..XX.", "....X", "X...X", ".XXX."],
  "4": ["...X.", "..XX.", ".X.X.", "X..X.", "XXXXX", "...X.", "...X."],
  "5": ["XXXXX", "X....", "XXXX.", "....X", "....X", "X...X", ".XXX."],
  "6": ["..XX.", ".X...", "X....", "XXXX.", "X...X", "X...X", ".XXX."],
  "7": ["XXXXX", "....X", "...X.", "..X..", "..X..", "..X..", "..X.."],
  "8": [".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."],
  "9": [".XXX.", "X...X", "X...X", ".XXXX", "....X", "...X.", ".XX.."],
  a: [".....", ".....", ".XXX.", "....X", ".XXXX", "X...X", ".XXXX"],
  b: ["X....", "X....", "XXXX.", "X...X", "X...X", "X...X", "XXXX."],
  c: [".....", ".....", ".XXX.", "X....", "X....", "X...X", ".XXX."],
  d: ["....X", "....X", ".XXXX", "X...X", "X...X", "X...X", ".XXXX"],
  e: [".....", ".....", ".XXX.", "X...X", "XXXXX", "X....", ".XXX."],
  f: ["..XX.", ".X..X", ".X...", "XXX..", ".X...", ".X...", ".X..."],
  g: [".....", ".XXXX", "X...X", "X...X", ".XXXX", "....X", ".XXX."],
  h: ["X....", "X....", "XXXX.", "X...X", "X...X", "X...X", "X...X"],
  i: ["..X..", ".....", ".XX..", "..X..", "..X..", "..X..", ".XXX."],
  j: ["...X.", ".....", "..XX.", "...X.", "...X.", "X..X.", ".XX.."],
  k: ["X....", "X....", "X..X.", "X.X..", "XX...", "X.X..", "X..X."],
  l: [".XX..", "..X..", "..X..", "..X..", "..X..", "..X..", ".XXX."],
  m: [".....", ".....", "XX.X.", "X.X.X", "X.X.X", "X.X.X", "X...X"],
  n: [".....", ".....", "XXXX.", "X...X", "X...X", "X...X", "X...X"],
  o: [".....", ".....", ".XXX.", "X...X", "X...X", "X...X", ".XXX."],
  p: [".....", "XXXX.", "X...X", "X...X", "XXXX.", "X....", "X...."],
  q: [".....", ".XXXX", "X...X", "X...X", ".XXXX", "....X", "....X"],
  r: [".....", ".....", "X.XX.", "XX..X", "X....", "X....", "X...."],
  s: [".....", ".....", ".XXXX", "X....", ".XXX.", "....X", "XXXX."],
  t: [".X...", ".X...", "XXX..", ".X...", ".X...", ".X..X", "..XX."],
  u: [".....", ".....", "X...X", "X...X", "X...X", "X..XX", ".XX.X"],
  v: [".....", ".....", "X...X", "X...X", "X...X", ".X.X.", "..X.."],
  w: [".....", ".....", "X...X", "X.X.X", "X.X.X", "X.X.X", ".X.X."],
  x: [".....", ".....", "X...X", ".X.X.", "..X..", ".X.X.", "X...X"],
  y: [".....", "X...X", "X...X", ".XXXX", "....X", "X...X", ".XXX."],
  z: [".....", ".....", "XXXXX", "...X.", "..X..", ".X...", "XXXXX"],
  " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
  ".": [".....", ".....", ".....", ".....", ".....", ".XX..", ".XX.."],
  ",": [".....", ".....", ".....", ".....", ".XX..", "..X..", ".X..."],
  "-": [".....", ".....", ".....", "XXXXX", ".....", ".....", "....."],
  "+": [".....", "..X..", "..X..", "XXXXX", "..X..", "..X..", "....."],
  "/": ["....X", "....X", "...X.", "..X..", ".X...", "X....", "X...."],
  "=": [".....", ".....", "XXXXX", ".....", "XXXXX", ".....", "....."],
  ":": [".....", ".XX..", ".XX..", ".....", ".XX..", ".XX..", "....."],
  "(": ["...X.", "..X..", ".X...", ".X...", ".X...", "..X..", "...X."],
  ")": [".X...", "..X..", "...X.", "...X.", "...X.", "..X..", ".X..."],
};

const BOX: readonly string[] = ["XXXXX", "X...X", "X...X", "X...X", "X...X", "X...X", "XXXXX"];

function glyph(ch: string): readonly string[] {
  return GLYPHS[ch] ?? GLYPHS[ch.toLowerCase()] ?? BOX;
}

/** Advance per character, in unscaled pixels (5 wide plus 1 of spacing). */
export const CHAR_ADVANCE = 6;

/** Rendered width of a text run. */
export function textWidth(text: string, scale = 1): number {
  if (text.length === 0) return 0;
  return (text.length * CHAR_ADVANCE - 1) * scale;
}

/** Draw text with its top-left corner at (x, y). */
export function drawText(
  raster: Raster,
  x: number,
  y: number,
  text: string,
  color: readonly [number, number, number],
  scale = 1,
): void {
  for (let i = 0; i < text.length; i++) {
    const rows = glyph(text[i]);
    const ox = x + i * CHAR_ADVANCE * scale;
    for (let gy = 0; gy < 7; gy++) {
      for (let gx = 0; gx < 5; gx++) {
        if (rows[gy][gx] === "X") {
          raster.fillRect(ox + gx * scale, y + gy * scale, scale, scale, color);
        }
      }
    }
  }
}

/** Draw text rotated a quarter turn counterclockwise, reading bottom to top;
 * (x, y) is the top-left corner of the rotated run's bounding box. */
export function drawTextVertical(
  raster: Raster,
  x: number,
  y: number,
  text: string,
  color: readonly [number, number, number],
  scale = 1,
): void {
  const height = textWidth(text, scale);
  for (let i = 0; i < text.length; i++) {
    const rows = glyph(text[i]);
    // character i sits higher up for larger i
    const oy = y + height - (i * CHAR_ADVANCE + 5) * scale;
    for (let gy = 0; gy < 7; gy++) {
      for (let gx = 0; gx < 5; gx++) {
        if (rows[gy][gx] === "X") {
          // (gx, gy) -> (gy, 4 - gx): quarter turn counterclockwise
          raster.fillRect(x + gy * scale, oy + (4 - gx) * scale, scale, scale, color);
        }
      }
    }
  }
}
