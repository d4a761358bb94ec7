import { describe, expect, it } from "vitest";

import { colormap, LINE_COLORS } from "../src/colormap.js";

describe("colormap", () => {
  it("hits the dark and bright endpoints exactly", () => {
    expect(colormap(0)).toEqual([68, 1, 84]);
    expect(colormap(1)).toEqual([253, 231, 37]);
  });

  it("clamps out-of-range inputs", () => {
    expect(colormap(-3)).toEqual(colormap(0));
    expect(colormap(7)).toEqual(colormap(1));
  });

  it("passes through the middle anchor", () => {
    expect(colormap(0.5)).toEqual([33, 145, 140]);
  });

  it("interpolates between neighboring anchors componentwise", () => {
    const lo = colormap(0);
    const hi = colormap(1 / 16);
    const mid = colormap(1 / 32);
    for (let c = 0; c < 3; c++) {
      const a = Math.min(lo[c], hi[c]);
      const b = Math.max(lo[c], hi[c]);
      expect(mid[c]).toBeGreaterThanOrEqual(a);
      expect(mid[c]).toBeLessThanOrEqual(b);
    }
  });

  it("gets monotonically brighter", () => {
    let last = -1;
    for (let i = 0; i <= 64; i++) {
      const [r, g, b] = colormap(i / 64);
      const luminance = 0.2126 * r + 0.7152 * g + 0.0722 * b;
      expect(luminance).toBeGreaterThan(last);
      last = luminance;
    }
  });
});

describe("LINE_COLORS", () => {
  it("is a palette of distinct hex colors", () => {
    expect(LINE_COLORS.length).toBeGreaterThanOrEqual(4);
    for (const color of LINE_COLORS) expect(color).toMatch(/^#[0-9a-f]{6}$/);
    expect(new Set(LINE_COLORS).size).toBe(LINE_COLORS.length);
  });
});
