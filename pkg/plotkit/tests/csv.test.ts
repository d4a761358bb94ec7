import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { gridColumn, readGridCsv, SchemaError, sliceAtQ2 } from "../src/csv.js";
import { fixture, tamperedFixture, tmpDir } from "./helpers.js";

describe("readGridCsv", () => {
  it("parses a grid fixture with its sidecar", () => {
    const table = readGridCsv(fixture("single.csv"));
    expect(table.n1).toBe(96);
    expect(table.n2).toBe(64);
    expect(table.q1[0]).toBe(-2);
    expect(table.q1[95]).toBe(7);
    expect(table.q2[0]).toBe(-3);
    expect(table.q2[63]).toBe(3);
    expect(table.meta.u).toBe(0.5);
    expect(table.meta.bare).toBe(false);
    expect([...table.columns.keys()]).toEqual(["density"]);

    const density = gridColumn(table);
    expect(density.length).toBe(96 * 64);
    for (const v of density) {
      expect(Number.isFinite(v)).toBe(true);
      expect(v).toBeGreaterThanOrEqual(0);
    }
  });

  it("keeps axes strictly increasing when the scan says so", () => {
    const table = readGridCsv(fixture("pair.csv"));
    for (let i = 1; i < table.n1; i++) expect(table.q1[i]).toBeGreaterThan(table.q1[i - 1]);
    for (let i = 1; i < table.n2; i++) expect(table.q2[i]).toBeGreaterThan(table.q2[i - 1]);
  });

  it("rejects a header that disagrees with the sidecar", () => {
    const path = tamperedFixture("samesign-theta1.csv", {
      csv: (text) => text.replace("q1,q2,density", "q1,q2,rho"),
    });
    expect(() => readGridCsv(path)).toThrow(SchemaError);
    expect(() => readGridCsv(path)).toThrow(/does not match sidecar columns/);
  });

  it("rejects a truncated scan", () => {
    const path = tamperedFixture("samesign-theta1.csv", {
      csv: (text) => text.split("\n").slice(0, -2).join("\n") + "\n",
    });
    expect(() => readGridCsv(path)).toThrow(/expected 257 data rows/);
  });

  it("rejects an empty grid before doing anything else", () => {
    const path = tamperedFixture("samesign-theta1.csv", {
      csv: (text) => text.split("\n")[0] + "\n",
      meta: (text) => text.replace(/"shape":\s*\[[^\]]*\]/, '"shape": [0, 0]'),
    });
    expect(() => readGridCsv(path)).toThrow(/empty grid: nothing to render/);
  });

  it("rejects a CSV without its sidecar", () => {
    const bare = join(tmpDir(), "orphan.csv");
    writeFileSync(bare, readFileSync(fixture("samesign-theta1.csv"), "utf8"));
    expect(() => readGridCsv(bare)).toThrow(/cannot read sidecar/);
  });

  it("rejects a non-numeric cell", () => {
    const path = tamperedFixture("samesign-theta1.csv", {
      csv: (text) => {
        const lines = text.split("\n");
        const fields = lines[1].split(",");
        fields[2] = "oops";
        lines[1] = fields.join(",");
        return lines.join("\n");
      },
    });
    expect(() => readGridCsv(path)).toThrow(/not a number at row 1, column density/);
  });

  it("rejects rows that break the regular grid layout", () => {
    const path = tamperedFixture("pair.csv", {
      csv: (text) => {
        const lines = text.split("\n");
        const swap = lines[2];
        lines[2] = lines[2 + 160];
        lines[2 + 160] = swap;
        return lines.join("\n");
      },
    });
    expect(() => readGridCsv(path)).toThrow(/breaks the regular grid layout/);
  });
});

describe("gridColumn and sliceAtQ2", () => {
  it("reports the available columns when asked for a missing one", () => {
    const table = readGridCsv(fixture("single.csv"));
    expect(() => gridColumn(table, "cross")).toThrow(/no column "cross".*density/);
  });

  it("slices the row nearest to the requested q2", () => {
    const table = readGridCsv(fixture("pair.csv"));
    const slice = sliceAtQ2(table, 0);
    expect(slice.q1).toBe(table.q1);
    expect(slice.values.length).toBe(table.n1);
    // 40 evenly spaced q2 values straddle zero without hitting it
    expect(Math.abs(slice.q2)).toBeGreaterThan(0);
    expect(Math.abs(slice.q2)).toBeLessThan(0.08);

    const top = sliceAtQ2(table, 99);
    expect(top.q2).toBe(table.q2[table.n2 - 1]);
  });
});
