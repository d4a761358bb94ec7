import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

export function fixture(name: string): string {
  return fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));
}

export function tmpDir(): string {
  return mkdtempSync(join(tmpdir(), "plotkit-"));
}

/** Copy a fixture pair into a temp dir, optionally rewriting either file. */
export function tamperedFixture(
  base: string,
  mutate: { csv?: (text: string) => string; meta?: (text: string) => string },
): string {
  const src = fixture(base);
  const csv = readFileSync(src, "utf8");
  const meta = readFileSync(src + ".meta.json", "utf8");
  const out = join(tmpDir(), base);
  writeFileSync(out, mutate.csv ? mutate.csv(csv) : csv);
  writeFileSync(out + ".meta.json", mutate.meta ? mutate.meta(meta) : meta);
  return out;
}
