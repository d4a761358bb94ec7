/** Tick positions at 1/2/5 steps covering [lo, hi], about `target` of them. */
export function niceTicks(lo: number, hi: number, target = 5): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const rough = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (mag * m >= rough) {
      step = mag * m;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-9 * span ? 0 : v);
  }
  return ticks;
}

/** Compact deterministic number label: shortest form at `sig` digits. */
export function fmtNumber(v: number, sig = 3): string {
  if (v === 0) return "0";
  if (!Number.isFinite(v)) return String(v);
  return String(Number(v.toPrecision(sig)));
}
