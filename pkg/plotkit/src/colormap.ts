/** Perceptually uniform dark-to-bright ramp, 17 anchors interpolated linearly. */
const ANCHORS: ReadonlyArray<readonly [number, number, number]> = [
  [68, 1, 84],
  [72, 24, 106],
  [71, 45, 123],
  [66, 64, 134],
  [59, 82, 139],
  [51, 99, 141],
  [44, 114, 142],
  [38, 130, 142],
  [33, 145, 140],
  [31, 160, 136],
  [40, 174, 128],
  [63, 188, 115],
  [94, 201, 98],
  [132, 212, 75],
  [173, 220, 48],
  [216, 226, 25],
  [253, 231, 37],
];

/** Map t in [0, 1] (clamped) to an RGB triple. */
export function colormap(t: number): [number, number, number] {
  const x = t <= 0 ? 0 : t >= 1 ? 1 : t;
  const pos = x * (ANCHORS.length - 1);
  const lo = Math.min(Math.floor(pos), ANCHORS.length - 2);
  const w = pos - lo;
  const a = ANCHORS[lo];
  const b = ANCHORS[lo + 1];
  return [
    Math.round(a[0] + w * (b[0] - a[0])),
    Math.round(a[1] + w * (b[1] - a[1])),
    Math.round(a[2] + w * (b[2] - a[2])),
  ];
}

/** Line colors for slice overlays, cycled in order. */
export const LINE_COLORS: readonly string[] = [
  "#3b528b",
  "#d1495b",
  "#35b779",
  "#b8860b",
  "#443983",
  "#21918c",
];
