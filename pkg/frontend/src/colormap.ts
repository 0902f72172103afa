// Perceptually uniform color scale (viridis control points, linearly
// interpolated) with an optional log mapping for large value spreads.

const STOPS: [number, number, number][] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
]

export function colorFor(t: number): [number, number, number] {
  const clamped = Math.min(1, Math.max(0, t))
  const scaled = clamped * (STOPS.length - 1)
  const lo = Math.floor(scaled)
  const hi = Math.min(STOPS.length - 1, lo + 1)
  const frac = scaled - lo
  const a = STOPS[lo]
  const b = STOPS[hi]
  return [
    Math.round(a[0] + (b[0] - a[0]) * frac),
    Math.round(a[1] + (b[1] - a[1]) * frac),
    Math.round(a[2] + (b[2] - a[2]) * frac),
  ]
}

export interface ValueScale {
  /** Map a raw landscape value to [0, 1]. */
  normalize(value: number): number
}

export function makeScale(min: number, max: number, log: boolean): ValueScale {
  if (!(max > min)) {
    return { normalize: () => 0.5 }
  }
  if (!log) {
    return { normalize: (v) => (v - min) / (max - min) }
  }
  // shift so the minimum maps to 1 before taking the log
  const span = Math.log1p(max - min)
  return { normalize: (v) => Math.log1p(Math.max(0, v - min)) / span }
}
