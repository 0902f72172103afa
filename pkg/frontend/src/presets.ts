import type { InstanceDoc } from './types'

/**
 * Two competing basins in one 2-D block: a shallow basin at (60, 60)
 * with offset 0 and a deeper one at (-60, -60) with offset -5.  The min
 * envelope gives two local minima, the deeper one global.
 */
export function twoBasinPreset(): InstanceDoc {
  const basin = (center: [number, number], offset: number) => ({
    form: 'per_direction' as const,
    center: [...center],
    offset,
    kappa_plus: [100, 100],
    kappa_minus: [100, 100],
    p_plus: [0.5, 0.5],
    p_minus: [0.5, 0.5],
    delta: 100,
    r_ref: 100,
    angles: [] as [number, number, number][],
    transforms: [],
  })
  return {
    schema_version: 1,
    objective_sense: 'minimize',
    dimension: 2,
    overlap_allowed: false,
    provenance: null,
    blocks: [
      {
        indices: [1, 2],
        weight: 1,
        bounds: [
          [-100, 100],
          [-100, 100],
        ],
        components: [basin([60, 60], 0), basin([-60, -60], -5)],
      },
    ],
  }
}

/** Labels for the preset's basin centers, deepest first. */
export function presetBasinMarkers(doc: InstanceDoc): { x1: number; x2: number; label: string }[] {
  const comps = doc.blocks[0].components
    .map((c, i) => ({ c, i }))
    .sort((a, b) => a.c.offset - b.c.offset)
  return comps.map(({ c, i }, rank) => ({
    x1: c.center[0],
    x2: c.center[1],
    label: rank === 0 ? `global min (β=${c.offset})` : `local min ${i} (β=${c.offset})`,
  }))
}
