// Mirrors the service's JSON documents (schema_version 1).

export type ObjectiveSense = 'minimize' | 'maximize'
export type ComponentForm = 'per_direction' | 'single_exponent'

export interface TransformDoc {
  type: string
  [param: string]: unknown
}

export interface ComponentDoc {
  form: ComponentForm
  center: number[]
  offset: number
  kappa_plus: number[]
  kappa_minus: number[]
  delta: number
  r_ref: number
  angles: [number, number, number][]
  transforms: TransformDoc[]
  p?: number
  p_plus?: number[]
  p_minus?: number[]
}

export interface BlockDoc {
  indices: number[]
  weight: number
  bounds: [number, number][]
  components: ComponentDoc[]
}

export interface InstanceDoc {
  schema_version: number
  objective_sense: ObjectiveSense
  dimension: number
  overlap_allowed: boolean
  blocks: BlockDoc[]
  provenance: object | null
}

export interface ValidationReport {
  schema_version: number
  errors: string[]
  warnings: string[]
  rotation_residuals: Record<string, number>
}

export interface GridAxis {
  dimension: number
  min: number
  max: number
  resolution: number
  values: number[]
}

export interface GridResponse {
  schema_version?: number
  axes: [GridAxis, GridAxis]
  fixed: number[]
  values: number[]
}

export interface GridRequestBody {
  axis1: number
  axis2: number
  min1: number
  max1: number
  resolution1: number
  min2: number
  max2: number
  resolution2: number
  fixed?: number[]
}

export interface EvaluateResponse {
  schema_version: number
  values: number[]
  attribution: { block_id: number; block_value: number; component_id: number }[][]
}

export interface OptimumResponse {
  schema_version: number
  location: number[]
  value: number
  exactness: 'exact' | 'lower_bound'
  co_optimal: { block_id: number; component_ids: number[] }[]
}

export interface ParamSpec {
  suggested_range: [number | null, number | null]
  default: number | number[]
  description?: string
}

export interface DefaultsResponse {
  schema_version: number
  component: Record<string, ParamSpec>
  landscape: Record<string, ParamSpec>
  transforms: Record<string, Record<string, ParamSpec>>
  radial_presets: Record<string, { q: [number, number]; omega: [number, number] }>
}

/** Row-major lookup into a grid response: axis1 is the outer loop. */
export function gridValueAt(grid: GridResponse, i1: number, i2: number): number {
  return grid.values[i1 * grid.axes[1].resolution + i2]
}
