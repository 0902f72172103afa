// Sync controller: edits flow through a debounced PUT (at most 5
// instance updates per second), each accepted update triggers a grid
// refresh, and only one grid request is in flight at a time — a newer
// edit supersedes an older pending response.

import { ApiClient, InstanceRejected } from './api'
import { rateLimited, type Debounced } from './debounce'
import type { GridRequestBody, GridResponse, InstanceDoc, ValidationReport } from './types'

export const MAX_UPDATES_PER_SECOND = 5

export interface SyncEvents {
  onGrid(grid: GridResponse): void
  onGridStale(): void
  onRejected(report: ValidationReport): void
  onAccepted(report: ValidationReport): void
  onError(message: string): void
}

export interface SliceSelection {
  axis1: number
  axis2: number
  min1: number
  max1: number
  min2: number
  max2: number
  resolution: number
  /** Values for pinned dimensions; server defaults to the optimum slice. */
  fixed?: number[]
}

export function gridRequestFor(slice: SliceSelection): GridRequestBody {
  return {
    axis1: slice.axis1,
    axis2: slice.axis2,
    min1: slice.min1,
    max1: slice.max1,
    resolution1: slice.resolution,
    min2: slice.min2,
    max2: slice.max2,
    resolution2: slice.resolution,
    ...(slice.fixed ? { fixed: slice.fixed } : {}),
  }
}

export class SyncController {
  private putQueue: Debounced<[InstanceDoc]>
  private gridGeneration = 0

  constructor(
    private api: ApiClient,
    private events: SyncEvents,
    private slice: () => SliceSelection,
  ) {
    this.putQueue = rateLimited(
      (doc: InstanceDoc) => void this.pushInstance(doc),
      1000 / MAX_UPDATES_PER_SECOND,
    )
  }

  /** Called on every control change; rate-capped towards the server. */
  edit(doc: InstanceDoc): void {
    this.putQueue.call(doc)
  }

  flush(): void {
    this.putQueue.flush()
  }

  private async pushInstance(doc: InstanceDoc): Promise<void> {
    try {
      const report = await this.api.putInstance(doc)
      this.events.onAccepted(report)
      await this.refreshGrid()
    } catch (err) {
      if (err instanceof InstanceRejected) {
        // server state unchanged; surface the report inline
        this.events.onRejected(err.report)
      } else {
        this.events.onError(err instanceof Error ? err.message : String(err))
      }
    }
  }

  async refreshGrid(): Promise<void> {
    const generation = ++this.gridGeneration
    this.events.onGridStale()
    try {
      const grid = await this.api.grid(gridRequestFor(this.slice()))
      if (generation !== this.gridGeneration) return // superseded
      this.events.onGrid(grid)
    } catch (err) {
      if (generation !== this.gridGeneration) return
      this.events.onError(err instanceof Error ? err.message : String(err))
    }
  }
}
