// Canvas heatmap of a 2-D landscape slice with optimum markers and a
// stale-frame indicator.  The renderer only draws numbers it received
// from the service; it never evaluates the landscape.

import { colorFor, makeScale } from './colormap'
import type { GridResponse, OptimumResponse } from './types'

export interface Marker {
  x1: number
  x2: number
  label: string
}

export function markersFromOptimum(
  opt: OptimumResponse,
  axis1Dim: number,
  axis2Dim: number,
): Marker[] {
  const markers: Marker[] = [
    {
      x1: opt.location[axis1Dim - 1],
      x2: opt.location[axis2Dim - 1],
      label: `optimum (${opt.exactness === 'exact' ? 'f*' : 'bound'} = ${opt.value.toPrecision(6)})`,
    },
  ]
  return markers
}

export class HeatmapView {
  private ctx: CanvasRenderingContext2D
  private lastGrid: GridResponse | null = null
  private markers: Marker[] = []
  private staleFlag = false

  constructor(private canvas: HTMLCanvasElement, private logScale = false) {
    const ctx = canvas.getContext('2d')
    if (!ctx) throw new Error('canvas 2d context unavailable')
    this.ctx = ctx
  }

  setLogScale(log: boolean): void {
    this.logScale = log
    if (this.lastGrid) this.render(this.lastGrid, this.markers)
  }

  /** While a newer grid is in flight, keep the old frame but flag it. */
  markStale(): void {
    this.staleFlag = true
    this.drawStaleBadge()
  }

  get stale(): boolean {
    return this.staleFlag
  }

  render(grid: GridResponse, markers: Marker[]): void {
    this.lastGrid = grid
    this.markers = markers
    this.staleFlag = false

    const [axis1, axis2] = grid.axes
    const w = this.canvas.width
    const h = this.canvas.height
    let min = Infinity
    let max = -Infinity
    for (const v of grid.values) {
      if (v < min) min = v
      if (v > max) max = v
    }
    const scale = makeScale(min, max, this.logScale)

    const image = this.ctx.createImageData(w, h)
    for (let py = 0; py < h; py++) {
      // canvas y grows downward; axis2 grows upward
      const i2 = Math.min(axis2.resolution - 1,
        Math.floor(((h - 1 - py) / h) * axis2.resolution))
      for (let px = 0; px < w; px++) {
        const i1 = Math.min(axis1.resolution - 1, Math.floor((px / w) * axis1.resolution))
        const value = grid.values[i1 * axis2.resolution + i2]
        const [r, g, b] = colorFor(scale.normalize(value))
        const at = (py * w + px) * 4
        image.data[at] = r
        image.data[at + 1] = g
        image.data[at + 2] = b
        image.data[at + 3] = 255
      }
    }
    this.ctx.putImageData(image, 0, 0)
    for (const marker of this.markers) this.drawMarker(marker, grid)
  }

  private toPixel(marker: Marker, grid: GridResponse): [number, number] | null {
    const [axis1, axis2] = grid.axes
    if (marker.x1 < axis1.min || marker.x1 > axis1.max) return null
    if (marker.x2 < axis2.min || marker.x2 > axis2.max) return null
    const px = ((marker.x1 - axis1.min) / (axis1.max - axis1.min)) * this.canvas.width
    const py = (1 - (marker.x2 - axis2.min) / (axis2.max - axis2.min)) * this.canvas.height
    return [px, py]
  }

  private drawMarker(marker: Marker, grid: GridResponse): void {
    const at = this.toPixel(marker, grid)
    if (!at) return
    const [px, py] = at
    const ctx = this.ctx
    ctx.strokeStyle = '#ffffff'
    ctx.lineWidth = 1.5
    ctx.beginPath()
    ctx.moveTo(px - 6, py)
    ctx.lineTo(px + 6, py)
    ctx.moveTo(px, py - 6)
    ctx.lineTo(px, py + 6)
    ctx.stroke()
    ctx.font = '11px sans-serif'
    ctx.fillStyle = '#ffffff'
    ctx.fillText(marker.label, px + 8, py - 6)
  }

  private drawStaleBadge(): void {
    const ctx = this.ctx
    ctx.fillStyle = 'rgba(0, 0, 0, 0.55)'
    ctx.fillRect(8, 8, 62, 18)
    ctx.fillStyle = '#ffd24d'
    ctx.font = '11px sans-serif'
    ctx.fillText('updating…', 14, 21)
  }
}
