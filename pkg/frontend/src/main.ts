import { ApiClient } from './api'
import { HeatmapView, markersFromOptimum, type Marker } from './heatmap'
import { ParameterPanel } from './panel'
import { presetBasinMarkers, twoBasinPreset } from './presets'
import { SyncController, type SliceSelection } from './state'
import type { InstanceDoc } from './types'

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing element #${id}`)
  return node as T
}

async function start(): Promise<void> {
  const api = new ApiClient()
  const defaults = await api.defaults()

  const canvas = el<HTMLCanvasElement>('heatmap')
  const view = new HeatmapView(canvas)
  const status = el<HTMLElement>('status')
  const axis1Select = el<HTMLSelectElement>('axis1')
  const axis2Select = el<HTMLSelectElement>('axis2')
  const fixedInputs = el<HTMLElement>('fixed-coords')
  const logToggle = el<HTMLInputElement>('log-scale')

  let instance: InstanceDoc
  try {
    instance = await api.getInstance()
  } catch {
    instance = twoBasinPreset()
    await api.putInstance(instance)
  }

  let presetMarkers: Marker[] = []

  const slice = (): SliceSelection => {
    const axis1 = Number(axis1Select.value)
    const axis2 = Number(axis2Select.value)
    const fixed: number[] = []
    let haveFixed = false
    for (let i = 0; i < instance.dimension; i++) {
      const input = document.getElementById(`fixed-${i + 1}`) as HTMLInputElement | null
      const value = input && input.value !== '' ? Number(input.value) : 0
      if (input && input.value !== '') haveFixed = true
      fixed.push(value)
    }
    return {
      axis1, axis2,
      min1: -100, max1: 100, min2: -100, max2: 100,
      resolution: 121,
      ...(haveFixed && instance.dimension > 2 ? { fixed } : {}),
    }
  }

  const rebuildAxisSelectors = () => {
    for (const select of [axis1Select, axis2Select]) select.replaceChildren()
    for (let i = 1; i <= instance.dimension; i++) {
      for (const select of [axis1Select, axis2Select]) {
        const option = document.createElement('option')
        option.value = String(i)
        option.textContent = `dimension ${i}`
        select.appendChild(option)
      }
    }
    axis1Select.value = '1'
    axis2Select.value = String(Math.min(2, instance.dimension))
    fixedInputs.replaceChildren()
    if (instance.dimension > 2) {
      for (let i = 1; i <= instance.dimension; i++) {
        const input = document.createElement('input')
        input.type = 'number'
        input.id = `fixed-${i}`
        input.placeholder = `x${i} (optimum)`
        input.addEventListener('change', () => void sync.refreshGrid())
        fixedInputs.appendChild(input)
      }
    }
  }

  const panel = new ParameterPanel(el('panel'), defaults, instance, {
    onChange: (doc) => {
      instance = doc
      sync.edit(doc)
    },
  })

  const sync = new SyncController(api, {
    onGrid: async (grid) => {
      let markers: Marker[] = [...presetMarkers]
      try {
        const opt = await api.optimum()
        markers = markers.concat(
          markersFromOptimum(opt, grid.axes[0].dimension, grid.axes[1].dimension),
        )
      } catch {
        // optimum unavailable; render without the marker
      }
      view.render(grid, markers)
      status.textContent = ''
    },
    onGridStale: () => view.markStale(),
    onRejected: (report) => {
      panel.showErrors(report.errors)
      status.textContent = 'rejected; showing last accepted instance'
    },
    onAccepted: () => {
      panel.clearErrors()
      status.textContent = ''
    },
    onError: (message) => {
      status.textContent = message
    },
  }, slice)

  el<HTMLButtonElement>('preset-two-basins').addEventListener('click', async () => {
    instance = twoBasinPreset()
    presetMarkers = presetBasinMarkers(instance)
    panel.load(instance)
    await api.putInstance(instance)
    rebuildAxisSelectors()
    await sync.refreshGrid()
  })

  el<HTMLButtonElement>('randomize').addEventListener('click', async () => {
    const seed = Math.floor(Math.random() * 2 ** 31)
    instance = await api.randomInstance(seed)
    presetMarkers = []
    panel.load(instance)
    rebuildAxisSelectors()
    await sync.refreshGrid()
  })

  for (const select of [axis1Select, axis2Select]) {
    select.addEventListener('change', () => {
      if (axis1Select.value === axis2Select.value) {
        // keep the pair valid: bump the other axis
        const next = (Number(axis2Select.value) % instance.dimension) + 1
        axis2Select.value = String(next)
      }
      void sync.refreshGrid()
    })
  }
  logToggle.addEventListener('change', () => view.setLogScale(logToggle.checked))

  rebuildAxisSelectors()
  await sync.refreshGrid()
}

start().catch((err) => {
  const status = document.getElementById('status')
  if (status) status.textContent = `failed to start: ${err}`
})
