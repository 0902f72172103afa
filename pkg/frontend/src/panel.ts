// Parameter panel: one control group per component, sliders bounded by
// the suggested ranges from /api/defaults so the panel never submits a
// value the server would reject outright.

import type { ComponentDoc, DefaultsResponse, InstanceDoc, ParamSpec } from './types'

export interface PanelCallbacks {
  onChange(doc: InstanceDoc): void
}

interface SliderSpec {
  label: string
  min: number
  max: number
  step: number
  get(c: ComponentDoc): number
  set(c: ComponentDoc, value: number): void
}

function range(spec: ParamSpec | undefined, fallback: [number, number]): [number, number] {
  const lo = spec?.suggested_range?.[0]
  const hi = spec?.suggested_range?.[1]
  return [typeof lo === 'number' ? lo : fallback[0], typeof hi === 'number' ? hi : fallback[1]]
}

function sliderSpecs(defaults: DefaultsResponse, dim: number): SliderSpec[] {
  const [pLo, pHi] = range(defaults.component.p, [0.2, 1.2])
  const [dLo, dHi] = range(defaults.component.delta, [1, 1000])
  const [rLo, rHi] = range(defaults.component.r_ref, [1, 100])
  const [kLo, kHi] = range(defaults.component.kappa, [1, 10000])
  const specs: SliderSpec[] = [
    {
      label: 'offset β',
      min: -1000, max: 0, step: 1,
      get: (c) => c.offset,
      set: (c, v) => { c.offset = v },
    },
    {
      label: 'rise Δ',
      min: dLo, max: dHi, step: 1,
      get: (c) => c.delta,
      set: (c, v) => { c.delta = v },
    },
    {
      label: 'reference radius',
      min: Math.max(rLo, 1e-6), max: rHi, step: 0.5,
      get: (c) => c.r_ref,
      set: (c, v) => { c.r_ref = v },
    },
    {
      label: 'exponent',
      min: pLo + 1e-6, max: pHi, step: 0.01,
      get: (c) => (c.form === 'single_exponent' ? c.p! : c.p_plus![0]),
      set: (c, v) => {
        if (c.form === 'single_exponent') {
          c.p = v
        } else {
          c.p_plus = c.p_plus!.map(() => v)
          c.p_minus = c.p_minus!.map(() => v)
        }
      },
    },
    {
      label: 'anisotropy κ',
      min: kLo, max: kHi, step: 1,
      get: (c) => c.kappa_plus[0],
      set: (c, v) => {
        c.kappa_plus = c.kappa_plus.map(() => v)
        c.kappa_minus = c.kappa_minus.map(() => v)
      },
    },
  ]
  for (let i = 0; i < dim; i++) {
    specs.push({
      label: `center[${i + 1}]`,
      min: -100, max: 100, step: 0.5,
      get: (c) => c.center[i],
      set: (c, v) => { c.center[i] = v },
    })
  }
  return specs
}

export class ParameterPanel {
  private doc: InstanceDoc
  private errorBoxes = new Map<string, HTMLElement>()

  constructor(
    private root: HTMLElement,
    private defaults: DefaultsResponse,
    doc: InstanceDoc,
    private callbacks: PanelCallbacks,
  ) {
    this.doc = structuredClone(doc)
    this.rebuild()
  }

  get document(): InstanceDoc {
    return this.doc
  }

  load(doc: InstanceDoc): void {
    this.doc = structuredClone(doc)
    this.rebuild()
  }

  /** Surface a server rejection inline on the matching control group. */
  showErrors(errors: string[]): void {
    for (const box of this.errorBoxes.values()) {
      box.textContent = ''
      box.hidden = true
    }
    for (const message of errors) {
      const match = message.match(/block (\d+) component (\d+)/)
      const key = match ? `${match[1]}:${match[2]}` : 'global'
      const box = this.errorBoxes.get(key) ?? this.errorBoxes.get('global')
      if (box) {
        box.textContent = box.textContent ? `${box.textContent}; ${message}` : message
        box.hidden = false
      }
    }
  }

  clearErrors(): void {
    this.showErrors([])
  }

  private rebuild(): void {
    this.root.replaceChildren()
    this.errorBoxes.clear()
    const globalError = document.createElement('div')
    globalError.className = 'error-box'
    globalError.hidden = true
    this.errorBoxes.set('global', globalError)
    this.root.appendChild(globalError)

    this.doc.blocks.forEach((block, j) => {
      block.components.forEach((comp, k) => {
        const group = document.createElement('fieldset')
        const legend = document.createElement('legend')
        legend.textContent = `block ${j + 1} / component ${k + 1} (${comp.form})`
        group.appendChild(legend)

        const errorBox = document.createElement('div')
        errorBox.className = 'error-box'
        errorBox.hidden = true
        this.errorBoxes.set(`${j}:${k}`, errorBox)
        group.appendChild(errorBox)

        for (const spec of sliderSpecs(this.defaults, comp.center.length)) {
          group.appendChild(this.slider(spec, j, k))
        }
        this.root.appendChild(group)
      })
    })
  }

  private slider(spec: SliderSpec, j: number, k: number): HTMLElement {
    const wrap = document.createElement('label')
    wrap.className = 'control'
    const text = document.createElement('span')
    const input = document.createElement('input')
    input.type = 'range'
    input.min = String(spec.min)
    input.max = String(spec.max)
    input.step = String(spec.step)
    const comp = this.doc.blocks[j].components[k]
    input.value = String(spec.get(comp))
    text.textContent = `${spec.label}: ${input.value}`
    input.addEventListener('input', () => {
      const value = Number(input.value)
      spec.set(this.doc.blocks[j].components[k], value)
      text.textContent = `${spec.label}: ${input.value}`
      this.callbacks.onChange(this.doc)
    })
    wrap.appendChild(text)
    wrap.appendChild(input)
    return wrap
  }
}
