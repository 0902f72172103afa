// Typed client for the local HTTP/JSON service.  Every number the UI
// displays comes through here; the client never computes landscape
// values itself.

import type {
  DefaultsResponse,
  EvaluateResponse,
  GridRequestBody,
  GridResponse,
  InstanceDoc,
  OptimumResponse,
  ValidationReport,
} from './types'

export class ApiError extends Error {
  constructor(message: string, public status: number) {
    super(message)
  }
}

/** PUT /api/instance rejected the document; the server state is unchanged. */
export class InstanceRejected extends ApiError {
  constructor(public report: ValidationReport) {
    super(report.errors.join('; '), 422)
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  constructor(
    private baseUrl: string = '',
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init)
    if (resp.status === 422) {
      throw new InstanceRejected((await resp.json()) as ValidationReport)
    }
    if (!resp.ok) {
      let detail = resp.statusText
      try {
        const body = await resp.json()
        if (typeof body.error === 'string') detail = body.error
      } catch {
        // keep the status text
      }
      throw new ApiError(detail, resp.status)
    }
    return (await resp.json()) as T
  }

  private post<T>(path: string, body: unknown, method = 'POST'): Promise<T> {
    return this.request<T>(path, {
      method,
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    })
  }

  getInstance(): Promise<InstanceDoc> {
    return this.request('/api/instance')
  }

  putInstance(doc: InstanceDoc): Promise<ValidationReport> {
    return this.post('/api/instance', doc, 'PUT')
  }

  randomInstance(seed: number, strata?: object): Promise<InstanceDoc> {
    return this.post('/api/random', strata ? { seed, strata } : { seed })
  }

  evaluate(points: number[][]): Promise<EvaluateResponse> {
    return this.post('/api/evaluate', { points })
  }

  grid(body: GridRequestBody): Promise<GridResponse> {
    return this.post('/api/grid', body)
  }

  optimum(): Promise<OptimumResponse> {
    return this.request('/api/optimum')
  }

  defaults(): Promise<DefaultsResponse> {
    return this.request('/api/defaults')
  }
}
