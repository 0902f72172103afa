/**
 * Trailing-edge debounce with a hard rate cap: however fast `call` is
 * invoked, `fn` runs at most once per `intervalMs` and always eventually
 * runs with the latest arguments.
 */
export interface Debounced<A extends unknown[]> {
  call(...args: A): void
  /** Cancel any pending trailing invocation. */
  cancel(): void
  /** Run a pending trailing invocation immediately, if any. */
  flush(): void
}

export function rateLimited<A extends unknown[]>(
  fn: (...args: A) => void,
  intervalMs: number,
  now: () => number = () => Date.now(),
  schedule: (cb: () => void, ms: number) => ReturnType<typeof setTimeout> = setTimeout,
  cancelTimer: (id: ReturnType<typeof setTimeout>) => void = clearTimeout,
): Debounced<A> {
  let lastRun = -Infinity
  let pending: A | null = null
  let timer: ReturnType<typeof setTimeout> | null = null

  const fire = () => {
    timer = null
    if (pending === null) return
    const args = pending
    pending = null
    lastRun = now()
    fn(...args)
  }

  return {
    call(...args: A) {
      pending = args
      if (timer !== null) return
      const wait = Math.max(0, intervalMs - (now() - lastRun))
      timer = schedule(fire, wait)
    },
    cancel() {
      if (timer !== null) cancelTimer(timer)
      timer = null
      pending = null
    },
    flush() {
      if (timer !== null) {
        cancelTimer(timer)
        fire()
      }
    },
  }
}
