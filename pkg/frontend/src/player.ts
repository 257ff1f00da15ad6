/** The player state machine.
 *
 * Frames are cached as they are first computed, so backward stepping and
 * seeking restore cached states instead of inverting deltas (deltas are
 * not generally invertible — removeNode drops information). The displayed
 * model at index i is always the replayed state i.
 */

import { Diagnostic, StateDoc, TraceDoc, deepCopy } from "./model.js";
import { advanceState, initialState } from "./replay.js";
import { DEFAULT_CONFIG, PlayerStyleConfig, resolveRsl } from "./rsl.js";
import { validateTraceDocument } from "./validate.js";

export type LoadResult =
  | { ok: true; player: TracePlayer }
  | { ok: false; diagnostics: Diagnostic[] };

export class TracePlayer {
  readonly trace: TraceDoc;
  readonly config: PlayerStyleConfig;
  readonly frameCount: number;
  private cache: (StateDoc | null)[];
  private index = 0;
  private timer: ReturnType<typeof setInterval> | null = null;
  onFrame: ((index: number, state: StateDoc) => void) | null = null;

  constructor(trace: TraceDoc, initial: StateDoc, config: PlayerStyleConfig) {
    this.trace = trace;
    this.config = config;
    this.frameCount = trace.deltas.length + 1;
    this.cache = new Array(this.frameCount).fill(null);
    this.cache[0] = initial;
  }

  get currentIndex(): number {
    return this.index;
  }

  /** Replay state at `index`, computing and caching any missing prefix. */
  stateAt(index: number): StateDoc {
    const target = Math.min(Math.max(index, 0), this.frameCount - 1);
    let known = target;
    while (this.cache[known] === null) known--;
    let state = this.cache[known]!;
    for (let i = known + 1; i <= target; i++) {
      state = advanceState(state, this.trace.deltas[i - 1]);
      this.cache[i] = state;
    }
    return this.cache[target]!;
  }

  current(): StateDoc {
    return this.stateAt(this.index);
  }

  step(direction: "forward" | "backward"): StateDoc {
    const next = direction === "forward" ? this.index + 1 : this.index - 1;
    if (next < 0 || next >= this.frameCount) {
      return this.current(); // no-op at the ends
    }
    this.index = next;
    const state = this.current();
    this.onFrame?.(this.index, state);
    return state;
  }

  seek(index: number): StateDoc {
    this.index = Math.min(Math.max(index, 0), this.frameCount - 1);
    const state = this.current();
    this.onFrame?.(this.index, state);
    return state;
  }

  get playing(): boolean {
    return this.timer !== null;
  }

  /** Advance one frame per (transition + pause) seconds until the end. */
  play(): void {
    if (this.timer !== null) return;
    const period = (this.config.transition + this.config.pause) * 1000;
    this.timer = setInterval(() => {
      if (this.index >= this.frameCount - 1) {
        this.pause();
        return;
      }
      this.step("forward");
    }, period);
  }

  pause(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

export function loadBundle(traceDoc: string | unknown, rslDoc?: string | unknown): LoadResult {
  const result = validateTraceDocument(traceDoc);
  if (!result.valid || result.trace === null) {
    return { ok: false, diagnostics: result.diagnostics };
  }
  let rsl: unknown = rslDoc;
  if (typeof rslDoc === "string") {
    try {
      rsl = JSON.parse(rslDoc);
    } catch {
      rsl = undefined; // invalid style input falls back to defaults
    }
  }
  const config = rsl === undefined ? deepCopy(DEFAULT_CONFIG) : resolveRsl(rsl);
  const player = new TracePlayer(result.trace, initialState(result.trace), config);
  return { ok: true, player };
}
