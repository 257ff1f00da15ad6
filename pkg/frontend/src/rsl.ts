/** Minimal client-side RSL resolution: theme + timing with fallback.
 *
 * The player only consumes presentation fields. Anything malformed or
 * out of bounds falls back to the defaults, mirroring the pipeline's
 * total-interpretation contract.
 */

export interface PlayerTheme {
  background: string;
  text: string;
  primary: string;
}

export interface PlayerStyleConfig {
  theme: PlayerTheme;
  transition: number;
  pause: number;
  animations: Record<string, string>;
}

export const DEFAULT_CONFIG: PlayerStyleConfig = {
  theme: { background: "#1A1A1A", text: "#FFFFFF", primary: "#3498DB" },
  transition: 0.5,
  pause: 0.3,
  animations: {},
};

const HEX = /^#[0-9A-Fa-f]{6}$/;

function bounded(value: unknown, lo: number, hi: number, fallback: number): number {
  if (typeof value !== "number" || Number.isNaN(value)) return fallback;
  if (value < lo || value > hi) return fallback;
  return value;
}

export function resolveRsl(doc: unknown): PlayerStyleConfig {
  const config: PlayerStyleConfig = {
    theme: { ...DEFAULT_CONFIG.theme },
    transition: DEFAULT_CONFIG.transition,
    pause: DEFAULT_CONFIG.pause,
    animations: {},
  };
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) return config;
  const raw = doc as any;
  const theme = raw.theme;
  if (typeof theme === "object" && theme !== null) {
    for (const key of ["background", "text", "primary"] as const) {
      if (typeof theme[key] === "string" && HEX.test(theme[key])) {
        config.theme[key] = theme[key];
      }
    }
  }
  const timeline = raw.timeline;
  if (typeof timeline === "object" && timeline !== null) {
    config.transition = bounded(timeline.transition, 0.1, 2.0, config.transition);
    config.pause = bounded(timeline.pause, 0.0, 1.0, config.pause);
  }
  if (Array.isArray(raw.rules)) {
    for (const rule of raw.rules) {
      const op = rule?.when?.op;
      const variant = rule?.do?.animation?.variant;
      if (typeof op === "string"
          && ["pulse", "glow", "shake", "fade", "morph"].includes(variant)) {
        config.animations[op] = variant;
      }
    }
  }
  return config;
}
