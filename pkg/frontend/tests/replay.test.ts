/** Replay fidelity: the player's per-frame models must equal the
 * pipeline's exported replay snapshots field-for-field, for every bundled
 * trace, across random step/seek traffic. */

import { readFileSync, readdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadBundle } from "../src/player.js";
import { replayTrace } from "../src/replay.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

interface Fixture {
  name: string;
  traceText: string;
  states: unknown[];
}

function loadFixtures(): Fixture[] {
  return readdirSync(FIXTURES, { withFileTypes: true })
    .filter((entry) => entry.isDirectory())
    .map((entry) => {
      const dir = join(FIXTURES, entry.name);
      const states = readdirSync(dir)
        .filter((f) => f.startsWith("state_"))
        .sort()
        .map((f) => JSON.parse(readFileSync(join(dir, f), "utf-8")));
      return {
        name: entry.name,
        traceText: readFileSync(join(dir, "trace.json"), "utf-8"),
        states,
      };
    });
}

const fixtures = loadFixtures();

/** Deterministic PRNG (mulberry32) so failures reproduce. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("replay fidelity", () => {
  it("found all nine bundled traces", () => {
    expect(fixtures.length).toBe(9);
  });

  for (const fixture of fixtures) {
    describe(fixture.name, () => {
      it("replays to the exported snapshots, frame by frame", () => {
        const result = loadBundle(fixture.traceText);
        expect(result.ok).toBe(true);
        if (!result.ok) return;
        const states = replayTrace(result.player.trace);
        expect(states.length).toBe(fixture.states.length);
        states.forEach((state, i) => {
          expect(state).toEqual(fixture.states[i]);
        });
      });

      it("matches snapshots under 1000 random step/seek actions", () => {
        const result = loadBundle(fixture.traceText);
        expect(result.ok).toBe(true);
        if (!result.ok) return;
        const player = result.player;
        const rand = mulberry32(0xc0ffee ^ fixture.name.length);
        for (let i = 0; i < 1000; i++) {
          const roll = rand();
          if (roll < 0.4) player.step("forward");
          else if (roll < 0.8) player.step("backward");
          else player.seek(Math.floor(rand() * (player.frameCount + 4)) - 2);
          const index = player.currentIndex;
          expect(index).toBeGreaterThanOrEqual(0);
          expect(index).toBeLessThan(player.frameCount);
          expect(player.current()).toEqual(fixture.states[index]);
        }
      });

      it("steps are no-ops at the ends and backward restores caches", () => {
        const result = loadBundle(fixture.traceText);
        if (!result.ok) throw new Error("load failed");
        const player = result.player;
        player.step("backward");
        expect(player.currentIndex).toBe(0);
        player.step("forward");
        player.step("backward");
        expect(player.current()).toEqual(fixture.states[0]);
        player.seek(9999);
        expect(player.currentIndex).toBe(player.frameCount - 1);
        player.step("forward");
        expect(player.currentIndex).toBe(player.frameCount - 1);
        player.seek(0);
        expect(player.current()).toEqual(fixture.states[0]);
      });
    });
  }
});

describe("player configuration", () => {
  it("applies theme and timing from rsl.json, defaults otherwise", () => {
    const fixture = fixtures[0];
    const withRsl = loadBundle(fixture.traceText, JSON.stringify({
      theme: { background: "#101010", primary: "#FF8800" },
      timeline: { transition: 1.0, pause: 0.5 },
    }));
    if (!withRsl.ok) throw new Error("load failed");
    expect(withRsl.player.config.theme.primary).toBe("#FF8800");
    expect(withRsl.player.config.transition).toBe(1.0);

    const bare = loadBundle(fixture.traceText);
    if (!bare.ok) throw new Error("load failed");
    expect(bare.player.config.theme.background).toBe("#1A1A1A");
    expect(bare.player.config.transition).toBe(0.5);

    const broken = loadBundle(fixture.traceText, "{not json");
    if (!broken.ok) throw new Error("load failed");
    expect(broken.player.config.theme.background).toBe("#1A1A1A");
  });

  it("out-of-bound timing falls back to defaults", () => {
    const fixture = fixtures[0];
    const result = loadBundle(fixture.traceText, JSON.stringify({
      timeline: { transition: 99, pause: -2 },
    }));
    if (!result.ok) throw new Error("load failed");
    expect(result.player.config.transition).toBe(0.5);
    expect(result.player.config.pause).toBe(0.3);
  });
});
