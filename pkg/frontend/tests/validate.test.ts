/** Validation parity with the pipeline's validator corpus.
 *
 * Every clean corpus document loads; every defect document is rejected,
 * with identical codes for the five structural invariant classes.
 */

import { readFileSync, readdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadBundle } from "../src/player.js";
import { validateTraceDocument } from "../src/validate.js";

const CORPUS = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "tests", "corpus");

// The five structural invariant classes must match codes exactly.
const FIVE_CLASSES: Record<string, string> = {
  "bad_version_numeric.json": "VERSION_NOT_STRING",
  "bad_ops_flat.json": "OPS_NOT_2D",
  "bad_infinity.json": "INFINITY_TOKEN",
  "bad_dangling_edge.json": "DANGLING_EDGE",
  "bad_highlight_string.json": "BAD_HIGHLIGHT_TYPE",
  "bad_highlight_float.json": "BAD_HIGHLIGHT_TYPE",
};

// Every other defect document must be rejected too (code parity expected).
const OTHER_DEFECTS: Record<string, string> = {
  "bad_version_wrong.json": "UNSUPPORTED_VERSION",
  "bad_unknown_op.json": "UNKNOWN_OP",
  "bad_params.json": "BAD_PARAMS",
  "bad_unknown_extension.json": "UNKNOWN_EXTENSION",
  "bad_dynamic_ref.json": "STEP_APPLY_FAILED",
  "bad_duplicate_node.json": "DUPLICATE_ID",
  "bad_highlight_range.json": "HIGHLIGHT_OUT_OF_RANGE",
};

function corpusText(name: string): string {
  return readFileSync(join(CORPUS, name), "utf-8");
}

describe("validation parity", () => {
  const names = readdirSync(CORPUS).filter((f) => f.endsWith(".json"));

  it("covers the whole corpus", () => {
    const defects = new Set([...Object.keys(FIVE_CLASSES), ...Object.keys(OTHER_DEFECTS)]);
    for (const name of names) {
      if (name.startsWith("bad_")) expect(defects.has(name)).toBe(true);
    }
  });

  for (const name of names.filter((n) => !n.startsWith("bad_"))) {
    it(`accepts ${name}`, () => {
      const result = validateTraceDocument(corpusText(name));
      expect(result.diagnostics).toEqual([]);
      expect(result.valid).toBe(true);
    });
  }

  for (const [name, code] of Object.entries(FIVE_CLASSES)) {
    it(`rejects ${name} with ${code}`, () => {
      const result = validateTraceDocument(corpusText(name));
      expect(result.valid).toBe(false);
      expect([...new Set(result.diagnostics.map((d) => d.code))]).toEqual([code]);
    });
  }

  for (const [name, code] of Object.entries(OTHER_DEFECTS)) {
    it(`rejects ${name} with ${code}`, () => {
      const result = validateTraceDocument(corpusText(name));
      expect(result.valid).toBe(false);
      expect(result.diagnostics.map((d) => d.code)).toContain(code);
    });
  }

  it("loadBundle shows diagnostics instead of playing invalid traces", () => {
    const result = loadBundle(corpusText("bad_version_numeric.json"));
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.diagnostics[0].code).toBe("VERSION_NOT_STRING");
    }
  });

  it("loadBundle plays the reference document", () => {
    const result = loadBundle(corpusText("f1_dijkstra.json"));
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(result.player.frameCount).toBe(2);
      const frame1 = result.player.seek(1);
      const ds = frame1.data_state;
      if (ds.type !== "graph") throw new Error("expected graph");
      expect(ds.structure.nodes.find((n) => n.id === "A")?.styleKey).toBe("current");
      expect(frame1.highlight).toEqual([2]);
    }
  });
});
