/** Client-side re-validation of trace documents.
 *
 * The player refuses to play anything the pipeline's validator would
 * refuse. The five structural invariant classes carry the same codes
 * (VERSION_NOT_STRING, OPS_NOT_2D, INFINITY_TOKEN, DANGLING_EDGE,
 * BAD_HIGHLIGHT_TYPE); the remaining checks mirror the pipeline closely
 * enough that every rejected corpus document is rejected here too.
 */

import { Diagnostic, KNOWN_EXTENSIONS, OP_PARAMS, TraceDoc, VTA_VERSION } from "./model.js";
import { ApplyError, advanceState, initialState } from "./replay.js";

export interface ValidationResult {
  valid: boolean;
  diagnostics: Diagnostic[];
  trace: TraceDoc | null;
}

function error(diags: Diagnostic[], code: string, path: string, message: string,
               deltaIndex?: number): void {
  const diag: Diagnostic = { severity: "error", code, path, message };
  if (deltaIndex !== undefined) diag.delta_index = deltaIndex;
  diags.push(diag);
}

export function parseDocument(text: string, diags: Diagnostic[]): unknown {
  try {
    return JSON.parse(text);
  } catch (exc) {
    if (/(^|[^"\w])(-?Infinity|NaN)([^"\w]|$)/.test(text)) {
      error(diags, "INFINITY_TOKEN", "",
            "Infinity/NaN tokens are not allowed; encode undefined values as null");
    } else {
      error(diags, "SYNTAX_ERROR", "", `invalid JSON: ${String(exc)}`);
    }
    return undefined;
  }
}

function isInt(v: unknown): v is number {
  return typeof v === "number" && Number.isInteger(v);
}

function checkDataState(doc: any, diags: Diagnostic[]): void {
  const kinds = ["array", "graph", "tree", "hashtable", "table"];
  if (typeof doc !== "object" || doc === null || !kinds.includes(doc.type)) {
    error(diags, "BAD_TYPE", "/initial_frame/data_state", "unknown data_state type");
    return;
  }
  if (doc.type === "graph") {
    const nodes: any[] = doc.structure?.nodes ?? [];
    const ids = new Set<string>();
    nodes.forEach((n, i) => {
      if (ids.has(n.id)) {
        error(diags, "DUPLICATE_ID",
              `/initial_frame/data_state/structure/nodes/${i}`,
              `duplicate node id '${n.id}'`);
      }
      ids.add(n.id);
    });
    (doc.structure?.edges ?? []).forEach((e: any, i: number) => {
      for (const endpoint of [e.from, e.to]) {
        if (!ids.has(endpoint)) {
          error(diags, "DANGLING_EDGE",
                `/initial_frame/data_state/structure/edges/${i}`,
                `edge endpoint '${endpoint}' does not reference an existing node`);
        }
      }
    });
  }
  if (doc.type === "tree") {
    const ids = new Set<string>();
    (doc.structure?.nodes ?? []).forEach((n: any, i: number) => {
      if (ids.has(n.id)) {
        error(diags, "DUPLICATE_ID",
              `/initial_frame/data_state/structure/nodes/${i}`,
              `duplicate node id '${n.id}'`);
      }
      ids.add(n.id);
    });
  }
  if (doc.type === "hashtable") {
    const seen = new Set<string>();
    (doc.structure?.buckets ?? []).forEach((bucket: any[], b: number) => {
      bucket.forEach((entry, j) => {
        const tag = `${typeof entry.key}:${entry.key}`;
        if (seen.has(tag)) {
          error(diags, "DUPLICATE_ID",
                `/initial_frame/data_state/structure/buckets/${b}/${j}`,
                `duplicate key '${entry.key}'`);
        }
        seen.add(tag);
      });
    });
  }
}

export function validateTraceDocument(input: string | unknown): ValidationResult {
  const diags: Diagnostic[] = [];
  const doc: any = typeof input === "string" ? parseDocument(input, diags) : input;
  if (doc === undefined || diags.length > 0) {
    return { valid: false, diagnostics: diags, trace: null };
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    error(diags, "BAD_TYPE", "", "trace document must be an object");
    return { valid: false, diagnostics: diags, trace: null };
  }

  if (!("vta_version" in doc)) {
    error(diags, "MISSING_FIELD", "/vta_version", "vta_version is required");
  } else if (typeof doc.vta_version !== "string") {
    error(diags, "VERSION_NOT_STRING", "/vta_version",
          `vta_version must be the string "${VTA_VERSION}", not ${JSON.stringify(doc.vta_version)}`);
  } else if (doc.vta_version !== VTA_VERSION) {
    error(diags, "UNSUPPORTED_VERSION", "/vta_version",
          `vta_version must be "${VTA_VERSION}", found "${doc.vta_version}"`);
  }

  if (typeof doc.initial_frame !== "object" || doc.initial_frame === null) {
    error(diags, "MISSING_FIELD", "/initial_frame", "initial_frame is required");
  } else if (!("data_state" in doc.initial_frame)) {
    error(diags, "MISSING_FIELD", "/initial_frame", "initial_frame needs a data_state");
  } else {
    checkDataState(doc.initial_frame.data_state, diags);
  }

  if (!Array.isArray(doc.deltas)) {
    error(diags, "MISSING_FIELD", "/deltas", "deltas is required (may be empty)");
  } else {
    const pseudocodeLines = Array.isArray(doc.initial_frame?.pseudocode)
      ? doc.initial_frame.pseudocode.length : 0;
    doc.deltas.forEach((delta: any, i: number) => {
      const operations = delta?.operations;
      if (!Array.isArray(operations) || operations.some((g: unknown) => !Array.isArray(g))) {
        error(diags, "OPS_NOT_2D", `/deltas/${i}/operations`,
              "operations must be a 2D array of op groups ([[...]])", i);
      } else {
        operations.forEach((group: any[], g: number) => {
          group.forEach((op: any, k: number) => {
            if (typeof op?.op !== "string" || !(op.op in OP_PARAMS)) {
              error(diags, "UNKNOWN_OP", `/deltas/${i}/operations/${g}/${k}/op`,
                    `unknown op code '${op?.op}'`, i);
              return;
            }
            const params = op.params ?? {};
            for (const name of OP_PARAMS[op.op]) {
              if (!(name in params)) {
                error(diags, "BAD_PARAMS", `/deltas/${i}/operations/${g}/${k}/params`,
                      `${op.op}: missing parameter '${name}'`, i);
              }
            }
          });
        });
      }
      const highlight = delta?.code_highlight;
      const items = Array.isArray(highlight) ? highlight : [highlight];
      if (highlight === undefined) {
        error(diags, "MISSING_FIELD", `/deltas/${i}`, "delta needs a code_highlight", i);
      } else if (!(isInt(highlight) || (Array.isArray(highlight) && items.every(isInt)))) {
        error(diags, "BAD_HIGHLIGHT_TYPE", `/deltas/${i}/code_highlight`,
              "code_highlight must be an integer or an integer array", i);
      } else if (pseudocodeLines > 0
                 && items.some((line: number) => line < 1 || line > pseudocodeLines)) {
        error(diags, "HIGHLIGHT_OUT_OF_RANGE", `/deltas/${i}/code_highlight`,
              `highlight outside 1..${pseudocodeLines}`, i);
      }
    });
  }

  for (const [i, ext] of (doc.required_extensions ?? []).entries()) {
    if (!KNOWN_EXTENSIONS.includes(ext)) {
      error(diags, "UNKNOWN_EXTENSION", `/required_extensions/${i}`,
            `unknown extension '${ext}'`);
    }
  }

  if (diags.length > 0) {
    return { valid: false, diagnostics: diags, trace: null };
  }

  // Dynamic referential integrity: replay every delta, stop at the first
  // partial-transformer failure.
  const trace = doc as TraceDoc;
  try {
    let state = initialState(trace);
    for (let i = 0; i < trace.deltas.length; i++) {
      try {
        state = advanceState(state, trace.deltas[i]);
      } catch (exc) {
        if (!(exc instanceof ApplyError)) throw exc;
        error(diags, "STEP_APPLY_FAILED", `/deltas/${i}/operations`,
              `delta ${i} failed: ${exc.message}`, i);
        break;
      }
    }
  } catch (exc) {
    error(diags, "BAD_STATE", "/initial_frame", `initial frame rejected: ${String(exc)}`);
  }

  return { valid: diags.length === 0, diagnostics: diags, trace: diags.length === 0 ? trace : null };
}
