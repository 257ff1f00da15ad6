/** Client-side replay: the same delta semantics the pipeline applies.
 *
 * The in-memory model IS the exported state-doc shape, so fidelity against
 * the pipeline's state_%03d.json files is plain deep equality. Operations
 * are partial: a missing target throws ApplyError, which validation maps
 * to a STEP_APPLY_FAILED diagnostic.
 */

import {
  AnchorDoc, ArrayStateDoc, AuxViewDoc, CellRefDoc, DataStateDoc, DeltaDoc,
  GraphStateDoc, HashtableStateDoc, IDLE_STYLE, Scalar, StateDoc, StyleDef,
  TableStateDoc, TraceDoc, TreeStateDoc, deepCopy,
} from "./model.js";

export class ApplyError extends Error {}

function fail(message: string): never {
  throw new ApplyError(message);
}

// ---------------------------------------------------------------------------
// Initial-frame decoding into the canonical state-doc shape
// ---------------------------------------------------------------------------

function decodeStyles(raw: unknown): Record<string, StyleDef> {
  const out: Record<string, StyleDef> = {};
  const elementStyles = (raw as { elementStyles?: Record<string, Partial<StyleDef>> })
    ?.elementStyles ?? {};
  for (const key of Object.keys(elementStyles)) {
    const style = elementStyles[key] ?? {};
    out[key] = {
      fill: typeof style.fill === "string" ? style.fill : "#F0F0F0",
      stroke: typeof style.stroke === "string" ? style.stroke : "#666666",
      text: typeof style.text === "string" ? style.text : "#FFFFFF",
    };
  }
  if (!("idle" in out)) out.idle = { ...IDLE_STYLE };
  return out;
}

function decodeDataState(raw: any): DataStateDoc {
  const kind = raw?.type;
  const structure = raw?.structure;
  if (kind === "array") {
    const elements = (structure as any[]).map((el, i) => ({
      index: i,
      value: (el.value ?? null) as Scalar,
      styleKey: typeof el.styleKey === "string" ? el.styleKey : "idle",
    }));
    const pointers: Record<string, number | null> = {};
    for (const name of Object.keys(raw.pointers ?? {})) pointers[name] = raw.pointers[name];
    return { type: "array", structure: elements, pointers };
  }
  if (kind === "graph") {
    const nodes = (structure.nodes ?? []).map((n: any) => {
      const node: any = {
        id: String(n.id),
        label: String(n.label ?? n.id),
        styleKey: typeof n.styleKey === "string" ? n.styleKey : "idle",
      };
      if (n.properties && Object.keys(n.properties).length > 0) {
        node.properties = { ...n.properties };
      }
      return node;
    });
    const edges = (structure.edges ?? []).map((e: any) => {
      const edge: any = { from: String(e.from), to: String(e.to) };
      if (e.weight !== null && e.weight !== undefined) edge.weight = e.weight;
      edge.directed = Boolean(e.directed);
      edge.styleKey = typeof e.styleKey === "string" ? e.styleKey : "idle";
      return edge;
    });
    return { type: "graph", structure: { nodes, edges } };
  }
  if (kind === "tree") {
    const nodes = (structure.nodes ?? []).map((n: any) => ({
      id: String(n.id),
      label: String(n.label ?? n.id),
      styleKey: typeof n.styleKey === "string" ? n.styleKey : "idle",
    }));
    const children: Record<string, (string | null)[]> = {};
    for (const parent of Object.keys(structure.children ?? {})) {
      children[parent] = [...structure.children[parent]];
    }
    return { type: "tree", structure: { nodes, children } };
  }
  if (kind === "hashtable") {
    const buckets = (structure.buckets ?? []).map((bucket: any[]) =>
      bucket.map((e) => ({
        key: e.key,
        value: (e.value ?? null) as Scalar,
        styleKey: typeof e.styleKey === "string" ? e.styleKey : "idle",
      })));
    return { type: "hashtable", structure: { buckets } };
  }
  if (kind === "table") {
    const cells = (structure.cells ?? []).map((row: any[]) =>
      row.map((c) => ({
        value: (c.value ?? null) as Scalar,
        styleKey: typeof c.styleKey === "string" ? c.styleKey : "idle",
      })));
    const out: TableStateDoc = {
      type: "table",
      structure: { rows: structure.rows, cols: structure.cols, cells },
      dependencies: [],
    };
    if (structure.row_labels) out.structure.row_labels = structure.row_labels.map(String);
    if (structure.col_labels) out.structure.col_labels = structure.col_labels.map(String);
    return out;
  }
  fail(`unknown data_state type ${String(kind)}`);
}

export function initialState(trace: TraceDoc): StateDoc {
  const frame = trace.initial_frame;
  const auxViews: AuxViewDoc[] = ((frame.auxiliary_views as any[]) ?? []).map((v) => ({
    name: String(v.name),
    kind: v.kind === "map" ? "map" : "list",
    entries: (v.entries ?? []).map((e: any) => {
      const entry: any = {};
      if (v.kind === "map") entry.key = e.key ?? null;
      entry.value = (e.value ?? null) as Scalar;
      entry.styleKey = typeof e.styleKey === "string" ? e.styleKey : "idle";
      return entry;
    }),
  }));
  return {
    data_state: decodeDataState(frame.data_state),
    auxiliary_views: auxViews,
    styles: { elementStyles: decodeStyles(frame.styles) },
    pseudocode: ((frame.pseudocode as unknown[]) ?? []).map(String),
    highlight: [],
    comments: [],
  };
}

// ---------------------------------------------------------------------------
// Operation application
// ---------------------------------------------------------------------------

function asArray(state: StateDoc, op: string): ArrayStateDoc {
  if (state.data_state.type !== "array") fail(`${op} requires an array view`);
  return state.data_state;
}

function asGraph(state: StateDoc, op: string): GraphStateDoc {
  if (state.data_state.type !== "graph") fail(`${op} requires a graph view`);
  return state.data_state;
}

function asTree(state: StateDoc, op: string): TreeStateDoc {
  if (state.data_state.type !== "tree") fail(`${op} requires a tree view`);
  return state.data_state;
}

function asHashtable(state: StateDoc, op: string): HashtableStateDoc {
  if (state.data_state.type !== "hashtable") fail(`${op} requires a hashtable view`);
  return state.data_state;
}

function asTable(state: StateDoc, op: string): TableStateDoc {
  if (state.data_state.type !== "table") fail(`${op} requires a table view`);
  return state.data_state;
}

function checkIndex(index: number, n: number, what = "index"): void {
  if (!(Number.isInteger(index) && index >= 0 && index < n)) {
    fail(`${what} ${index} outside 0..${n - 1}`);
  }
}

function trimSlots(slots: (string | null)[]): (string | null)[] {
  const out = [...slots];
  while (out.length > 0 && out[out.length - 1] === null) out.pop();
  return out;
}

function placeChild(slots: (string | null)[], child: string, position: number): (string | null)[] {
  if (position < 0) fail(`position ${position} is negative`);
  const out = [...slots];
  if (position >= out.length) {
    while (out.length < position) out.push(null);
    out.push(child);
  } else if (out[position] === null) {
    out[position] = child;
  } else {
    out.splice(position, 0, child);
  }
  return out;
}

function subtreeIds(tree: TreeStateDoc, root: string): Set<string> {
  const seen = new Set([root]);
  const stack = [root];
  while (stack.length > 0) {
    const node = stack.pop()!;
    for (const child of tree.structure.children[node] ?? []) {
      if (child !== null && !seen.has(child)) {
        seen.add(child);
        stack.push(child);
      }
    }
  }
  return seen;
}

function parentOf(tree: TreeStateDoc, id: string): string | undefined {
  for (const parent of Object.keys(tree.structure.children)) {
    if (tree.structure.children[parent].includes(id)) return parent;
  }
  return undefined;
}

const HANDLERS: Record<string, (state: StateDoc, p: any) => void> = {
  updateStyle(state, p) {
    const view = asArray(state, "updateStyle");
    for (const index of p.indices) {
      checkIndex(index, view.structure.length);
      view.structure[index].styleKey = p.styleKey;
    }
  },

  moveElements(state, p) {
    const view = asArray(state, "moveElements");
    const n = view.structure.length;
    for (const pair of p.pairs) {
      checkIndex(pair.from, n, "source index");
      checkIndex(pair.to, n, "target index");
    }
    const old = view.structure.map((el) => el.value);
    for (const pair of p.pairs) view.structure[pair.to].value = old[pair.from];
  },

  shiftElements(state, p) {
    const view = asArray(state, "shiftElements");
    const n = view.structure.length;
    const { start, end } = p.range;
    const offset = p.offset;
    if (start > end) fail(`empty shift range ${start}..${end}`);
    checkIndex(start, n, "range start");
    checkIndex(end, n, "range end");
    checkIndex(start + offset, n, "shifted start");
    checkIndex(end + offset, n, "shifted end");
    const values = view.structure.map((el) => el.value);
    const block = values.slice(start, end + 1);
    for (let i = start; i <= end; i++) values[i] = null;
    for (let i = 0; i < block.length; i++) values[start + offset + i] = block[i];
    view.structure.forEach((el, i) => { el.value = values[i]; });
  },

  updateValues(state, p) {
    const view = asArray(state, "updateValues");
    for (const a of p.assignments) {
      checkIndex(a.index, view.structure.length);
      view.structure[a.index].value = a.value ?? null;
    }
  },

  setPointer(state, p) {
    const view = asArray(state, "setPointer");
    if (p.index !== null && p.index !== undefined) {
      checkIndex(p.index, view.structure.length, `pointer '${p.name}' target`);
    }
    view.pointers[p.name] = p.index ?? null;
  },

  clearPointer(state, p) {
    const view = asArray(state, "clearPointer");
    if (!(p.name in view.pointers)) fail(`no pointer named '${p.name}'`);
    delete view.pointers[p.name];
  },

  updateNodeStyle(state, p) {
    if (state.data_state.type === "graph" || state.data_state.type === "tree") {
      const nodes = state.data_state.structure.nodes;
      const known = new Set(nodes.map((n) => n.id));
      for (const id of p.ids) if (!known.has(id)) fail(`no node '${id}'`);
      const targets = new Set(p.ids);
      for (const node of nodes) if (targets.has(node.id)) node.styleKey = p.styleKey;
      return;
    }
    fail("updateNodeStyle requires a graph or tree view");
  },

  updateNodeProperties(state, p) {
    const view = asGraph(state, "updateNodeProperties");
    const node = view.structure.nodes.find((n) => n.id === p.id);
    if (!node) fail(`no node '${p.id}'`);
    const merged = { ...(node.properties ?? {}), ...p.properties };
    if (Object.keys(merged).length > 0) node.properties = merged;
  },

  updateEdgeStyle(state, p) {
    const view = asGraph(state, "updateEdgeStyle");
    for (const ref of p.edges) {
      let hit = false;
      for (const edge of view.structure.edges) {
        const forward = edge.from === ref.from && edge.to === ref.to;
        const backward = !edge.directed && edge.from === ref.to && edge.to === ref.from;
        if (forward || backward) {
          edge.styleKey = p.styleKey;
          hit = true;
        }
      }
      if (!hit) fail(`no edge '${ref.from}' -> '${ref.to}'`);
    }
  },

  addNode(state, p) {
    const view = asGraph(state, "addNode");
    if (view.structure.nodes.some((n) => n.id === p.node.id)) {
      fail(`node '${p.node.id}' already exists`);
    }
    const node: any = {
      id: p.node.id,
      label: p.node.label,
      styleKey: p.node.styleKey ?? "idle",
    };
    if (p.node.properties && Object.keys(p.node.properties).length > 0) {
      node.properties = { ...p.node.properties };
    }
    view.structure.nodes.push(node);
  },

  removeNode(state, p) {
    const view = asGraph(state, "removeNode");
    if (!view.structure.nodes.some((n) => n.id === p.id)) fail(`no node '${p.id}'`);
    view.structure.nodes = view.structure.nodes.filter((n) => n.id !== p.id);
    view.structure.edges = view.structure.edges.filter(
      (e) => e.from !== p.id && e.to !== p.id);
  },

  addChild(state, p) {
    const view = asTree(state, "addChild");
    const ids = new Set(view.structure.nodes.map((n) => n.id));
    if (!ids.has(p.parent)) fail(`no parent node '${p.parent}'`);
    if (ids.has(p.node.id)) fail(`node '${p.node.id}' already exists`);
    view.structure.nodes.push({
      id: p.node.id, label: p.node.label, styleKey: p.node.styleKey ?? "idle",
    });
    view.structure.children[p.parent] =
      placeChild(view.structure.children[p.parent] ?? [], p.node.id, p.position);
  },

  reparent(state, p) {
    const view = asTree(state, "reparent");
    const ids = new Set(view.structure.nodes.map((n) => n.id));
    if (!ids.has(p.id)) fail(`no node '${p.id}'`);
    if (!ids.has(p.newParent)) fail(`no node '${p.newParent}'`);
    if (subtreeIds(view, p.id).has(p.newParent)) {
      fail(`reparenting '${p.id}' under its own subtree`);
    }
    if (parentOf(view, p.id) === undefined) fail(`cannot reparent the root '${p.id}'`);
    const children = view.structure.children;
    for (const parent of Object.keys(children)) {
      if (children[parent].includes(p.id)) {
        const slots = trimSlots(children[parent].map((s) => (s === p.id ? null : s)));
        if (slots.length > 0) children[parent] = slots;
        else delete children[parent];
      }
    }
    children[p.newParent] = placeChild(children[p.newParent] ?? [], p.id, p.position);
  },

  rotate(state, p) {
    const view = asTree(state, "rotate");
    const ids = new Set(view.structure.nodes.map((n) => n.id));
    if (!ids.has(p.pivot)) fail(`no node '${p.pivot}'`);
    const childSlot = p.direction === "left" ? 1 : 0;
    const children = view.structure.children;
    const slotOf = (node: string, position: number): string | null => {
      const slots = children[node] ?? [];
      return position < slots.length ? slots[position] : null;
    };
    const riser = slotOf(p.pivot, childSlot);
    if (riser === null) {
      fail(`rotate ${p.direction} at '${p.pivot}' needs a ${childSlot === 1 ? "right" : "left"} child`);
    }
    const moved = slotOf(riser, 1 - childSlot);
    const setSlot = (parent: string, position: number, value: string | null) => {
      const slots = [...(children[parent] ?? [])];
      while (slots.length <= position) slots.push(null);
      slots[position] = value;
      const trimmed = trimSlots(slots);
      if (trimmed.length > 0) children[parent] = trimmed;
      else delete children[parent];
    };
    const above = parentOf(view, p.pivot);
    if (above !== undefined) {
      children[above] = children[above].map((s) => (s === p.pivot ? riser : s));
    }
    setSlot(p.pivot, childSlot, moved);
    setSlot(riser, 1 - childSlot, p.pivot);
  },

  insertIntoBucket(state, p) {
    const view = asHashtable(state, "insertIntoBucket");
    checkIndex(p.bucket, view.structure.buckets.length, "bucket");
    for (const bucket of view.structure.buckets) {
      if (bucket.some((e) => e.key === p.key)) fail(`key '${p.key}' already present`);
    }
    view.structure.buckets[p.bucket].push({
      key: p.key, value: p.value ?? null, styleKey: "idle",
    });
  },

  rehash(state, p) {
    const view = asHashtable(state, "rehash");
    const capacity = p.newCapacity;
    if (!(Number.isInteger(capacity) && capacity >= 1)) {
      fail(`new capacity ${capacity} must be >= 1`);
    }
    const entries = new Map<string | number, { key: string | number; value: Scalar; styleKey: string }>();
    for (const bucket of view.structure.buckets) {
      for (const entry of bucket) entries.set(entry.key, entry);
    }
    const placed = new Set<string | number>();
    const buckets: (typeof view.structure.buckets)[number][] =
      Array.from({ length: capacity }, () => []);
    for (const item of p.placement) {
      const entry = entries.get(item.key);
      if (!entry) fail(`placement names unknown key '${item.key}'`);
      if (placed.has(item.key)) fail(`placement lists key '${item.key}' twice`);
      checkIndex(item.bucket, capacity, "bucket");
      placed.add(item.key);
      buckets[item.bucket].push(entry);
    }
    if (placed.size !== entries.size) fail("placement omits keys");
    view.structure.buckets = buckets;
  },

  highlightCollision(state, p) {
    const view = asHashtable(state, "highlightCollision");
    checkIndex(p.bucket, view.structure.buckets.length, "bucket");
    for (const entry of view.structure.buckets[p.bucket]) entry.styleKey = p.styleKey;
  },

  updateTableCell(state, p) {
    const view = asTable(state, "updateTableCell");
    if (!(p.row >= 0 && p.row < view.structure.rows && p.col >= 0 && p.col < view.structure.cols)) {
      fail(`cell (${p.row},${p.col}) outside the grid`);
    }
    view.structure.cells[p.row][p.col].value = p.value ?? null;
  },

  highlightTableCell(state, p) {
    const view = asTable(state, "highlightTableCell");
    for (const ref of p.cells) {
      if (!(ref.row >= 0 && ref.row < view.structure.rows
            && ref.col >= 0 && ref.col < view.structure.cols)) {
        fail(`cell (${ref.row},${ref.col}) outside the grid`);
      }
      view.structure.cells[ref.row][ref.col].styleKey = p.styleKey;
    }
  },

  showDependency(state, p) {
    const view = asTable(state, "showDependency");
    for (const ref of [p.from, p.to]) {
      if (!(ref.row >= 0 && ref.row < view.structure.rows
            && ref.col >= 0 && ref.col < view.structure.cols)) {
        fail(`cell (${ref.row},${ref.col}) outside the grid`);
      }
    }
    view.dependencies.push({
      from: { row: p.from.row, col: p.from.col },
      to: { row: p.to.row, col: p.to.col },
    });
  },

  showComment(state, p) {
    if (state.comments.some((c) => c.id === p.id)) fail(`comment '${p.id}' already shown`);
    const anchor: AnchorDoc = { view: p.anchor.view };
    if (p.anchor.element !== undefined && p.anchor.element !== null) {
      anchor.element = p.anchor.element;
    }
    if (anchor.view !== "main"
        && !state.auxiliary_views.some((v) => v.name === anchor.view)) {
      fail(`anchor names unknown view '${anchor.view}'`);
    }
    state.comments.push({ id: p.id, text: p.text, anchor });
  },

  hideComment(state, p) {
    if (!state.comments.some((c) => c.id === p.id)) fail(`no comment '${p.id}'`);
    state.comments = state.comments.filter((c) => c.id !== p.id);
  },

  appendToList(state, p) {
    const view = state.auxiliary_views.find((v) => v.name === p.view);
    if (!view) fail(`no auxiliary view '${p.view}'`);
    const raw = p.entry;
    const entry: any = {};
    if (view.kind === "map") {
      const key = raw !== null && typeof raw === "object" ? raw.key : undefined;
      if (key === undefined || key === null) fail(`map view '${p.view}' needs entries with keys`);
      entry.key = key;
    }
    if (raw !== null && typeof raw === "object") {
      entry.value = raw.value ?? null;
      entry.styleKey = raw.styleKey ?? "idle";
    } else {
      entry.value = raw ?? null;
      entry.styleKey = "idle";
    }
    view.entries.push(entry);
  },

  popFromList(state, p) {
    const view = state.auxiliary_views.find((v) => v.name === p.view);
    if (!view) fail(`no auxiliary view '${p.view}'`);
    if (view.entries.length === 0) fail(`auxiliary view '${p.view}' is empty`);
    if (p.end === "front") view.entries.shift();
    else view.entries.pop();
  },
};

export function applyOperation(state: StateDoc, op: string, params: unknown): void {
  const handler = HANDLERS[op];
  if (!handler) fail(`unknown op code '${op}'`);
  handler(state, params);
}

/** One delta boundary: drop one-frame overlays, move the highlight, fold ops. */
export function advanceState(state: StateDoc, delta: DeltaDoc): StateDoc {
  const next = deepCopy(state);
  if (next.data_state.type === "table") next.data_state.dependencies = [];
  const highlight = Array.isArray(delta.code_highlight)
    ? delta.code_highlight : [delta.code_highlight];
  next.highlight = [...new Set(highlight)].sort((a, b) => a - b);
  for (const group of delta.operations) {
    for (const op of group) applyOperation(next, op.op, op.params ?? {});
  }
  return next;
}

export function replayTrace(trace: TraceDoc): StateDoc[] {
  const states = [initialState(trace)];
  for (const delta of trace.deltas) {
    states.push(advanceState(states[states.length - 1], delta));
  }
  return states;
}
