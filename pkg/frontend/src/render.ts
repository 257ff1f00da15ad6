/** 2D canvas rendering of a replayed state.
 *
 * Layout here is intentionally simple (the fidelity contract is on the
 * replayed models, not on pixels): pseudocode and auxiliary panels on the
 * left, the main view on the right, comments along the bottom strip.
 */

import { StateDoc, StyleDef, IDLE_STYLE } from "./model.js";
import { PlayerStyleConfig } from "./rsl.js";

const W = 1280;
const H = 720;
const LEFT_W = 380;

function styleOf(state: StateDoc, key: string): StyleDef {
  return state.styles.elementStyles[key] ?? state.styles.elementStyles.idle ?? IDLE_STYLE;
}

function text(value: unknown, nullGlyph: string): string {
  if (value === null || value === undefined) return nullGlyph;
  return String(value);
}

function box(ctx: CanvasRenderingContext2D, x: number, y: number, w: number, h: number,
             style: StyleDef, label: string, fontPx = 16): void {
  ctx.fillStyle = style.fill;
  ctx.strokeStyle = style.stroke;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.roundRect(x, y, w, h, 4);
  ctx.fill();
  ctx.stroke();
  ctx.fillStyle = style.text;
  ctx.font = `${fontPx}px monospace`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(label, x + w / 2, y + h / 2, w - 6);
}

function drawArray(ctx: CanvasRenderingContext2D, state: StateDoc,
                   config: PlayerStyleConfig): void {
  if (state.data_state.type !== "array") return;
  const view = state.data_state;
  const n = view.structure.length;
  if (n === 0) return;
  const cell = Math.min(72, (W - LEFT_W - 60) / Math.max(n, 1) * 0.85);
  const pitch = cell * 1.18;
  const x0 = LEFT_W + 40 + ((W - LEFT_W - 60) - n * pitch) / 2;
  const y0 = H / 2 - cell / 2 - 40;
  view.structure.forEach((el, i) => {
    box(ctx, x0 + i * pitch, y0, cell, cell, styleOf(state, el.styleKey),
        text(el.value, "·"));
    ctx.fillStyle = config.theme.text;
    ctx.font = "12px monospace";
    ctx.fillText(String(i), x0 + i * pitch + cell / 2, y0 + cell + 14);
  });
  let level = 0;
  for (const name of Object.keys(view.pointers).sort()) {
    const target = view.pointers[name];
    ctx.fillStyle = config.theme.primary;
    ctx.font = "bold 15px monospace";
    if (target === null) {
      ctx.fillText(`${name}: –`, x0 + n * pitch + 30, y0 + 20 + level * 20);
    } else {
      const cx = x0 + target * pitch + cell / 2;
      ctx.fillText(`↑${name}`, cx, y0 + cell + 34 + level * 20);
    }
    level++;
  }
}

function drawGraphLike(ctx: CanvasRenderingContext2D, state: StateDoc,
                       config: PlayerStyleConfig): void {
  const ds = state.data_state;
  if (ds.type !== "graph" && ds.type !== "tree") return;
  const nodes = ds.structure.nodes;
  if (nodes.length === 0) return;
  const cx = LEFT_W + (W - LEFT_W) / 2;
  const cy = H / 2 - 30;
  const positions = new Map<string, [number, number]>();

  if (ds.type === "tree") {
    // Depth layers; in-order slot allocation for x.
    const children = ds.structure.children;
    const parents = new Set(
      Object.values(children).flat().filter((c): c is string => c !== null));
    const roots = nodes.map((n) => n.id).filter((id) => !parents.has(id));
    let nextSlot = 0;
    const place = (id: string, depth: number): number => {
      const kids = (children[id] ?? []).filter((c): c is string => c !== null);
      let x: number;
      if (kids.length === 0) {
        x = nextSlot++;
      } else {
        const xs = kids.map((k) => place(k, depth + 1));
        x = xs.reduce((a, b) => a + b, 0) / xs.length;
      }
      positions.set(id, [x, depth]);
      return x;
    };
    for (const root of roots.sort()) {
      place(root, 0);
      nextSlot++;
    }
    const maxSlot = Math.max(1, ...[...positions.values()].map(([x]) => x));
    const maxDepth = Math.max(1, ...[...positions.values()].map(([, d]) => d));
    const sx = Math.min(110, (W - LEFT_W - 120) / (maxSlot + 1));
    const sy = Math.min(95, (H - 220) / (maxDepth + 1));
    for (const [id, [x, d]] of positions) {
      positions.set(id, [LEFT_W + 80 + x * sx, 110 + d * sy]);
    }
    ctx.strokeStyle = config.theme.text;
    ctx.lineWidth = 1.5;
    for (const parent of Object.keys(children).sort()) {
      for (const child of children[parent]) {
        if (child === null) continue;
        const [x1, y1] = positions.get(parent)!;
        const [x2, y2] = positions.get(child)!;
        ctx.beginPath();
        ctx.moveTo(x1, y1);
        ctx.lineTo(x2, y2);
        ctx.stroke();
      }
    }
  } else {
    const ids = nodes.map((n) => n.id).sort();
    const radius = Math.min(240, 70 + ids.length * 22);
    ids.forEach((id, i) => {
      const angle = -Math.PI / 2 + (2 * Math.PI * i) / ids.length;
      positions.set(id, [cx + radius * Math.cos(angle), cy + radius * Math.sin(angle)]);
    });
    for (const edge of ds.structure.edges) {
      const [x1, y1] = positions.get(edge.from)!;
      const [x2, y2] = positions.get(edge.to)!;
      ctx.strokeStyle = styleOf(state, edge.styleKey).stroke;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      ctx.stroke();
      if (edge.directed) {
        const angle = Math.atan2(y2 - y1, x2 - x1);
        const ax = x2 - 34 * Math.cos(angle);
        const ay = y2 - 34 * Math.sin(angle);
        ctx.beginPath();
        ctx.moveTo(ax, ay);
        ctx.lineTo(ax - 10 * Math.cos(angle - 0.4), ay - 10 * Math.sin(angle - 0.4));
        ctx.lineTo(ax - 10 * Math.cos(angle + 0.4), ay - 10 * Math.sin(angle + 0.4));
        ctx.closePath();
        ctx.fillStyle = styleOf(state, edge.styleKey).stroke;
        ctx.fill();
      }
      if (edge.weight !== undefined) {
        ctx.fillStyle = config.theme.text;
        ctx.font = "13px monospace";
        ctx.fillText(String(edge.weight), (x1 + x2) / 2, (y1 + y2) / 2 - 8);
      }
    }
  }

  for (const node of nodes) {
    const [x, y] = positions.get(node.id)!;
    const style = styleOf(state, node.styleKey);
    ctx.fillStyle = style.fill;
    ctx.strokeStyle = style.stroke;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.ellipse(x, y, 34, 26, 0, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = style.text;
    ctx.font = "15px monospace";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(node.label, x, y - (("properties" in node && node.properties) ? 6 : 0), 60);
    if ("properties" in node && node.properties) {
      const parts = Object.keys(node.properties).sort()
        .map((k) => `${k}=${text(node.properties![k], "∞")}`);
      ctx.font = "11px monospace";
      ctx.fillText(parts.join(" "), x, y + 10, 62);
    }
  }
}

function drawHashtable(ctx: CanvasRenderingContext2D, state: StateDoc,
                       config: PlayerStyleConfig): void {
  if (state.data_state.type !== "hashtable") return;
  const buckets = state.data_state.structure.buckets;
  const rowH = Math.min(52, (H - 200) / Math.max(buckets.length, 1));
  const y0 = 110;
  buckets.forEach((bucket, b) => {
    const y = y0 + b * rowH;
    box(ctx, LEFT_W + 40, y, 42, rowH * 0.7,
        { fill: config.theme.background, stroke: config.theme.text, text: config.theme.text },
        String(b), 13);
    bucket.forEach((entry, j) => {
      box(ctx, LEFT_W + 100 + j * 118, y, 108, rowH * 0.7,
          styleOf(state, entry.styleKey), `${entry.key}:${text(entry.value, "·")}`, 13);
    });
  });
}

function drawTable(ctx: CanvasRenderingContext2D, state: StateDoc,
                   config: PlayerStyleConfig): void {
  if (state.data_state.type !== "table") return;
  const view = state.data_state;
  const { rows, cols } = view.structure;
  const pitch = Math.min(64, (W - LEFT_W - 140) / cols, (H - 240) / rows);
  const x0 = LEFT_W + 110;
  const y0 = 130;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const cell = view.structure.cells[r][c];
      box(ctx, x0 + c * pitch, y0 + r * pitch, pitch * 0.92, pitch * 0.92,
          styleOf(state, cell.styleKey), text(cell.value, "∞"),
          Math.max(11, pitch * 0.3));
    }
  }
  ctx.fillStyle = config.theme.text;
  ctx.font = "12px monospace";
  (view.structure.row_labels ?? []).forEach((label, r) => {
    ctx.textAlign = "right";
    ctx.fillText(label, x0 - 12, y0 + r * pitch + pitch / 2, 90);
  });
  (view.structure.col_labels ?? []).forEach((label, c) => {
    ctx.textAlign = "center";
    ctx.fillText(label, x0 + c * pitch + pitch / 2, y0 - 14, pitch);
  });
  ctx.strokeStyle = config.theme.primary;
  ctx.lineWidth = 2;
  for (const dep of view.dependencies) {
    const x1 = x0 + dep.from.col * pitch + pitch / 2;
    const y1 = y0 + dep.from.row * pitch + pitch / 2;
    const x2 = x0 + dep.to.col * pitch + pitch / 2;
    const y2 = y0 + dep.to.row * pitch + pitch / 2;
    ctx.beginPath();
    ctx.setLineDash([6, 4]);
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

export function renderState(ctx: CanvasRenderingContext2D, state: StateDoc,
                            config: PlayerStyleConfig, title: string,
                            caption: string): void {
  ctx.fillStyle = config.theme.background;
  ctx.fillRect(0, 0, W, H);

  ctx.fillStyle = config.theme.primary;
  ctx.font = "bold 20px monospace";
  ctx.textAlign = "left";
  ctx.textBaseline = "middle";
  ctx.fillText(title, 24, 30, LEFT_W - 40);

  const highlighted = new Set(state.highlight);
  state.pseudocode.forEach((line, i) => {
    const n = i + 1;
    ctx.font = highlighted.has(n) ? "bold 15px monospace" : "14px monospace";
    ctx.fillStyle = highlighted.has(n) ? config.theme.primary : config.theme.text;
    ctx.fillText(line, 24, 64 + i * 22, LEFT_W - 40);
  });

  let auxY = 64 + state.pseudocode.length * 22 + 24;
  for (const view of state.auxiliary_views) {
    ctx.fillStyle = config.theme.text;
    ctx.font = "bold 13px monospace";
    ctx.fillText(view.name, 24, auxY, LEFT_W - 40);
    view.entries.forEach((entry, k) => {
      const label = view.kind === "map"
        ? `${entry.key}:${text(entry.value, "·")}` : text(entry.value, "·");
      box(ctx, 24 + (k % 8) * 42, auxY + 12 + Math.floor(k / 8) * 40, 38, 32,
          styleOf(state, entry.styleKey), label, 11);
    });
    auxY += 12 + Math.max(1, Math.ceil(view.entries.length / 8)) * 40 + 18;
  }

  state.comments.forEach((comment, i) => {
    ctx.fillStyle = config.theme.primary;
    ctx.font = "14px monospace";
    ctx.fillText(`› ${comment.text}`, 24, H - 70 - i * 22, W - 48);
  });

  ctx.fillStyle = config.theme.text;
  ctx.font = "italic 14px monospace";
  ctx.fillText(caption, 24, H - 28, W - 48);

  switch (state.data_state.type) {
    case "array":
      drawArray(ctx, state, config);
      break;
    case "graph":
    case "tree":
      drawGraphLike(ctx, state, config);
      break;
    case "hashtable":
      drawHashtable(ctx, state, config);
      break;
    case "table":
      drawTable(ctx, state, config);
      break;
  }
}
