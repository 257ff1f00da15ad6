"""Deterministic, collision-free placement on an abstract 16x9 canvas.

The canvas splits into a left panel (title, pseudocode, auxiliary views,
comments, caption — a fixed 35% width share) and a main panel holding the
data view. Six engines cover the RSL layout types; an engine that does not
fit the state's sort falls back to the sort's default with a warning.

Guarantees, checked by the acceptance suite on every frame of every
bundled trace:

* determinism — equal inputs give bitwise-equal placements (fixed seeds,
  fixed iteration counts, sorted tie-breaks, no hash-order dependence);
* collision freedom — pairwise box overlap area is exactly 0 (the
  force-directed engine runs a resolution sweep and falls back to circular
  positions if a pathological case cannot be separated);
* containment — every box lies inside its panel after the rescale pass.

When content outgrows the main panel it is scaled down uniformly (never
up), emitting a DENSITY_RESCALE warning; below the documented floor the
engine retries with abbreviated labels and then declares CapacityExceeded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from . import core
from .diagnostics import DENSITY_RESCALE, Diagnostic, LAYOUT_FALLBACK, WARNING
from .errors import CapacityExceeded
from .rsl import COMPATIBLE_LAYOUTS, Canvas, DEFAULT_LAYOUTS, RenderConfig

# Uniform-rescale floor: content needing a smaller factor does not fit.
RESCALE_FLOOR = 0.4

# Left panel share of the usable canvas width.
LEFT_PANEL_SHARE = 0.35

# Force-directed iteration budget (cold start / warm start).
FD_ITERATIONS = 300
FD_WARM_ITERATIONS = 60
FD_RESOLUTION_PASSES = 300

_PAD = 0.05  # minimum clearance enforced by the overlap-resolution sweep


class Box(NamedTuple):
    x: float
    y: float
    w: float
    h: float

    @property
    def cx(self) -> float:
        return self.x + self.w / 2

    @property
    def cy(self) -> float:
        return self.y + self.h / 2

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h


def box_at(cx: float, cy: float, w: float, h: float) -> Box:
    return Box(cx - w / 2, cy - h / 2, w, h)


def overlap_area(a: Box, b: Box) -> float:
    dx = min(a.x2, b.x2) - max(a.x, b.x)
    dy = min(a.y2, b.y2) - max(a.y, b.y)
    if dx <= 0 or dy <= 0:
        return 0.0
    return dx * dy


def contains(outer: Box, inner: Box, slack: float = 1e-6) -> bool:
    return (inner.x >= outer.x - slack and inner.y >= outer.y - slack
            and inner.x2 <= outer.x2 + slack and inner.y2 <= outer.y2 + slack)


@dataclass(frozen=True)
class Placement:
    """Geometry for one frame: id-addressed boxes plus edge polylines.

    Box id namespaces: ``elem:i`` array cells, ``node:id`` graph/tree
    nodes, ``cell:r:c`` table cells, ``bucket:i`` / ``entry:key`` hash
    buckets, ``ptr:name`` array pointers, ``rowlabel:i`` / ``collabel:j``,
    ``code:n`` pseudocode lines, ``aux:view:k`` auxiliary entries,
    ``auxtitle:view``, ``comment:id``, ``title`` and ``caption``.
    """

    boxes: dict[str, Box] = field(default_factory=dict)
    edges: dict[str, tuple[tuple[float, float], ...]] = field(default_factory=dict)
    layout_type: str = "horizontal_array"
    scale: float = 1.0
    abbreviated: bool = False
    warnings: tuple[Diagnostic, ...] = ()
    panels: dict[str, Box] = field(default_factory=dict)

    def main_ids(self) -> list[str]:
        return [bid for bid in self.boxes if _is_main(bid)]

    def to_doc(self) -> dict:
        return {
            "layout_type": self.layout_type,
            "scale": self.scale,
            "boxes": {bid: list(self.boxes[bid]) for bid in sorted(self.boxes)},
            "edges": {eid: [list(p) for p in pts] for eid, pts in sorted(self.edges.items())},
        }


_MAIN_PREFIXES = ("elem:", "node:", "cell:", "bucket:", "entry:", "ptr:",
                  "rowlabel:", "collabel:")


def _is_main(box_id: str) -> bool:
    return box_id.startswith(_MAIN_PREFIXES)


def panel_geometry(canvas: Canvas) -> dict[str, Box]:
    usable_w = canvas.width - 2 * canvas.margin
    usable_h = canvas.height - 2 * canvas.margin
    left_w = usable_w * LEFT_PANEL_SHARE
    left = Box(canvas.margin, canvas.margin, left_w, usable_h)
    main = Box(canvas.margin + left_w, canvas.margin, usable_w - left_w, usable_h)
    return {"left": left, "main": main}


# ---------------------------------------------------------------------------
# Left panel: title, pseudocode, aux views, comments, caption
# ---------------------------------------------------------------------------

def _left_panel_boxes(state: core.VisualState, left: Box) -> dict[str, Box]:
    pad = 0.1
    boxes: dict[str, Box] = {}
    inner_w = left.w - 2 * pad
    boxes["title"] = Box(left.x + pad, left.y + pad, inner_w, 0.5)
    boxes["caption"] = Box(left.x + pad, left.y2 - pad - 0.5, inner_w, 0.5)
    top = left.y + pad + 0.5 + pad
    bottom = left.y2 - pad - 0.5 - pad
    height = max(bottom - top, 0.5)

    # Fixed shares keep boxes still across frames regardless of content.
    code_h = height * 0.45
    aux_h = height * 0.35
    comment_h = height - code_h - aux_h

    if state.pseudocode:
        line_h = min(0.5, code_h / len(state.pseudocode))
        for n in range(1, len(state.pseudocode) + 1):
            boxes[f"code:{n}"] = Box(left.x + pad, top + (n - 1) * line_h, inner_w, line_h * 0.92)

    aux_top = top + code_h
    views = state.auxiliary_views
    if views:
        view_h = aux_h / len(views)
        entry = 0.42
        step = entry * 1.15
        per_row = max(1, int(inner_w // step))
        max_rows = max(0, int((view_h - 0.4) // step))
        for view in views:
            boxes[f"auxtitle:{view.name}"] = Box(left.x + pad, aux_top, inner_w, 0.3)
            for k in range(min(len(view.entries), per_row * max_rows)):
                r, c = divmod(k, per_row)
                boxes[f"aux:{view.name}:{k}"] = Box(
                    left.x + pad + c * step,
                    aux_top + 0.35 + r * step,
                    entry, entry)
            aux_top += view_h

    comment_top = top + code_h + aux_h
    slot_h = 0.55
    for j, comment in enumerate(state.comments):
        y = comment_top + j * slot_h
        if y + slot_h * 0.9 > top + code_h + aux_h + comment_h:
            break  # deterministic cut; overflowing comments are not placed
        boxes[f"comment:{comment.id}"] = Box(left.x + pad, y, inner_w, slot_h * 0.9)
    return boxes


# ---------------------------------------------------------------------------
# Main-view engines (natural coordinates, centered/scaled afterwards)
# ---------------------------------------------------------------------------

def _key_tag(key: str | int) -> str:
    # Distinct tags for int 3 vs str "3": bucket keys share one id space.
    return f"i{key}" if isinstance(key, int) else f"s{key}"


def _engine_horizontal_array(view: core.ArrayView, params: dict) -> tuple[dict, dict]:
    cell = params.get("cell_size", 1.0)
    # The 1.05 factor keeps adjacent boxes strictly apart so overlap area
    # stays exactly zero after rescale arithmetic.
    pitch = max(params.get("node_spacing", 1.5), 1.05 * cell)
    boxes: dict[str, Box] = {}
    for el in view.elements:
        boxes[f"elem:{el.index}"] = box_at(el.index * pitch, 0.0, cell, cell)
    stack: dict[int, int] = {}
    n = len(view.elements)
    detached = 0
    for name in sorted(view.pointers):
        target = view.pointers[name]
        w, h = min(cell, 0.9), 0.4
        if target is None:
            column, level = n, detached
            detached += 1
        else:
            column, level = target, stack.get(target, 0)
            stack[target] = level + 1
        boxes[f"ptr:{name}"] = box_at(column * pitch, cell / 2 + 0.35 + level * (h + 0.1) + h / 2,
                                      w, h)
    return boxes, {}


def _engine_matrix(view, params: dict) -> tuple[dict, dict]:
    if isinstance(view, core.HashtableView):
        return _engine_grid(view, params)  # bucket rows are already a grid
    pitch = params.get("cell_size", 1.0)
    boxes: dict[str, Box] = {}
    size = 0.92 * pitch
    for r in range(view.rows):
        for c in range(view.cols):
            boxes[f"cell:{r}:{c}"] = box_at((c + 0.5) * pitch, (r + 0.5) * pitch, size, size)
    if view.row_labels is not None:
        for r in range(view.rows):
            boxes[f"rowlabel:{r}"] = box_at(-0.75 * pitch, (r + 0.5) * pitch,
                                            0.9 * pitch, 0.6 * pitch)
    if view.col_labels is not None:
        for c in range(view.cols):
            boxes[f"collabel:{c}"] = box_at((c + 0.5) * pitch, -0.75 * pitch,
                                            0.9 * pitch, 0.6 * pitch)
    edges = {}
    for i, dep in enumerate(view.dependencies):
        src = boxes[f"cell:{dep.src.row}:{dep.src.col}"]
        dst = boxes[f"cell:{dep.dst.row}:{dep.dst.col}"]
        edges[f"dep:{i}"] = ((src.cx, src.cy), (dst.cx, dst.cy))
    return boxes, edges


def _engine_grid(view: core.MainView, params: dict) -> tuple[dict, dict]:
    cell = params.get("cell_size", 1.0)
    boxes: dict[str, Box] = {}
    if isinstance(view, core.HashtableView):
        entry_w, entry_h = 1.5 * cell, 0.7 * cell
        row_pitch = entry_h + 0.35 * cell
        for b, bucket in enumerate(view.buckets):
            y = b * row_pitch
            boxes[f"bucket:{b}"] = box_at(0.0, y, 0.7 * cell, entry_h)
            for j, entry in enumerate(bucket):
                boxes[f"entry:{_key_tag(entry.key)}"] = box_at(
                    0.8 * cell + (j + 0.5) * (entry_w + 0.15), y, entry_w, entry_h)
        return boxes, {}
    if isinstance(view, core.ArrayView):
        n = len(view.elements)
        cols = max(1, math.ceil(math.sqrt(n)))
        pitch = max(params.get("node_spacing", cell), cell) * 1.1
        for el in view.elements:
            r, c = divmod(el.index, cols)
            boxes[f"elem:{el.index}"] = box_at(c * pitch, r * pitch, cell, cell)
        return boxes, {}
    if isinstance(view, core.GraphView):
        ids = _node_ids_sorted(view)
        cols = max(1, math.ceil(math.sqrt(len(ids))))
        pitch = max(params.get("node_spacing", 1.5), 1.5 * cell)
        positions = {}
        for k, nid in enumerate(ids):
            r, c = divmod(k, cols)
            positions[nid] = (c * pitch, r * pitch)
        boxes = {f"node:{nid}": box_at(p[0], p[1], 1.2 * cell, 0.8 * cell)
                 for nid, p in positions.items()}
        return boxes, _graph_edge_points(view, positions, params.get("edge_curve", 0.0))
    if isinstance(view, core.TableView):
        return _engine_matrix(view, params)
    raise TypeError(f"grid layout does not support {view.kind} views")


def _node_ids_sorted(view) -> list[str]:
    return sorted(n.id for n in view.nodes)


def _graph_edge_points(view: core.GraphView, positions: dict[str, tuple[float, float]],
                       curve: float) -> dict:
    edges: dict[str, tuple[tuple[float, float], ...]] = {}
    pair_counts: dict[tuple[str, str], int] = {}
    for e in view.edges:
        key = tuple(sorted((e.src, e.dst)))
        pair_counts[key] = pair_counts.get(key, 0) + 1
    pair_seen: dict[tuple[str, str], int] = {}
    for i, e in enumerate(view.edges):
        p1, p2 = positions[e.src], positions[e.dst]
        key = tuple(sorted((e.src, e.dst)))
        k = pair_seen.get(key, 0)
        pair_seen[key] = k + 1
        bend = curve
        if pair_counts[key] > 1:
            # Parallel/reverse edges must separate even with curve 0.
            magnitude = max(abs(curve), 0.35)
            bend = magnitude * (1 if k % 2 == 0 else -1) * (1 + k // 2)
        if bend == 0:
            edges[f"edge:{i}"] = (p1, p2)
        else:
            mx, my = (p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2
            dx, dy = p2[0] - p1[0], p2[1] - p1[1]
            norm = math.hypot(dx, dy) or 1.0
            ctrl = (mx - dy / norm * bend, my + dx / norm * bend)
            edges[f"edge:{i}"] = (p1, ctrl, p2)
    return edges


def _circle_positions(ids: list[str], spacing: float, cell: float) -> dict[str, tuple[float, float]]:
    n = len(ids)
    if n == 0:
        return {}
    if n == 1:
        return {ids[0]: (0.0, 0.0)}
    chord_need = 1.6 * cell
    radius = max(1.5, n * spacing / (2 * math.pi), chord_need / (2 * math.sin(math.pi / n)))
    out = {}
    for i, node_id in enumerate(ids):
        angle = -math.pi / 2 + 2 * math.pi * i / n
        out[node_id] = (radius * math.cos(angle), radius * math.sin(angle))
    return out


def _engine_circular(view, params: dict) -> tuple[dict, dict]:
    cell = params.get("cell_size", 1.0)
    spacing = params.get("node_spacing", 1.5)
    if isinstance(view, core.ArrayView):
        ids = [f"elem:{el.index}" for el in view.elements]
        positions = _circle_positions(ids, spacing, cell)
        return {bid: box_at(p[0], p[1], cell, cell) for bid, p in positions.items()}, {}
    ids = _node_ids_sorted(view)
    positions = _circle_positions(ids, spacing, cell)
    boxes = {f"node:{nid}": box_at(p[0], p[1], 1.2 * cell, 0.8 * cell)
             for nid, p in positions.items()}
    edges = {}
    if isinstance(view, core.GraphView):
        edges = _graph_edge_points(view, positions, params.get("edge_curve", 0.0))
    elif isinstance(view, core.TreeView):
        edges = _tree_edges(view, positions)
    return boxes, edges


def _tree_edges(view: core.TreeView, positions: dict) -> dict:
    edges = {}
    i = 0
    for parent in sorted(view.children):
        for child in view.children[parent]:
            if child is not None and parent in positions and child in positions:
                edges[f"edge:{i}"] = (positions[parent], positions[child])
                i += 1
    return edges


def _tree_depths(view: core.TreeView) -> dict[str, int]:
    depths: dict[str, int] = {}
    roots = sorted(view.roots())
    queue = [(r, 0) for r in roots]
    while queue:
        node, d = queue.pop(0)
        depths[node] = d
        for child in view.children.get(node, ()):
            if child is not None:
                queue.append((child, d + 1))
    return depths


def _engine_hierarchical(view, params: dict) -> tuple[dict, dict]:
    cell = params.get("cell_size", 1.0)
    spacing = max(params.get("node_spacing", 1.5), 1.5 * cell)
    layer_pitch = max(1.5, 1.8 * cell)
    positions: dict[str, tuple[float, float]] = {}
    if isinstance(view, core.TreeView):
        # Leaf slots allocated in traversal order; parents center above.
        next_slot = [0.0]

        def place(node: str, depth: int) -> float:
            kids = [c for c in view.children.get(node, ()) if c is not None]
            if not kids:
                x = next_slot[0]
                next_slot[0] += spacing
            else:
                xs = [place(c, depth + 1) for c in kids]
                x = sum(xs) / len(xs)
            positions[node] = (x, depth * layer_pitch)
            return x

        for root in sorted(view.roots()):
            place(root, 0)
            next_slot[0] += spacing  # gap between disjoint subtrees
        boxes = {f"node:{nid}": box_at(p[0], p[1], 1.2 * cell, 0.8 * cell)
                 for nid, p in positions.items()}
        return boxes, _tree_edges(view, positions)

    # Graph: BFS layering from the first node id; unreached nodes start new
    # components, laid out after the ones already seen.
    adjacency: dict[str, list[str]] = {n.id: [] for n in view.nodes}
    for e in view.edges:
        adjacency[e.src].append(e.dst)
        if not e.directed:
            adjacency[e.dst].append(e.src)
    for node in adjacency:
        adjacency[node] = sorted(set(adjacency[node]))
    visited: dict[str, int] = {}
    layers: dict[int, list[str]] = {}
    for start in _node_ids_sorted(view):
        if start in visited:
            continue
        queue = [(start, 0)]
        visited[start] = 0
        while queue:
            node, depth = queue.pop(0)
            layers.setdefault(depth, []).append(node)
            for nxt in adjacency[node]:
                if nxt not in visited:
                    visited[nxt] = depth + 1
                    queue.append((nxt, depth + 1))
    for depth, nodes in layers.items():
        for i, node in enumerate(nodes):
            positions[node] = (i * spacing, depth * layer_pitch)
    boxes = {f"node:{nid}": box_at(p[0], p[1], 1.2 * cell, 0.8 * cell)
             for nid, p in positions.items()}
    return boxes, _graph_edge_points(view, positions, params.get("edge_curve", 0.0))


def _engine_force_directed(view: core.GraphView, params: dict,
                           prev: Placement | None) -> tuple[dict, dict]:
    cell = params.get("cell_size", 1.0)
    k = params.get("node_spacing", 2.0)
    ids = _node_ids_sorted(view)
    if not ids:
        return {}, {}
    warm: dict[str, tuple[float, float]] = {}
    if prev is not None:
        for nid in ids:
            box = prev.boxes.get(f"node:{nid}")
            if box is not None:
                warm[nid] = (box.cx, box.cy)

    neighbors: dict[str, set[str]] = {nid: set() for nid in ids}
    for e in view.edges:
        if e.src != e.dst:
            neighbors[e.src].add(e.dst)
            neighbors[e.dst].add(e.src)

    if warm:
        # Warm start: persisting nodes keep their previous positions (and
        # the previous scale) so frames stay steady; only new nodes are
        # seeded, near the barycenter of their placed neighbors, and
        # relaxed.
        scale = prev.scale if prev is not None else 1.0
        k = k * scale
        pos = dict(warm)
        fresh = [nid for nid in ids if nid not in warm]
        for j, nid in enumerate(fresh):
            anchors = [pos[m] for m in sorted(neighbors[nid]) if m in pos]
            if anchors:
                bx = sum(p[0] for p in anchors) / len(anchors)
                by = sum(p[1] for p in anchors) / len(anchors)
            else:
                placed = list(pos.values()) or [(0.0, 0.0)]
                bx = sum(p[0] for p in placed) / len(placed)
                by = sum(p[1] for p in placed) / len(placed)
            angle = 2.399963 * (j + 1)  # golden-angle fan, deterministic
            pos[nid] = (bx + 0.6 * k * math.cos(angle), by + 0.6 * k * math.sin(angle))
        moving = fresh
        iterations = FD_WARM_ITERATIONS if fresh else 0
        max_temp = 0.3 * k
        cell = cell * scale
    else:
        pos = dict(_circle_positions(ids, k, cell))
        moving = ids
        iterations = FD_ITERATIONS
        max_temp = 0.5 * k

    # Virtual frame bound: keeps disconnected components from repelling
    # each other off to infinity. Cold layouts center on the origin; warm
    # ones on the previous frame's barycenter.
    half = k * (math.sqrt(len(ids)) + 2) / 2
    if warm:
        fcx = sum(p[0] for p in warm.values()) / len(warm)
        fcy = sum(p[1] for p in warm.values()) / len(warm)
    else:
        fcx, fcy = 0.0, 0.0
    for it in range(iterations):
        temp = max_temp * (1.0 - it / iterations)
        disp = {nid: [0.0, 0.0] for nid in moving}
        for a in moving:
            for b in ids:
                if a == b:
                    continue
                dx = pos[a][0] - pos[b][0]
                dy = pos[a][1] - pos[b][1]
                dist = math.hypot(dx, dy)
                if dist < 1e-9:
                    # Coincident nodes push apart along a fixed direction.
                    dx, dy, dist = 0.01, 0.01, 0.01414
                ux, uy = dx / dist, dy / dist
                repulse = k * k / dist
                disp[a][0] += ux * repulse
                disp[a][1] += uy * repulse
                if b in neighbors[a]:
                    attract = dist * dist / k
                    disp[a][0] -= ux * attract
                    disp[a][1] -= uy * attract
        for nid in moving:
            dx, dy = disp[nid]
            norm = math.hypot(dx, dy)
            if norm > 1e-9:
                step = min(norm, temp)
                nx = pos[nid][0] + dx / norm * step
                ny = pos[nid][1] + dy / norm * step
                pos[nid] = (min(fcx + half, max(fcx - half, nx)),
                            min(fcy + half, max(fcy - half, ny)))

    w, h = 1.2 * cell, 0.8 * cell
    boxes = {f"node:{nid}": box_at(pos[nid][0], pos[nid][1], w, h) for nid in ids}
    if not _resolve_overlaps(boxes):
        boxes = {f"node:{nid}": box_at(p[0], p[1], w, h)
                 for nid, p in _circle_positions(ids, k, cell).items()}
        _resolve_overlaps(boxes)
    positions = {nid: (boxes[f"node:{nid}"].cx, boxes[f"node:{nid}"].cy) for nid in ids}
    return boxes, _graph_edge_points(view, positions, params.get("edge_curve", 0.0))


def _resolve_overlaps(boxes: dict[str, Box]) -> bool:
    """Deterministic pairwise separation sweep; True when separation holds."""
    ids = sorted(boxes)
    for _ in range(FD_RESOLUTION_PASSES):
        moved = False
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                ba, bb = boxes[a], boxes[b]
                ox = min(ba.x2, bb.x2) - max(ba.x, bb.x) + _PAD
                oy = min(ba.y2, bb.y2) - max(ba.y, bb.y) + _PAD
                if ox <= _PAD or oy <= _PAD:
                    continue
                dx, dy = bb.cx - ba.cx, bb.cy - ba.cy
                if abs(dx) < 1e-9 and abs(dy) < 1e-9:
                    dx, dy = 1.0, 0.5  # deterministic split for coincident centers
                if ox < oy:
                    shift = ox / 2 * (1 if dx >= 0 else -1)
                    boxes[a] = ba._replace(x=ba.x - shift)
                    boxes[b] = bb._replace(x=bb.x + shift)
                else:
                    shift = oy / 2 * (1 if dy >= 0 else -1)
                    boxes[a] = ba._replace(y=ba.y - shift)
                    boxes[b] = bb._replace(y=bb.y + shift)
                moved = True
        if not moved:
            return True
    return False


_ENGINES = {
    "horizontal_array": lambda view, params, prev: _engine_horizontal_array(view, params),
    "matrix": lambda view, params, prev: _engine_matrix(view, params),
    "grid": lambda view, params, prev: _engine_grid(view, params),
    "circular": lambda view, params, prev: _engine_circular(view, params),
    "hierarchical": lambda view, params, prev: _engine_hierarchical(view, params),
    "force_directed": _engine_force_directed,
}


# ---------------------------------------------------------------------------
# Fitting and the public entry points
# ---------------------------------------------------------------------------

def _content_bounds(boxes: dict[str, Box], edges: dict) -> Box | None:
    xs, ys, xs2, ys2 = [], [], [], []
    for box in boxes.values():
        xs.append(box.x)
        ys.append(box.y)
        xs2.append(box.x2)
        ys2.append(box.y2)
    for pts in edges.values():
        for px, py in pts:
            xs.append(px)
            ys.append(py)
            xs2.append(px)
            ys2.append(py)
    if not xs:
        return None
    return Box(min(xs), min(ys), max(xs2) - min(xs), max(ys2) - min(ys))


def _transform(boxes: dict[str, Box], edges: dict, scale: float,
               ox: float, oy: float, cx: float, cy: float) -> tuple[dict, dict]:
    """Scale about (cx, cy) then translate by (ox, oy)."""
    new_boxes = {}
    for bid, b in boxes.items():
        nx = cx + (b.x - cx) * scale + ox
        ny = cy + (b.y - cy) * scale + oy
        new_boxes[bid] = Box(nx, ny, b.w * scale, b.h * scale)
    new_edges = {}
    for eid, pts in edges.items():
        new_edges[eid] = tuple((cx + (px - cx) * scale + ox, cy + (py - cy) * scale + oy)
                               for px, py in pts)
    return new_boxes, new_edges


def _abbreviate(boxes: dict[str, Box]) -> dict[str, Box]:
    """Shrink label-bearing boxes (labels, pointers, hash entries) in place
    width-wise; the abbreviated text mode is honored by the backends."""
    out = {}
    for bid, b in boxes.items():
        if bid.startswith(("rowlabel:", "collabel:", "ptr:", "entry:")):
            out[bid] = box_at(b.cx, b.cy, b.w * 0.55, b.h)
        else:
            out[bid] = b
    return out


def _fit_main(boxes: dict, edges: dict, panel: Box,
              warnings: list) -> tuple[dict, dict, float, bool]:
    region = panel  # engines leave their own insets; the panel is the region
    abbreviated = False
    for attempt in (0, 1):
        bounds = _content_bounds(boxes, edges)
        if bounds is None:
            return boxes, edges, 1.0, False
        if contains(region, bounds, slack=0.0):
            return boxes, edges, 1.0, abbreviated  # already fitted: exact identity
        scale = 1.0
        if bounds.w > region.w or bounds.h > region.h:
            scale = min(region.w / bounds.w if bounds.w > 0 else 1.0,
                        region.h / bounds.h if bounds.h > 0 else 1.0)
        if scale >= RESCALE_FLOOR - 1e-9:
            ox = region.cx - bounds.cx
            oy = region.cy - bounds.cy
            fitted_boxes, fitted_edges = _transform(boxes, edges, min(scale, 1.0),
                                                    ox, oy, bounds.cx, bounds.cy)
            if scale < 1.0:
                warnings.append(Diagnostic(
                    WARNING, DENSITY_RESCALE, "/layout",
                    f"main view rescaled by {scale:.3f} to fit its panel"))
            return fitted_boxes, fitted_edges, min(scale, 1.0), abbreviated
        if attempt == 0:
            boxes = _abbreviate(boxes)
            abbreviated = True
    raise CapacityExceeded(
        f"content extent {bounds.w:.1f}x{bounds.h:.1f} cannot fit panel "
        f"{region.w:.1f}x{region.h:.1f} at the minimum scale {RESCALE_FLOOR}")


def compute_layout(state: core.VisualState, config: RenderConfig,
                   prev: Placement | None = None) -> Placement:
    """Place every element of ``state`` deterministically.

    ``prev`` warm-starts the force-directed engine so persisting nodes only
    move in response to structural change.
    """
    kind = state.main_view.kind
    layout_type = config.layout_type
    warnings: list[Diagnostic] = []
    if layout_type not in COMPATIBLE_LAYOUTS[kind]:
        fallback, _ = DEFAULT_LAYOUTS[kind]
        warnings.append(Diagnostic(
            WARNING, LAYOUT_FALLBACK, "/layout/main/type",
            f"layout {layout_type!r} does not fit a {kind} view; using {fallback!r}"))
        layout_type = fallback

    panels = panel_geometry(config.canvas)
    boxes = _left_panel_boxes(state, panels["left"])

    params = dict(config.layout_params)
    main_boxes, main_edges = _ENGINES[layout_type](state.main_view, params, prev)
    main_boxes, main_edges, scale, abbreviated = _fit_main(
        main_boxes, main_edges, panels["main"], warnings)

    boxes.update(main_boxes)
    return Placement(boxes=boxes, edges=main_edges, layout_type=layout_type,
                     scale=scale, abbreviated=abbreviated,
                     warnings=tuple(warnings), panels=panels)


def shrink_to_fit(placement: Placement, canvas: Canvas) -> Placement:
    """Re-fit a placement's main-view content into the main panel.

    Idempotent for content that already fits; never enlarges content.
    """
    panels = panel_geometry(canvas)
    main_boxes = {bid: b for bid, b in placement.boxes.items() if _is_main(bid)}
    other = {bid: b for bid, b in placement.boxes.items() if not _is_main(bid)}
    warnings = list(placement.warnings)
    fitted, edges, scale, abbreviated = _fit_main(main_boxes, dict(placement.edges),
                                                  panels["main"], warnings)
    other.update(fitted)
    return replace(placement, boxes=other, edges=edges,
                   scale=placement.scale * scale,
                   abbreviated=placement.abbreviated or abbreviated,
                   warnings=tuple(warnings), panels=panels)


@dataclass(frozen=True)
class DriftReport:
    max_displacement: float
    moved: dict[str, float]


def layout_stability(prev: Placement, next: Placement) -> DriftReport:
    """Center displacement of every box id present in both placements."""
    moved: dict[str, float] = {}
    worst = 0.0
    for bid in sorted(set(prev.boxes) & set(next.boxes)):
        a, b = prev.boxes[bid], next.boxes[bid]
        d = math.hypot(b.cx - a.cx, b.cy - a.cy)
        if d > 1e-9:
            moved[bid] = d
        worst = max(worst, d)
    return DriftReport(max_displacement=worst, moved=moved)
