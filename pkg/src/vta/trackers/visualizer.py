"""The tracker-side trace builder.

A tracker updates its own algorithm state first, then emits render
operations through a :class:`Visualizer`. The wrapper maintains a shadow
visual state by applying each emitted delta immediately, so an operation
the transformers reject surfaces at emission time as an
InternalInstrumentationFault instead of a broken trace, and the recorded
snapshots are replay-exact by construction.
"""

from __future__ import annotations

from .. import core
from ..errors import InternalInstrumentationFault
from ..errors import WordApplyError
from ..tracejson import Trace, advance_state, extension_for, validate_trace

# Shared dark-theme palette; trackers pick the keys they use.
PALETTE: dict[str, core.StyleDef] = {
    "idle": core.StyleDef(fill="#2C3E50", stroke="#7F8C8D", text="#ECF0F1"),
    "normal": core.StyleDef(fill="#2C3E50", stroke="#95A5A6", text="#ECF0F1"),
    "current": core.StyleDef(fill="#3498DB", stroke="#2980B9", text="#FFFFFF"),
    "comparing": core.StyleDef(fill="#F39C12", stroke="#D68910", text="#1A1A1A"),
    "swapped": core.StyleDef(fill="#E67E22", stroke="#CA6F1E", text="#FFFFFF"),
    "sorted": core.StyleDef(fill="#27AE60", stroke="#1E8449", text="#FFFFFF"),
    "done": core.StyleDef(fill="#27AE60", stroke="#1E8449", text="#FFFFFF"),
    "found": core.StyleDef(fill="#2ECC71", stroke="#27AE60", text="#1A1A1A"),
    "visited": core.StyleDef(fill="#16A085", stroke="#117864", text="#FFFFFF"),
    "frontier": core.StyleDef(fill="#8E44AD", stroke="#6C3483", text="#FFFFFF"),
    "blocked": core.StyleDef(fill="#C0392B", stroke="#922B21", text="#FFFFFF"),
    "prime": core.StyleDef(fill="#27AE60", stroke="#1E8449", text="#FFFFFF"),
    "composite": core.StyleDef(fill="#34495E", stroke="#2C3E50", text="#95A5A6"),
    "inserted": core.StyleDef(fill="#2ECC71", stroke="#27AE60", text="#1A1A1A"),
    "collision": core.StyleDef(fill="#C0392B", stroke="#922B21", text="#FFFFFF"),
    "answer": core.StyleDef(fill="#F1C40F", stroke="#D4AC0D", text="#1A1A1A"),
    "active": core.StyleDef(fill="#F1C40F", stroke="#D4AC0D", text="#1A1A1A"),
}


def styles(*keys: str) -> dict[str, core.StyleDef]:
    """Palette subset, always including "idle"."""
    out = {"idle": PALETTE["idle"]}
    for key in keys:
        out[key] = PALETTE[key]
    return out


class Visualizer:
    """Accumulates a trace while shadow-applying every emitted delta."""

    def __init__(self, name: str, family: str, initial_state: core.VisualState,
                 extensions: tuple[str, ...] | None = None):
        problems = initial_state.check()
        if problems:
            raise InternalInstrumentationFault(f"bad initial state: {'; '.join(problems)}")
        if extensions is None:
            extensions = (extension_for(initial_state.main_view.kind),)
        self.name = name
        self.family = family
        self.extensions = tuple(sorted(set(extensions)))
        self.initial_state = initial_state
        self.state = initial_state
        self.deltas: list[core.Delta] = []
        self.snapshots: list[core.VisualState] = [initial_state]

    def step(self, description: str, highlight, ops) -> None:
        """Record one delta. ``highlight`` is a line number or list of
        them; ``ops`` is a flat op list (one group) or a list of groups."""
        if isinstance(highlight, int):
            highlight = (highlight,)
        groups: tuple[tuple[core.Operation, ...], ...]
        if ops and isinstance(ops[0], (list, tuple)):
            groups = tuple(tuple(g) for g in ops)
        else:
            groups = (tuple(ops),)
        delta = core.Delta(description=description, highlight=tuple(highlight), groups=groups)
        try:
            self.state = advance_state(self.state, delta)
        except WordApplyError as exc:
            raise InternalInstrumentationFault(
                f"step {len(self.deltas)} ({description!r}) emitted a bad op at "
                f"position {exc.position}: {exc.cause.message}") from exc
        self.deltas.append(delta)
        self.snapshots.append(self.state)

    def finish(self) -> Trace:
        """Assemble the trace; it must validate with zero errors."""
        trace = Trace(algorithm_name=self.name, algorithm_family=self.family,
                      initial_state=self.initial_state, deltas=tuple(self.deltas),
                      required_extensions=self.extensions)
        report = validate_trace(trace)
        if not report.valid:
            codes = ", ".join(d.code for d in report.errors)
            raise InternalInstrumentationFault(f"emitted trace fails validation: {codes}")
        return trace


# --- op builders -------------------------------------------------------------

def update_style(indices, style_key: str) -> core.Operation:
    return core.Operation(core.UPDATE_STYLE, {"indices": list(indices), "styleKey": style_key})


def move_elements(pairs) -> core.Operation:
    return core.Operation(core.MOVE_ELEMENTS,
                          {"pairs": [{"from": a, "to": b} for a, b in pairs]})


def swap_elements(i: int, j: int) -> core.Operation:
    return move_elements([(i, j), (j, i)])


def shift_elements(start: int, end: int, offset: int) -> core.Operation:
    return core.Operation(core.SHIFT_ELEMENTS,
                          {"range": {"start": start, "end": end}, "offset": offset})


def update_values(assignments) -> core.Operation:
    return core.Operation(core.UPDATE_VALUES,
                          {"assignments": [{"index": i, "value": v} for i, v in assignments]})


def set_pointer(name: str, index: int | None) -> core.Operation:
    return core.Operation(core.SET_POINTER, {"name": name, "index": index})


def clear_pointer(name: str) -> core.Operation:
    return core.Operation(core.CLEAR_POINTER, {"name": name})


def update_node_style(ids, style_key: str) -> core.Operation:
    return core.Operation(core.UPDATE_NODE_STYLE, {"ids": list(ids), "styleKey": style_key})


def update_node_properties(node_id: str, properties: dict) -> core.Operation:
    return core.Operation(core.UPDATE_NODE_PROPERTIES,
                          {"id": node_id, "properties": dict(properties)})


def update_edge_style(edges, style_key: str) -> core.Operation:
    return core.Operation(core.UPDATE_EDGE_STYLE,
                          {"edges": [{"from": a, "to": b} for a, b in edges],
                           "styleKey": style_key})


def add_node(node_id: str, label: str, style_key: str = "idle",
             properties: dict | None = None) -> core.Operation:
    node = {"id": node_id, "label": label, "styleKey": style_key}
    if properties:
        node["properties"] = dict(properties)
    return core.Operation(core.ADD_NODE, {"node": node})


def remove_node(node_id: str) -> core.Operation:
    return core.Operation(core.REMOVE_NODE, {"id": node_id})


def add_child(parent: str, node_id: str, label: str, position: int,
              style_key: str = "idle") -> core.Operation:
    return core.Operation(core.ADD_CHILD, {
        "parent": parent,
        "node": {"id": node_id, "label": label, "styleKey": style_key},
        "position": position})


def reparent(node_id: str, new_parent: str, position: int) -> core.Operation:
    return core.Operation(core.REPARENT,
                          {"id": node_id, "newParent": new_parent, "position": position})


def rotate(pivot: str, direction: str) -> core.Operation:
    return core.Operation(core.ROTATE, {"pivot": pivot, "direction": direction})


def insert_into_bucket(bucket: int, key, value) -> core.Operation:
    return core.Operation(core.INSERT_INTO_BUCKET,
                          {"bucket": bucket, "key": key, "value": value})


def rehash(new_capacity: int, placement) -> core.Operation:
    return core.Operation(core.REHASH, {
        "newCapacity": new_capacity,
        "placement": [{"key": k, "bucket": b} for k, b in placement]})


def highlight_collision(bucket: int, style_key: str) -> core.Operation:
    return core.Operation(core.HIGHLIGHT_COLLISION, {"bucket": bucket, "styleKey": style_key})


def update_table_cell(row: int, col: int, value) -> core.Operation:
    return core.Operation(core.UPDATE_TABLE_CELL, {"row": row, "col": col, "value": value})


def highlight_table_cell(cells, style_key: str) -> core.Operation:
    return core.Operation(core.HIGHLIGHT_TABLE_CELL,
                          {"cells": [{"row": r, "col": c} for r, c in cells],
                           "styleKey": style_key})


def show_dependency(src: tuple[int, int], dst: tuple[int, int]) -> core.Operation:
    return core.Operation(core.SHOW_DEPENDENCY,
                          {"from": {"row": src[0], "col": src[1]},
                           "to": {"row": dst[0], "col": dst[1]}})


def show_comment(comment_id: str, text: str, view: str = "main",
                 element=None) -> core.Operation:
    anchor: dict = {"view": view}
    if element is not None:
        anchor["element"] = element
    return core.Operation(core.SHOW_COMMENT,
                          {"id": comment_id, "text": text, "anchor": anchor})


def hide_comment(comment_id: str) -> core.Operation:
    return core.Operation(core.HIDE_COMMENT, {"id": comment_id})


def append_to_list(view: str, entry) -> core.Operation:
    return core.Operation(core.APPEND_TO_LIST, {"view": view, "entry": entry})


def pop_from_list(view: str, end: str = "front") -> core.Operation:
    return core.Operation(core.POP_FROM_LIST, {"view": view, "end": end})
