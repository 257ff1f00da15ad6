"""Shared scene construction for the static backends.

Turns (state, placement, theme) into a flat draw list so the TikZ and SVG
emitters only translate geometry and never re-derive content. Null values
render as a placeholder glyph: "·" in array cells and auxiliary entries,
"∞" in table cells and graph node properties (the wire format bans
Infinity tokens, and an unreached distance/DP cell is the dominant case).
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import core
from ..layout import Box, Placement
from .frames import Frame

NULL_GLYPH_ARRAY = "·"
NULL_GLYPH_TABLE = "∞"


@dataclass(frozen=True)
class Shape:
    box_id: str
    box: Box
    form: str  # "rect" | "ellipse" | "plain" (no border)
    fill: str | None
    stroke: str | None
    text: str
    text_color: str
    bold: bool = False
    small: bool = False


@dataclass(frozen=True)
class Wire:
    edge_id: str
    points: tuple[tuple[float, float], ...]
    color: str
    width: float
    arrow: bool
    dashed: bool = False
    label: str = ""


@dataclass(frozen=True)
class Scene:
    background: str
    shapes: tuple[Shape, ...]
    wires: tuple[Wire, ...]


def _value_text(value: core.Scalar, null_glyph: str) -> str:
    if value is None:
        return null_glyph
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def _abbrev(text: str, abbreviated: bool, limit: int = 4) -> str:
    if abbreviated and len(text) > limit:
        return text[:limit - 1] + "…"
    return text


def build_scene(frame: Frame, theme: dict[str, str], algorithm_name: str) -> Scene:
    state = frame.state
    placement = frame.placement
    view = state.main_view
    primary = theme.get("primary", "#3498DB")
    text_color = theme.get("text", "#FFFFFF")
    shapes: list[Shape] = []
    wires: list[Wire] = []

    def style_of(style_key: str) -> core.StyleDef:
        return state.resolve_style(style_key)

    def add(box_id: str, form: str, text: str, style: core.StyleDef | None = None,
            bold: bool = False, small: bool = False, plain_color: str | None = None):
        box = placement.boxes.get(box_id)
        if box is None:
            return
        if style is None:
            shapes.append(Shape(box_id, box, form, None, None, text,
                                plain_color or text_color, bold, small))
        else:
            shapes.append(Shape(box_id, box, form, style.fill, style.stroke, text,
                                style.text, bold, small))

    add("title", "plain", algorithm_name or "", bold=True, plain_color=primary)
    add("caption", "plain", frame.caption, plain_color=text_color)

    for n, line in enumerate(state.pseudocode, start=1):
        lit = n in state.highlight
        add(f"code:{n}", "plain", line, bold=lit, small=True,
            plain_color=primary if lit else text_color)

    for aux in state.auxiliary_views:
        add(f"auxtitle:{aux.name}", "plain", aux.name, small=True, plain_color=text_color)
        for k, entry in enumerate(aux.entries):
            if aux.kind == core.state.AUX_MAP:
                label = f"{entry.key}:{_value_text(entry.value, NULL_GLYPH_ARRAY)}"
            else:
                label = _value_text(entry.value, NULL_GLYPH_ARRAY)
            add(f"aux:{aux.name}:{k}", "rect", label, style_of(entry.style_key), small=True)

    for comment in state.comments:
        add(f"comment:{comment.id}", "rect", _abbrev(comment.text, placement.abbreviated, 40),
            core.StyleDef(fill=theme.get("background", "#1A1A1A"), stroke=primary,
                          text=text_color), small=True)

    if isinstance(view, core.ArrayView):
        for el in view.elements:
            add(f"elem:{el.index}", "rect", _value_text(el.value, NULL_GLYPH_ARRAY),
                style_of(el.style_key))
        for name in sorted(view.pointers):
            target = view.pointers[name]
            label = name if target is not None else f"{name}:–"
            add(f"ptr:{name}", "plain", _abbrev(label, placement.abbreviated),
                small=True, plain_color=primary)
    elif isinstance(view, core.GraphView):
        for i, edge in enumerate(view.edges):
            pts = placement.edges.get(f"edge:{i}")
            if pts is None:
                continue
            style = style_of(edge.style_key)
            label = "" if edge.weight is None else _value_text(edge.weight, NULL_GLYPH_TABLE)
            wires.append(Wire(f"edge:{i}", pts, style.stroke, 1.0,
                              arrow=edge.directed, label=label))
        for node in view.nodes:
            lines = [node.label]
            for key in sorted(node.properties):
                lines.append(f"{key}={_value_text(node.properties[key], NULL_GLYPH_TABLE)}")
            add(f"node:{node.id}", "ellipse", "\n".join(lines), style_of(node.style_key))
    elif isinstance(view, core.TreeView):
        for eid, pts in sorted(placement.edges.items()):
            wires.append(Wire(eid, pts, theme.get("text", "#FFFFFF"), 0.8, arrow=False))
        for node in view.nodes:
            add(f"node:{node.id}", "ellipse", node.label, style_of(node.style_key))
    elif isinstance(view, core.HashtableView):
        for b, bucket in enumerate(view.buckets):
            add(f"bucket:{b}", "rect", str(b),
                core.StyleDef(fill=theme.get("background", "#1A1A1A"), stroke=text_color,
                              text=text_color), small=True)
            for entry in bucket:
                tag = f"i{entry.key}" if isinstance(entry.key, int) else f"s{entry.key}"
                label = f"{entry.key}:{_value_text(entry.value, NULL_GLYPH_ARRAY)}"
                add(f"entry:{tag}", "rect", _abbrev(label, placement.abbreviated, 8),
                    style_of(entry.style_key), small=True)
    elif isinstance(view, core.TableView):
        for r in range(view.rows):
            for c in range(view.cols):
                cell = view.cells[r][c]
                add(f"cell:{r}:{c}", "rect", _value_text(cell.value, NULL_GLYPH_TABLE),
                    style_of(cell.style_key), small=True)
        if view.row_labels is not None:
            for r, label in enumerate(view.row_labels):
                add(f"rowlabel:{r}", "plain", _abbrev(label, placement.abbreviated),
                    small=True, plain_color=text_color)
        if view.col_labels is not None:
            for c, label in enumerate(view.col_labels):
                add(f"collabel:{c}", "plain", _abbrev(label, placement.abbreviated),
                    small=True, plain_color=text_color)
        for i in range(len(view.dependencies)):
            pts = placement.edges.get(f"dep:{i}")
            if pts is not None:
                wires.append(Wire(f"dep:{i}", pts, primary, 1.2, arrow=True, dashed=True))

    return Scene(background=theme.get("background", "#1A1A1A"),
                 shapes=tuple(shapes), wires=tuple(wires))
