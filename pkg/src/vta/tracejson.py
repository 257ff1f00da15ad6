"""VTA-JSON 5.0: canonical reader/writer, validation, and replay.

A trace document carries an ``initial_frame`` (the starting visual state),
a list of ``deltas`` (batches of operation groups, one highlighted
pseudocode step each), and ``required_extensions`` naming the primitive
families it uses. ``vta_version`` must be the string ``"5.0"``.

Serialization is canonical: two-space indentation, a fixed key order per
record type, UTF-8, LF line endings, no trailing whitespace. Serializing
the same trace twice yields identical bytes, which the rendering backends
rely on for digest-stable bundles.

Validation never raises; findings are path-addressed diagnostics. Beyond
the structural invariants (version string, 2D operations arrays, no
Infinity tokens, edge endpoints resolve, integer code highlights) the
validator replays every delta through the core transformers, so referential
integrity holds dynamically, not just on the initial frame.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import core
from .core import (Anchor, ArrayElement, ArrayView, AuxEntry, AuxView, BucketEntry,
                   CellRef, Comment, Delta, GraphEdge, GraphNode, GraphView,
                   HashtableView, Operation, StyleDef, TableCell, TableView, TreeNode,
                   TreeView, VisualState)
from .diagnostics import (BAD_HIGHLIGHT_TYPE, BAD_PARAMS, BAD_STATE, BAD_TYPE,
                          Collector, DANGLING_EDGE, DUPLICATE_ID, Diagnostic, ERROR,
                          GROUP_TARGET_CONFLICT, HIGHLIGHT_OUT_OF_RANGE, INFINITY_TOKEN,
                          MISSING_EXTENSION, MISSING_FIELD, OPS_NOT_2D, STEP_APPLY_FAILED,
                          SYNTAX_ERROR, UNKNOWN_EXTENSION, UNKNOWN_OP, UNKNOWN_STYLE_KEY,
                          UNSUPPORTED_VERSION, VERSION_NOT_STRING, ValidationReport,
                          join_path)
from .errors import TraceReplayError, WordApplyError

VTA_VERSION = "5.0"

EXTENSION_PREFIX = "vta-ext-primitive-"

KNOWN_EXTENSIONS = tuple(EXTENSION_PREFIX + kind for kind in core.VIEW_KINDS)


def extension_for(view_kind: str) -> str:
    return EXTENSION_PREFIX + view_kind


@dataclass(frozen=True)
class Trace:
    algorithm_name: str = ""
    algorithm_family: str = ""
    initial_state: VisualState = field(default_factory=lambda: VisualState(ArrayView()))
    deltas: tuple[Delta, ...] = ()
    required_extensions: tuple[str, ...] = ()
    data_schema: object = None
    vta_version: str = VTA_VERSION


@dataclass(frozen=True)
class ParseResult:
    trace: Trace | None
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return self.trace is not None


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------

def _style_doc(style: StyleDef) -> dict:
    return {"fill": style.fill, "stroke": style.stroke, "text": style.text}


def _anchor_doc(anchor: Anchor) -> dict:
    doc: dict = {"view": anchor.view}
    if anchor.element is not None:
        if isinstance(anchor.element, CellRef):
            doc["element"] = {"row": anchor.element.row, "col": anchor.element.col}
        else:
            doc["element"] = anchor.element
    return doc


def data_state_doc(view: core.MainView, *, include_empty: bool = False) -> dict:
    """Encode a main view as a ``data_state`` record.

    ``include_empty`` forces optional sections (array pointers, table
    dependencies) to appear even when empty, which keeps replay-state
    exports shape-stable for the player.
    """
    if isinstance(view, ArrayView):
        structure = [{"index": el.index, "value": el.value, "styleKey": el.style_key}
                     for el in view.elements]
        doc = {"type": "array", "structure": structure}
        if view.pointers or include_empty:
            doc["pointers"] = {name: view.pointers[name] for name in sorted(view.pointers)}
        return doc
    if isinstance(view, GraphView):
        nodes = []
        for n in view.nodes:
            node_doc = {"id": n.id, "label": n.label, "styleKey": n.style_key}
            if n.properties:
                node_doc["properties"] = {k: n.properties[k] for k in sorted(n.properties)}
            nodes.append(node_doc)
        edges = []
        for e in view.edges:
            edge_doc: dict = {"from": e.src, "to": e.dst}
            if e.weight is not None:
                edge_doc["weight"] = e.weight
            edge_doc["directed"] = e.directed
            edge_doc["styleKey"] = e.style_key
            edges.append(edge_doc)
        return {"type": "graph", "structure": {"nodes": nodes, "edges": edges}}
    if isinstance(view, TreeView):
        nodes = [{"id": n.id, "label": n.label, "styleKey": n.style_key} for n in view.nodes]
        children = {parent: list(view.children[parent]) for parent in sorted(view.children)}
        return {"type": "tree", "structure": {"nodes": nodes, "children": children}}
    if isinstance(view, HashtableView):
        buckets = [[{"key": e.key, "value": e.value, "styleKey": e.style_key} for e in bucket]
                   for bucket in view.buckets]
        return {"type": "hashtable", "structure": {"buckets": buckets}}
    if isinstance(view, TableView):
        structure: dict = {
            "rows": view.rows,
            "cols": view.cols,
            "cells": [[{"value": c.value, "styleKey": c.style_key} for c in row]
                      for row in view.cells],
        }
        if view.row_labels is not None:
            structure["row_labels"] = list(view.row_labels)
        if view.col_labels is not None:
            structure["col_labels"] = list(view.col_labels)
        doc = {"type": "table", "structure": structure}
        if view.dependencies or include_empty:
            doc["dependencies"] = [
                {"from": {"row": d.src.row, "col": d.src.col},
                 "to": {"row": d.dst.row, "col": d.dst.col}}
                for d in view.dependencies]
        return doc
    raise TypeError(f"unknown view type {type(view).__name__}")


def _aux_views_doc(state: VisualState) -> list:
    out = []
    for aux in state.auxiliary_views:
        entries = []
        for e in aux.entries:
            entry: dict = {}
            if aux.kind == core.state.AUX_MAP:
                entry["key"] = e.key
            entry["value"] = e.value
            entry["styleKey"] = e.style_key
            entries.append(entry)
        out.append({"name": aux.name, "kind": aux.kind, "entries": entries})
    return out


def _styles_doc(state: VisualState) -> dict:
    return {"elementStyles": {key: _style_doc(state.styles[key])
                              for key in sorted(state.styles)}}


def initial_frame_doc(trace: Trace) -> dict:
    state = trace.initial_state
    doc: dict = {}
    if trace.data_schema is not None:
        doc["data_schema"] = trace.data_schema
    doc["data_state"] = data_state_doc(state.main_view)
    doc["auxiliary_views"] = _aux_views_doc(state)
    doc["styles"] = _styles_doc(state)
    doc["pseudocode"] = list(state.pseudocode)
    return doc


def _op_doc(op: Operation) -> dict:
    # Canonical param order follows the schema declaration order.
    spec = core.PARAM_SPECS.get(op.op, {})
    params = {name: op.params[name] for name in spec if name in op.params}
    for name in op.params:
        if name not in params:
            params[name] = op.params[name]
    return {"op": op.op, "params": params}


def _delta_doc(delta: Delta) -> dict:
    highlight: object
    if len(delta.highlight) == 1:
        highlight = delta.highlight[0]
    else:
        highlight = list(delta.highlight)
    return {
        "action_description": delta.description,
        "code_highlight": highlight,
        "operations": [[_op_doc(op) for op in group] for group in delta.groups],
    }


def trace_to_doc(trace: Trace) -> dict:
    return {
        "vta_version": trace.vta_version,
        "algorithm": {"name": trace.algorithm_name, "family": trace.algorithm_family},
        "initial_frame": initial_frame_doc(trace),
        "deltas": [_delta_doc(d) for d in trace.deltas],
        "required_extensions": list(trace.required_extensions),
    }


def state_to_doc(state: VisualState) -> dict:
    """Encode a replayed state for export (``state_%03d.json``).

    The shape extends the initial-frame encoding with ``highlight``,
    ``comments``, and always-present optional sections so the player can
    compare its own models field-for-field.
    """
    return {
        "data_state": data_state_doc(state.main_view, include_empty=True),
        "auxiliary_views": _aux_views_doc(state),
        "styles": _styles_doc(state),
        "pseudocode": list(state.pseudocode),
        "highlight": sorted(state.highlight),
        "comments": [{"id": c.id, "text": c.text, "anchor": _anchor_doc(c.anchor)}
                     for c in state.comments],
    }


def canonical_json_bytes(doc) -> bytes:
    """Canonical encoding: 2-space indent, UTF-8, LF, trailing newline."""
    text = json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False)
    return (text + "\n").encode("utf-8")


def serialize_trace(trace: Trace) -> bytes:
    return canonical_json_bytes(trace_to_doc(trace))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class _NonFinite:
    """Sentinel for Infinity/-Infinity/NaN tokens found while decoding."""

    def __init__(self, token: str):
        self.token = token

    def __repr__(self):
        return f"<non-finite {self.token}>"


def _find_non_finite(node, path: str, hits: list) -> None:
    if isinstance(node, _NonFinite):
        hits.append((path, node.token))
    elif isinstance(node, dict):
        for key, value in node.items():
            _find_non_finite(value, join_path(*_split(path), key), hits)
    elif isinstance(node, list):
        for i, value in enumerate(node):
            _find_non_finite(value, join_path(*_split(path), i), hits)


def _split(path: str) -> list:
    return [p for p in path.lstrip("/").split("/") if p != ""] if path else []


def load_document(data: bytes | str, out: Collector):
    """Decode JSON into a raw tree; rejects non-finite numeric tokens."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            out.error(SYNTAX_ERROR, "", f"document is not valid UTF-8: {exc}")
            return None
    try:
        doc = json.loads(data, parse_constant=_NonFinite)
    except json.JSONDecodeError as exc:
        out.error(SYNTAX_ERROR, "", f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}")
        return None
    hits: list = []
    _find_non_finite(doc, "", hits)
    for path, token in hits:
        out.error(INFINITY_TOKEN, path,
                  f"{token} is not allowed; encode undefined values as null")
    if hits:
        return None
    return doc


def _expect_dict(doc, path: str, out: Collector, what: str) -> bool:
    if not isinstance(doc, dict):
        out.error(BAD_TYPE, path, f"{what} must be an object")
        return False
    return True


def _expect_list(doc, path: str, out: Collector, what: str) -> bool:
    if not isinstance(doc, list):
        out.error(BAD_TYPE, path, f"{what} must be an array")
        return False
    return True


def _get_str(doc: dict, key: str, path: str, out: Collector, default: str = "") -> str:
    value = doc.get(key, default)
    if not isinstance(value, str):
        out.error(BAD_TYPE, join_path(*_split(path), key), f"{key} must be a string")
        return default
    return value


def _is_scalar(value) -> bool:
    return value is None or (isinstance(value, (int, float, str)) and not isinstance(value, bool))


def _decode_styles(doc, path: str, out: Collector) -> dict[str, StyleDef]:
    styles: dict[str, StyleDef] = {}
    if doc is None:
        return core.with_idle_style(styles)
    if not _expect_dict(doc, path, out, "styles"):
        return core.with_idle_style(styles)
    element_styles = doc.get("elementStyles", {})
    if not _expect_dict(element_styles, join_path(*_split(path), "elementStyles"), out,
                        "elementStyles"):
        return core.with_idle_style(styles)
    for key in element_styles:
        record = element_styles[key]
        record_path = join_path(*_split(path), "elementStyles", key)
        if not _expect_dict(record, record_path, out, "style record"):
            continue
        styles[key] = StyleDef(
            fill=_get_str(record, "fill", record_path, out, StyleDef.fill),
            stroke=_get_str(record, "stroke", record_path, out, StyleDef.stroke),
            text=_get_str(record, "text", record_path, out, StyleDef.text),
        )
    return core.with_idle_style(styles)


def _decode_array(structure, pointers_doc, path: str, pointers_path: str,
                  out: Collector) -> ArrayView | None:
    if not _expect_list(structure, path, out, "array structure"):
        return None
    elements = []
    for i, record in enumerate(structure):
        el_path = join_path(*_split(path), i)
        if not _expect_dict(record, el_path, out, "array element"):
            return None
        index = record.get("index")
        if not isinstance(index, int) or isinstance(index, bool) or index != i:
            out.error(BAD_STATE, el_path, f"element {i} must carry index {i}")
            return None
        value = record.get("value")
        if not _is_scalar(value):
            out.error(BAD_TYPE, join_path(*_split(el_path), "value"),
                      "value must be a number, string, or null")
            return None
        elements.append(ArrayElement(index=i, value=value,
                                     style_key=record.get("styleKey", core.IDLE_STYLE_KEY)))
    pointers: dict[str, int | None] = {}
    if pointers_doc is not None:
        if not _expect_dict(pointers_doc, pointers_path, out, "pointers"):
            return None
        for name, target in pointers_doc.items():
            if target is not None and (not isinstance(target, int) or isinstance(target, bool)
                                       or not 0 <= target < len(elements)):
                out.error(BAD_STATE, join_path(*_split(pointers_path), name),
                          f"pointer {name!r} must target an element index or null")
                return None
            pointers[name] = target
    return ArrayView(elements=tuple(elements), pointers=pointers)


def _decode_graph(structure, path: str, out: Collector) -> GraphView | None:
    if not _expect_dict(structure, path, out, "graph structure"):
        return None
    nodes = []
    ids: set[str] = set()
    nodes_doc = structure.get("nodes", [])
    if not _expect_list(nodes_doc, join_path(*_split(path), "nodes"), out, "nodes"):
        return None
    for i, record in enumerate(nodes_doc):
        node_path = join_path(*_split(path), "nodes", i)
        if not _expect_dict(record, node_path, out, "node"):
            return None
        node_id = record.get("id")
        if not isinstance(node_id, str):
            out.error(BAD_TYPE, join_path(*_split(node_path), "id"), "node id must be a string")
            return None
        if node_id in ids:
            out.error(DUPLICATE_ID, node_path, f"duplicate node id {node_id!r}")
            return None
        ids.add(node_id)
        properties = record.get("properties", {})
        if not _expect_dict(properties, join_path(*_split(node_path), "properties"), out,
                            "properties"):
            return None
        nodes.append(GraphNode(id=node_id, label=str(record.get("label", node_id)),
                               style_key=record.get("styleKey", core.IDLE_STYLE_KEY),
                               properties=dict(properties)))
    edges = []
    edges_doc = structure.get("edges", [])
    if not _expect_list(edges_doc, join_path(*_split(path), "edges"), out, "edges"):
        return None
    dangling = False
    for i, record in enumerate(edges_doc):
        edge_path = join_path(*_split(path), "edges", i)
        if not _expect_dict(record, edge_path, out, "edge"):
            return None
        src, dst = record.get("from"), record.get("to")
        for endpoint, key in ((src, "from"), (dst, "to")):
            if not isinstance(endpoint, str):
                out.error(BAD_TYPE, join_path(*_split(edge_path), key),
                          f"edge {key} must be a node id string")
                return None
            if endpoint not in ids:
                out.error(DANGLING_EDGE, edge_path,
                          f"edge endpoint {endpoint!r} does not reference an existing node")
                dangling = True
        weight = record.get("weight")
        if weight is not None and (not isinstance(weight, (int, float)) or isinstance(weight, bool)):
            out.error(BAD_TYPE, join_path(*_split(edge_path), "weight"), "weight must be a number")
            return None
        edges.append(GraphEdge(src=src, dst=dst, weight=weight,
                               directed=bool(record.get("directed", False)),
                               style_key=record.get("styleKey", core.IDLE_STYLE_KEY)))
    if dangling:
        return None
    return GraphView(nodes=tuple(nodes), edges=tuple(edges))


def _decode_tree(structure, path: str, out: Collector) -> TreeView | None:
    if not _expect_dict(structure, path, out, "tree structure"):
        return None
    nodes = []
    ids: set[str] = set()
    nodes_doc = structure.get("nodes", [])
    if not _expect_list(nodes_doc, join_path(*_split(path), "nodes"), out, "nodes"):
        return None
    for i, record in enumerate(nodes_doc):
        node_path = join_path(*_split(path), "nodes", i)
        if not _expect_dict(record, node_path, out, "node"):
            return None
        node_id = record.get("id")
        if not isinstance(node_id, str):
            out.error(BAD_TYPE, join_path(*_split(node_path), "id"), "node id must be a string")
            return None
        if node_id in ids:
            out.error(DUPLICATE_ID, node_path, f"duplicate node id {node_id!r}")
            return None
        ids.add(node_id)
        nodes.append(TreeNode(id=node_id, label=str(record.get("label", node_id)),
                              style_key=record.get("styleKey", core.IDLE_STYLE_KEY)))
    children_doc = structure.get("children", {})
    if not _expect_dict(children_doc, join_path(*_split(path), "children"), out, "children"):
        return None
    children: dict[str, tuple[str | None, ...]] = {}
    for parent, slots in children_doc.items():
        slots_path = join_path(*_split(path), "children", parent)
        if not _expect_list(slots, slots_path, out, "child list"):
            return None
        for child in slots:
            if child is not None and not isinstance(child, str):
                out.error(BAD_TYPE, slots_path, "child slots must be node ids or null")
                return None
        children[parent] = tuple(slots)
    view = TreeView(nodes=tuple(nodes), children=children)
    problems = view.check()
    if problems:
        out.error(BAD_STATE, path, "; ".join(problems))
        return None
    return view


def _decode_hashtable(structure, path: str, out: Collector) -> HashtableView | None:
    if not _expect_dict(structure, path, out, "hashtable structure"):
        return None
    buckets_doc = structure.get("buckets")
    if not _expect_list(buckets_doc, join_path(*_split(path), "buckets"), out, "buckets"):
        return None
    if not buckets_doc:
        out.error(BAD_STATE, join_path(*_split(path), "buckets"), "capacity must be >= 1")
        return None
    buckets = []
    seen: set = set()
    for b, bucket_doc in enumerate(buckets_doc):
        bucket_path = join_path(*_split(path), "buckets", b)
        if not _expect_list(bucket_doc, bucket_path, out, "bucket"):
            return None
        entries = []
        for j, record in enumerate(bucket_doc):
            entry_path = join_path(*_split(bucket_path), j)
            if not _expect_dict(record, entry_path, out, "bucket entry"):
                return None
            key = record.get("key")
            if not isinstance(key, (str, int)) or isinstance(key, bool):
                out.error(BAD_TYPE, join_path(*_split(entry_path), "key"),
                          "key must be a string or integer")
                return None
            if key in seen:
                out.error(DUPLICATE_ID, entry_path, f"duplicate key {key!r}")
                return None
            seen.add(key)
            entries.append(BucketEntry(key=key, value=record.get("value"),
                                       style_key=record.get("styleKey", core.IDLE_STYLE_KEY)))
        buckets.append(tuple(entries))
    return HashtableView(buckets=tuple(buckets))


def _decode_table(structure, dependencies_doc, path: str, deps_path: str,
                  out: Collector) -> TableView | None:
    if not _expect_dict(structure, path, out, "table structure"):
        return None
    rows, cols = structure.get("rows"), structure.get("cols")
    for value, key in ((rows, "rows"), (cols, "cols")):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            out.error(BAD_STATE, join_path(*_split(path), key), f"{key} must be an integer >= 1")
            return None
    cells_doc = structure.get("cells", [])
    if not _expect_list(cells_doc, join_path(*_split(path), "cells"), out, "cells"):
        return None
    if len(cells_doc) != rows:
        out.error(BAD_STATE, join_path(*_split(path), "cells"),
                  f"grid has {len(cells_doc)} rows, header says {rows}")
        return None
    cells = []
    for r, row_doc in enumerate(cells_doc):
        row_path = join_path(*_split(path), "cells", r)
        if not _expect_list(row_doc, row_path, out, "row"):
            return None
        if len(row_doc) != cols:
            out.error(BAD_STATE, row_path, f"row {r} has {len(row_doc)} cells, header says {cols}")
            return None
        row = []
        for c, record in enumerate(row_doc):
            cell_path = join_path(*_split(row_path), c)
            if not _expect_dict(record, cell_path, out, "cell"):
                return None
            value = record.get("value")
            if not _is_scalar(value):
                out.error(BAD_TYPE, join_path(*_split(cell_path), "value"),
                          "value must be a number, string, or null")
                return None
            row.append(TableCell(value=value, style_key=record.get("styleKey", core.IDLE_STYLE_KEY)))
        cells.append(tuple(row))
    labels = {}
    for key, expected in (("row_labels", rows), ("col_labels", cols)):
        if key in structure:
            label_doc = structure[key]
            label_path = join_path(*_split(path), key)
            if not _expect_list(label_doc, label_path, out, key):
                return None
            if len(label_doc) != expected:
                out.error(BAD_STATE, label_path, f"{key} length must be {expected}")
                return None
            labels[key] = tuple(str(v) for v in label_doc)
    deps = []
    if dependencies_doc is not None:
        if not _expect_list(dependencies_doc, deps_path, out, "dependencies"):
            return None
        for record in dependencies_doc:
            deps.append(core.Dependency(CellRef(record["from"]["row"], record["from"]["col"]),
                                        CellRef(record["to"]["row"], record["to"]["col"])))
    return TableView(rows=rows, cols=cols, cells=tuple(cells),
                     row_labels=labels.get("row_labels"), col_labels=labels.get("col_labels"),
                     dependencies=tuple(deps))


def decode_data_state(doc, path: str, out: Collector) -> core.MainView | None:
    if not _expect_dict(doc, path, out, "data_state"):
        return None
    kind = doc.get("type")
    if kind not in core.VIEW_KINDS:
        out.error(BAD_TYPE, join_path(*_split(path), "type"),
                  f"data_state type must be one of {', '.join(core.VIEW_KINDS)}")
        return None
    structure = doc.get("structure")
    structure_path = join_path(*_split(path), "structure")
    if kind == core.ARRAY:
        return _decode_array(structure, doc.get("pointers"), structure_path,
                             join_path(*_split(path), "pointers"), out)
    if kind == core.GRAPH:
        return _decode_graph(structure, structure_path, out)
    if kind == core.TREE:
        return _decode_tree(structure, structure_path, out)
    if kind == core.HASHTABLE:
        return _decode_hashtable(structure, structure_path, out)
    return _decode_table(structure, doc.get("dependencies"), structure_path,
                         join_path(*_split(path), "dependencies"), out)


def _decode_aux_views(doc, path: str, out: Collector) -> tuple[AuxView, ...] | None:
    if doc is None:
        return ()
    if not _expect_list(doc, path, out, "auxiliary_views"):
        return None
    views = []
    names: set[str] = set()
    for i, record in enumerate(doc):
        view_path = join_path(*_split(path), i)
        if not _expect_dict(record, view_path, out, "auxiliary view"):
            return None
        name = record.get("name")
        if not isinstance(name, str) or not name:
            out.error(BAD_TYPE, join_path(*_split(view_path), "name"),
                      "auxiliary view name must be a non-empty string")
            return None
        if name in names:
            out.error(DUPLICATE_ID, view_path, f"duplicate auxiliary view name {name!r}")
            return None
        names.add(name)
        kind = record.get("kind", core.state.AUX_LIST)
        if kind not in (core.state.AUX_LIST, core.state.AUX_MAP):
            out.error(BAD_TYPE, join_path(*_split(view_path), "kind"),
                      'auxiliary view kind must be "list" or "map"')
            return None
        entries_doc = record.get("entries", [])
        if not _expect_list(entries_doc, join_path(*_split(view_path), "entries"), out, "entries"):
            return None
        entries = []
        for j, entry in enumerate(entries_doc):
            entry_path = join_path(*_split(view_path), "entries", j)
            if not _expect_dict(entry, entry_path, out, "entry"):
                return None
            if kind == core.state.AUX_MAP and "key" not in entry:
                out.error(MISSING_FIELD, entry_path, "map view entries need a key")
                return None
            entries.append(AuxEntry(value=entry.get("value"), key=entry.get("key"),
                                    style_key=entry.get("styleKey", core.IDLE_STYLE_KEY)))
        views.append(AuxView(name=name, kind=kind, entries=tuple(entries)))
    return tuple(views)


def decode_initial_frame(doc, out: Collector) -> tuple[VisualState | None, object]:
    path = "/initial_frame"
    if not _expect_dict(doc, path, out, "initial_frame"):
        return None, None
    if "data_state" not in doc:
        out.error(MISSING_FIELD, path, "initial_frame needs a data_state")
        return None, None
    main_view = decode_data_state(doc["data_state"], join_path("initial_frame", "data_state"), out)
    aux_views = _decode_aux_views(doc.get("auxiliary_views"),
                                  join_path("initial_frame", "auxiliary_views"), out)
    styles = _decode_styles(doc.get("styles"), join_path("initial_frame", "styles"), out)
    pseudocode_doc = doc.get("pseudocode", [])
    pseudocode: tuple[str, ...] = ()
    if _expect_list(pseudocode_doc, join_path("initial_frame", "pseudocode"), out, "pseudocode"):
        pseudocode = tuple(str(line) for line in pseudocode_doc)
    if main_view is None or aux_views is None:
        return None, doc.get("data_schema")
    state = VisualState(main_view=main_view, auxiliary_views=aux_views, styles=styles,
                        pseudocode=pseudocode)
    return state, doc.get("data_schema")


def _decode_highlight(value, path: str, out: Collector) -> tuple[int, ...] | None:
    if isinstance(value, int) and not isinstance(value, bool):
        return (value,)
    if isinstance(value, list):
        items = []
        for i, item in enumerate(value):
            if not isinstance(item, int) or isinstance(item, bool):
                out.error(BAD_HIGHLIGHT_TYPE, path,
                          "code_highlight must be an integer or an integer array")
                return None
            items.append(item)
        return tuple(items)
    out.error(BAD_HIGHLIGHT_TYPE, path, "code_highlight must be an integer or an integer array")
    return None


def _decode_delta(doc, index: int, out: Collector) -> Delta | None:
    path = join_path("deltas", index)
    if not _expect_dict(doc, path, out, "delta"):
        return None
    description = doc.get("action_description", "")
    if not isinstance(description, str):
        out.error(BAD_TYPE, join_path("deltas", index, "action_description"),
                  "action_description must be a string")
        description = ""
    if "code_highlight" not in doc:
        out.error(MISSING_FIELD, path, "delta needs a code_highlight")
        return None
    highlight = _decode_highlight(doc["code_highlight"],
                                  join_path("deltas", index, "code_highlight"), out)
    operations = doc.get("operations")
    ops_path = join_path("deltas", index, "operations")
    if operations is None:
        out.error(MISSING_FIELD, path, "delta needs an operations array")
        return None
    if not isinstance(operations, list) or any(not isinstance(g, list) for g in operations):
        out.error(OPS_NOT_2D, ops_path,
                  "operations must be a 2D array of op groups ([[...]])")
        return None
    groups = []
    ok = True
    for g, group_doc in enumerate(operations):
        group = []
        for k, op_doc in enumerate(group_doc):
            op_path = join_path("deltas", index, "operations", g, k)
            if not _expect_dict(op_doc, op_path, out, "operation"):
                ok = False
                continue
            op_code = op_doc.get("op")
            if not isinstance(op_code, str) or not core.is_known_op(op_code):
                out.error(UNKNOWN_OP, join_path(*_split(op_path), "op"),
                          f"unknown op code {op_code!r}")
                ok = False
                continue
            params = op_doc.get("params", {})
            problems = core.check_params(op_code, params)
            if problems:
                for rel, message in problems:
                    sub = join_path(*_split(op_path), "params", *_split(rel)) if rel else \
                        join_path(*_split(op_path), "params")
                    out.error(BAD_PARAMS, sub, f"{op_code}: {message}")
                ok = False
                continue
            extras = set(op_doc) - {"op", "params"}
            for name in sorted(extras):
                out.error(BAD_PARAMS, join_path(*_split(op_path), name),
                          f"unexpected field {name!r} on operation")
                ok = False
            group.append(Operation(op=op_code, params=params))
        groups.append(tuple(group))
    if highlight is None or not ok:
        return None
    return Delta(description=description, highlight=highlight, groups=tuple(groups))


def parse_trace(data: bytes | str | dict) -> ParseResult:
    """Decode a VTA-JSON document into a typed trace.

    Diagnostics collect up to the cap; the trace is returned only when no
    error-severity diagnostic was produced.
    """
    out = Collector()
    doc = data if isinstance(data, dict) else load_document(data, out)
    if doc is None and not isinstance(data, dict):
        return ParseResult(None, tuple(out.items))
    if not _expect_dict(doc, "", out, "trace document"):
        return ParseResult(None, tuple(out.items))

    version = doc.get("vta_version")
    if version is None:
        out.error(MISSING_FIELD, "/vta_version", "vta_version is required")
    elif not isinstance(version, str):
        out.error(VERSION_NOT_STRING, "/vta_version",
                  f'vta_version must be the string "{VTA_VERSION}", not {json.dumps(version)}')
    elif version != VTA_VERSION:
        out.error(UNSUPPORTED_VERSION, "/vta_version",
                  f'vta_version must be "{VTA_VERSION}", found "{version}"')

    name, family = "", ""
    algorithm = doc.get("algorithm")
    if algorithm is not None and _expect_dict(algorithm, "/algorithm", out, "algorithm"):
        name = _get_str(algorithm, "name", "/algorithm", out)
        family = _get_str(algorithm, "family", "/algorithm", out)

    if "initial_frame" not in doc:
        out.error(MISSING_FIELD, "/initial_frame", "initial_frame is required")
        state, data_schema = None, None
    else:
        state, data_schema = decode_initial_frame(doc["initial_frame"], out)

    deltas: list[Delta] = []
    deltas_doc = doc.get("deltas")
    if deltas_doc is None:
        out.error(MISSING_FIELD, "/deltas", "deltas is required (may be empty)")
    elif _expect_list(deltas_doc, "/deltas", out, "deltas"):
        for i, delta_doc in enumerate(deltas_doc):
            delta = _decode_delta(delta_doc, i, out)
            if delta is not None:
                deltas.append(delta)

    extensions: list[str] = []
    ext_doc = doc.get("required_extensions", [])
    if _expect_list(ext_doc, "/required_extensions", out, "required_extensions"):
        for i, ext in enumerate(ext_doc):
            if not isinstance(ext, str):
                out.error(BAD_TYPE, join_path("required_extensions", i),
                          "extension names must be strings")
            elif ext not in KNOWN_EXTENSIONS:
                out.error(UNKNOWN_EXTENSION, join_path("required_extensions", i),
                          f"unknown extension {ext!r}")
            else:
                extensions.append(ext)

    if out.has_errors() or state is None:
        return ParseResult(None, tuple(out.items))
    trace = Trace(algorithm_name=name, algorithm_family=family, initial_state=state,
                  deltas=tuple(deltas), required_extensions=tuple(sorted(set(extensions))),
                  data_schema=data_schema, vta_version=VTA_VERSION)
    return ParseResult(trace, tuple(out.items))


# ---------------------------------------------------------------------------
# Validation and replay
# ---------------------------------------------------------------------------

def _word_position_path(delta_index: int, groups, position: int) -> str:
    k = position
    for g, group in enumerate(groups):
        if k < len(group):
            return join_path("deltas", delta_index, "operations", g, k)
        k -= len(group)
    return join_path("deltas", delta_index, "operations")


def _group_conflicts(group) -> list[str]:
    """Same-target writes inside one visually-simultaneous group."""
    targets: dict = {}
    conflicts = []
    for op in group:
        writes: list = []
        if op.op == core.UPDATE_VALUES:
            writes = [("array", a["index"]) for a in op.params["assignments"]]
        elif op.op == core.MOVE_ELEMENTS:
            writes = [("array", p["to"]) for p in op.params["pairs"]]
        elif op.op == core.UPDATE_TABLE_CELL:
            writes = [("cell", op.params["row"], op.params["col"])]
        for target in writes:
            if target in targets:
                conflicts.append(f"{op.op} writes {target[1:]} already written by {targets[target]}")
            targets[target] = op.op
    return conflicts


def validate_trace(trace: Trace) -> ValidationReport:
    """Semantic validation of an already-parsed trace.

    Replays every delta through the core transformers (dynamic referential
    integrity) and emits the presentational warnings (unknown style keys,
    missing extension declarations, group conflicts, highlight range).
    """
    out = Collector()
    state = trace.initial_state

    declared = set(trace.required_extensions)
    needed = extension_for(state.main_view.kind)
    if needed not in declared:
        out.warning(MISSING_EXTENSION, "/required_extensions",
                    f"trace uses a {state.main_view.kind} view; declare {needed!r}")

    known_styles = set(state.styles)
    warned_styles: set[str] = set()

    def warn_style(key: str, path: str) -> None:
        if key not in known_styles and key not in warned_styles:
            warned_styles.add(key)
            out.warning(UNKNOWN_STYLE_KEY, path,
                        f'style key {key!r} is not defined; it will render as "idle"')

    for key in sorted(state.referenced_style_keys()):
        warn_style(key, "/initial_frame/styles")

    lines = len(state.pseudocode)
    for i, delta in enumerate(trace.deltas):
        if state.pseudocode:
            for line in delta.highlight:
                if not (1 <= line <= lines):
                    out.error(HIGHLIGHT_OUT_OF_RANGE,
                              join_path("deltas", i, "code_highlight"),
                              f"highlight line {line} outside 1..{lines}", delta_index=i)
        for g, group in enumerate(delta.groups):
            for conflict in _group_conflicts(group):
                out.warning(GROUP_TARGET_CONFLICT, join_path("deltas", i, "operations", g),
                            conflict, delta_index=i)
            for k, op in enumerate(group):
                for key in core.ops.style_keys_in_params(op.op, op.params):
                    warn_style(key, join_path("deltas", i, "operations", g, k, "params"))

        try:
            state = advance_state(state, delta)
        except WordApplyError as exc:
            path = _word_position_path(i, delta.groups, exc.position)
            out.error(STEP_APPLY_FAILED, path,
                      f"delta {i} failed at op {exc.position}: {exc.cause.message}",
                      delta_index=i)
            break
    return out.report()


def validate_document(data: bytes | str | dict) -> tuple[Trace | None, ValidationReport]:
    """Parse + validate in one step; diagnostics from both stages merge."""
    result = parse_trace(data)
    if result.trace is None:
        return None, ValidationReport(valid=False, diagnostics=result.diagnostics)
    report = validate_trace(result.trace)
    merged = result.diagnostics + report.diagnostics
    return result.trace, ValidationReport(valid=not any(d.severity == ERROR for d in merged),
                                          diagnostics=merged)


def advance_state(state: VisualState, delta: Delta) -> VisualState:
    """One delta boundary: drop one-frame overlays, move the highlight,
    then fold the delta's operation word. May raise WordApplyError."""
    state = core.clear_transients(state)
    state = replace(state, highlight=frozenset(delta.highlight))
    return core.apply_word(state, core.flatten_delta(delta))


def replay_trace(trace: Trace) -> list[VisualState]:
    """States at every delta boundary: [s0, s1, ..., sn].

    Replay assumes a validated trace; on a partial-transformer failure it
    raises :class:`TraceReplayError` carrying the delta index and position.
    """
    states = [trace.initial_state]
    state = trace.initial_state
    for i, delta in enumerate(trace.deltas):
        try:
            state = advance_state(state, delta)
        except WordApplyError as exc:
            path = _word_position_path(i, delta.groups, exc.position)
            raise TraceReplayError(i, exc.position, exc.cause, path) from exc
        states.append(state)
    return states
