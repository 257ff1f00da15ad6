"""State transformers: applying operations and words to visual states.

Each op code denotes a partial transformer. ``apply_operation`` returns a
fresh state or raises an :class:`OperationError`; it never mutates its
input. ``apply_word`` folds a word left-to-right and reports the position
of the first failing op, which makes the monoid action law checkable on
the failure side as well: a word fails at position k exactly where its
split halves fail.
"""

from __future__ import annotations

from dataclasses import replace

from ..errors import (DuplicateId, IndexOutOfRange, OperationError, StructuralViolation,
                      TargetNotFound, ViewKindMismatch, WordApplyError)
from . import ops
from .state import (Anchor, ArrayView, AuxEntry, AuxView, BucketEntry, CellRef,
                    Comment, Dependency, GraphEdge, GraphNode, GraphView,
                    HashtableView, IDLE_STYLE_KEY, TableCell, TableView, TreeNode,
                    TreeView, VisualState)


def apply_word(state: VisualState, word: ops.OperationWord) -> VisualState:
    """Left-to-right fold; applying the empty word is the identity."""
    current = state
    for k, op in enumerate(word):
        try:
            current = apply_operation(current, op)
        except OperationError as exc:
            raise WordApplyError(k, exc) from exc
    return current


def apply_operation(state: VisualState, op: ops.Operation) -> VisualState:
    handler = _HANDLERS.get(op.op)
    if handler is None:
        raise TargetNotFound(f"unknown op code {op.op!r}")
    return handler(state, op.params)


def _array(state: VisualState, op_name: str) -> ArrayView:
    view = state.main_view
    if not isinstance(view, ArrayView):
        raise ViewKindMismatch(f"{op_name} requires an array main view, found {view.kind}")
    return view


def _graph(state: VisualState, op_name: str) -> GraphView:
    view = state.main_view
    if not isinstance(view, GraphView):
        raise ViewKindMismatch(f"{op_name} requires a graph main view, found {view.kind}")
    return view


def _tree(state: VisualState, op_name: str) -> TreeView:
    view = state.main_view
    if not isinstance(view, TreeView):
        raise ViewKindMismatch(f"{op_name} requires a tree main view, found {view.kind}")
    return view


def _hashtable(state: VisualState, op_name: str) -> HashtableView:
    view = state.main_view
    if not isinstance(view, HashtableView):
        raise ViewKindMismatch(f"{op_name} requires a hashtable main view, found {view.kind}")
    return view


def _table(state: VisualState, op_name: str) -> TableView:
    view = state.main_view
    if not isinstance(view, TableView):
        raise ViewKindMismatch(f"{op_name} requires a table main view, found {view.kind}")
    return view


def _check_index(index: int, n: int, what: str = "index") -> None:
    if not (0 <= index < n):
        raise IndexOutOfRange(f"{what} {index} outside 0..{n - 1}")


# --- array ------------------------------------------------------------------

def _update_style(state: VisualState, p: dict) -> VisualState:
    view = _array(state, ops.UPDATE_STYLE)
    elements = list(view.elements)
    for index in p["indices"]:
        _check_index(index, len(elements))
        elements[index] = replace(elements[index], style_key=p["styleKey"])
    return replace(state, main_view=replace(view, elements=tuple(elements)))


def _move_elements(state: VisualState, p: dict) -> VisualState:
    """Relocate values simultaneously: new[to] = old[from] for every pair.

    Slots not targeted by any pair keep their values; style keys stay with
    the slots. A swap is the pair list [{from:i,to:j},{from:j,to:i}].
    """
    view = _array(state, ops.MOVE_ELEMENTS)
    n = len(view.elements)
    for pair in p["pairs"]:
        _check_index(pair["from"], n, "source index")
        _check_index(pair["to"], n, "target index")
    values = [el.value for el in view.elements]
    for pair in p["pairs"]:
        values[pair["to"]] = view.elements[pair["from"]].value
    elements = tuple(replace(el, value=values[i]) for i, el in enumerate(view.elements))
    return replace(state, main_view=replace(view, elements=elements))


def _shift_elements(state: VisualState, p: dict) -> VisualState:
    """Translate the inclusive block [start, end] by offset; vacated slots
    become null."""
    view = _array(state, ops.SHIFT_ELEMENTS)
    n = len(view.elements)
    start, end, offset = p["range"]["start"], p["range"]["end"], p["offset"]
    if start > end:
        raise StructuralViolation(f"empty shift range {start}..{end}")
    _check_index(start, n, "range start")
    _check_index(end, n, "range end")
    _check_index(start + offset, n, "shifted start")
    _check_index(end + offset, n, "shifted end")
    values = [el.value for el in view.elements]
    block = values[start:end + 1]
    for i in range(start, end + 1):
        values[i] = None
    values[start + offset:end + offset + 1] = block
    elements = tuple(replace(el, value=values[i]) for i, el in enumerate(view.elements))
    return replace(state, main_view=replace(view, elements=elements))


def _update_values(state: VisualState, p: dict) -> VisualState:
    view = _array(state, ops.UPDATE_VALUES)
    elements = list(view.elements)
    for a in p["assignments"]:
        _check_index(a["index"], len(elements))
        elements[a["index"]] = replace(elements[a["index"]], value=a["value"])
    return replace(state, main_view=replace(view, elements=tuple(elements)))


def _set_pointer(state: VisualState, p: dict) -> VisualState:
    view = _array(state, ops.SET_POINTER)
    index = p["index"]
    if index is not None:
        _check_index(index, len(view.elements), f"pointer {p['name']!r} target")
    pointers = dict(view.pointers)
    pointers[p["name"]] = index
    return replace(state, main_view=replace(view, pointers=pointers))


def _clear_pointer(state: VisualState, p: dict) -> VisualState:
    view = _array(state, ops.CLEAR_POINTER)
    if p["name"] not in view.pointers:
        raise TargetNotFound(f"no pointer named {p['name']!r}")
    pointers = dict(view.pointers)
    del pointers[p["name"]]
    return replace(state, main_view=replace(view, pointers=pointers))


# --- graph (node ops also cover trees) --------------------------------------

def _update_node_style(state: VisualState, p: dict) -> VisualState:
    view = state.main_view
    if isinstance(view, GraphView):
        by_id = {n.id: n for n in view.nodes}
        for node_id in p["ids"]:
            if node_id not in by_id:
                raise TargetNotFound(f"no node {node_id!r}")
        targets = set(p["ids"])
        nodes = tuple(replace(n, style_key=p["styleKey"]) if n.id in targets else n
                      for n in view.nodes)
        return replace(state, main_view=replace(view, nodes=nodes))
    if isinstance(view, TreeView):
        known = view.node_ids()
        for node_id in p["ids"]:
            if node_id not in known:
                raise TargetNotFound(f"no node {node_id!r}")
        targets = set(p["ids"])
        nodes = tuple(replace(n, style_key=p["styleKey"]) if n.id in targets else n
                      for n in view.nodes)
        return replace(state, main_view=replace(view, nodes=nodes))
    raise ViewKindMismatch(f"updateNodeStyle requires a graph or tree main view, found {view.kind}")


def _update_node_properties(state: VisualState, p: dict) -> VisualState:
    view = _graph(state, ops.UPDATE_NODE_PROPERTIES)
    nodes = list(view.nodes)
    for i, node in enumerate(nodes):
        if node.id == p["id"]:
            merged = dict(node.properties)
            merged.update(p["properties"])
            nodes[i] = replace(node, properties=merged)
            return replace(state, main_view=replace(view, nodes=tuple(nodes)))
    raise TargetNotFound(f"no node {p['id']!r}")


def _edge_matches(edge: GraphEdge, src: str, dst: str) -> bool:
    if edge.src == src and edge.dst == dst:
        return True
    return not edge.directed and edge.src == dst and edge.dst == src


def _update_edge_style(state: VisualState, p: dict) -> VisualState:
    view = _graph(state, ops.UPDATE_EDGE_STYLE)
    edges = list(view.edges)
    for ref in p["edges"]:
        hit = False
        for i, edge in enumerate(edges):
            if _edge_matches(edge, ref["from"], ref["to"]):
                edges[i] = replace(edge, style_key=p["styleKey"])
                hit = True
        if not hit:
            raise TargetNotFound(f"no edge {ref['from']!r} -> {ref['to']!r}")
    return replace(state, main_view=replace(view, edges=tuple(edges)))


def _add_node(state: VisualState, p: dict) -> VisualState:
    view = _graph(state, ops.ADD_NODE)
    record = p["node"]
    if record["id"] in view.node_ids():
        raise DuplicateId(f"node {record['id']!r} already exists")
    node = GraphNode(id=record["id"], label=record["label"],
                     style_key=record.get("styleKey", IDLE_STYLE_KEY),
                     properties=dict(record.get("properties", {})))
    return replace(state, main_view=replace(view, nodes=view.nodes + (node,)))


def _remove_node(state: VisualState, p: dict) -> VisualState:
    """Removes the node and every incident edge, keeping endpoints sound."""
    view = _graph(state, ops.REMOVE_NODE)
    node_id = p["id"]
    if node_id not in view.node_ids():
        raise TargetNotFound(f"no node {node_id!r}")
    nodes = tuple(n for n in view.nodes if n.id != node_id)
    edges = tuple(e for e in view.edges if node_id not in (e.src, e.dst))
    return replace(state, main_view=replace(view, nodes=nodes, edges=edges))


# --- tree --------------------------------------------------------------------

def _trim_slots(slots: tuple[str | None, ...]) -> tuple[str | None, ...]:
    out = list(slots)
    while out and out[-1] is None:
        out.pop()
    return tuple(out)


def _place_child(slots: tuple[str | None, ...], child: str, position: int) -> tuple[str | None, ...]:
    """Fill the slot at ``position`` if empty, pad with empty slots beyond
    the end, and insert (shifting right) when the slot is occupied."""
    if position < 0:
        raise IndexOutOfRange(f"position {position} is negative")
    out = list(slots)
    if position >= len(out):
        out.extend([None] * (position - len(out)))
        out.append(child)
    elif out[position] is None:
        out[position] = child
    else:
        out.insert(position, child)
    return tuple(out)


def _subtree_ids(view: TreeView, root: str) -> set[str]:
    seen = {root}
    stack = [root]
    while stack:
        node = stack.pop()
        for child in view.children.get(node, ()):
            if child is not None and child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


def _add_child(state: VisualState, p: dict) -> VisualState:
    view = _tree(state, ops.ADD_CHILD)
    record = p["node"]
    if p["parent"] not in view.node_ids():
        raise TargetNotFound(f"no parent node {p['parent']!r}")
    if record["id"] in view.node_ids():
        raise DuplicateId(f"node {record['id']!r} already exists")
    node = TreeNode(id=record["id"], label=record["label"],
                    style_key=record.get("styleKey", IDLE_STYLE_KEY))
    children = dict(view.children)
    children[p["parent"]] = _place_child(children.get(p["parent"], ()), node.id, p["position"])
    return replace(state, main_view=replace(view, nodes=view.nodes + (node,), children=children))


def _detach(children: dict[str, tuple[str | None, ...]], child: str) -> dict:
    out = dict(children)
    for parent, slots in children.items():
        if child in slots:
            slots = tuple(None if s == child else s for s in slots)
            slots = _trim_slots(slots)
            if slots:
                out[parent] = slots
            else:
                out.pop(parent, None)
    return out


def _reparent(state: VisualState, p: dict) -> VisualState:
    view = _tree(state, ops.REPARENT)
    node_id, new_parent = p["id"], p["newParent"]
    ids = view.node_ids()
    if node_id not in ids:
        raise TargetNotFound(f"no node {node_id!r}")
    if new_parent not in ids:
        raise TargetNotFound(f"no node {new_parent!r}")
    if new_parent in _subtree_ids(view, node_id):
        raise StructuralViolation(f"reparenting {node_id!r} under its own subtree")
    if node_id not in view.parent_map():
        raise StructuralViolation(f"cannot reparent the root {node_id!r}")
    children = _detach(view.children, node_id)
    children[new_parent] = _place_child(children.get(new_parent, ()), node_id, p["position"])
    return replace(state, main_view=replace(view, children=children))


def _slot(view: TreeView, node: str, position: int) -> str | None:
    slots = view.children.get(node, ())
    return slots[position] if position < len(slots) else None


def _rotate(state: VisualState, p: dict) -> VisualState:
    """Standard binary rotation; slot 0 is the left child, slot 1 the right."""
    view = _tree(state, ops.ROTATE)
    pivot, direction = p["pivot"], p["direction"]
    if pivot not in view.node_ids():
        raise TargetNotFound(f"no node {pivot!r}")
    child_slot = 1 if direction == "left" else 0
    riser = _slot(view, pivot, child_slot)
    if riser is None:
        side = "right" if direction == "left" else "left"
        raise StructuralViolation(f"rotate {direction} at {pivot!r} needs a {side} child")
    # The riser's opposite-side child moves to the pivot's vacated slot.
    moved = _slot(view, riser, 1 - child_slot)

    children = dict(view.children)

    def set_slot(parent: str, position: int, value: str | None) -> None:
        slots = list(children.get(parent, ()))
        while len(slots) <= position:
            slots.append(None)
        slots[position] = value
        trimmed = _trim_slots(tuple(slots))
        if trimmed:
            children[parent] = trimmed
        else:
            children.pop(parent, None)

    parents = view.parent_map()
    above = parents.get(pivot)
    if above is not None:
        slots = list(children[above])
        children[above] = tuple(riser if s == pivot else s for s in slots)
    set_slot(pivot, child_slot, moved)
    set_slot(riser, 1 - child_slot, pivot)
    return replace(state, main_view=replace(view, children=children))


# --- hashtable ----------------------------------------------------------------

def _insert_into_bucket(state: VisualState, p: dict) -> VisualState:
    view = _hashtable(state, ops.INSERT_INTO_BUCKET)
    _check_index(p["bucket"], view.capacity, "bucket")
    if p["key"] in view.keys():
        raise DuplicateId(f"key {p['key']!r} already present")
    buckets = list(view.buckets)
    buckets[p["bucket"]] = buckets[p["bucket"]] + (BucketEntry(p["key"], p["value"]),)
    return replace(state, main_view=replace(view, buckets=tuple(buckets)))


def _rehash(state: VisualState, p: dict) -> VisualState:
    """The placement list is authoritative: the tracker computed the new
    bucket of every key, so the transformer stays hash-function-free."""
    view = _hashtable(state, ops.REHASH)
    capacity = p["newCapacity"]
    if capacity < 1:
        raise StructuralViolation(f"new capacity {capacity} must be >= 1")
    entries = {e.key: e for b in view.buckets for e in b}
    placed: set[str | int] = set()
    buckets: list[tuple[BucketEntry, ...]] = [() for _ in range(capacity)]
    for item in p["placement"]:
        key, bucket = item["key"], item["bucket"]
        if key not in entries:
            raise TargetNotFound(f"placement names unknown key {key!r}")
        if key in placed:
            raise DuplicateId(f"placement lists key {key!r} twice")
        _check_index(bucket, capacity, "bucket")
        placed.add(key)
        buckets[bucket] = buckets[bucket] + (entries[key],)
    missing = set(entries) - placed
    if missing:
        names = ", ".join(repr(k) for k in sorted(missing, key=repr))
        raise StructuralViolation(f"placement omits keys: {names}")
    return replace(state, main_view=replace(view, buckets=tuple(buckets)))


def _highlight_collision(state: VisualState, p: dict) -> VisualState:
    view = _hashtable(state, ops.HIGHLIGHT_COLLISION)
    _check_index(p["bucket"], view.capacity, "bucket")
    buckets = list(view.buckets)
    buckets[p["bucket"]] = tuple(replace(e, style_key=p["styleKey"])
                                 for e in buckets[p["bucket"]])
    return replace(state, main_view=replace(view, buckets=tuple(buckets)))


# --- table ---------------------------------------------------------------------

def _cell_in_range(view: TableView, row: int, col: int) -> None:
    if not view.in_range(row, col):
        raise IndexOutOfRange(f"cell ({row},{col}) outside {view.rows}x{view.cols} grid")


def _set_cell(view: TableView, row: int, col: int, cell: TableCell) -> TableView:
    cells = list(view.cells)
    r = list(cells[row])
    r[col] = cell
    cells[row] = tuple(r)
    return replace(view, cells=tuple(cells))


def _update_table_cell(state: VisualState, p: dict) -> VisualState:
    view = _table(state, ops.UPDATE_TABLE_CELL)
    _cell_in_range(view, p["row"], p["col"])
    cell = replace(view.cells[p["row"]][p["col"]], value=p["value"])
    return replace(state, main_view=_set_cell(view, p["row"], p["col"], cell))


def _highlight_table_cell(state: VisualState, p: dict) -> VisualState:
    view = _table(state, ops.HIGHLIGHT_TABLE_CELL)
    for ref in p["cells"]:
        _cell_in_range(view, ref["row"], ref["col"])
        cell = replace(view.cells[ref["row"]][ref["col"]], style_key=p["styleKey"])
        view = _set_cell(view, ref["row"], ref["col"], cell)
    return replace(state, main_view=view)


def _show_dependency(state: VisualState, p: dict) -> VisualState:
    view = _table(state, ops.SHOW_DEPENDENCY)
    _cell_in_range(view, p["from"]["row"], p["from"]["col"])
    _cell_in_range(view, p["to"]["row"], p["to"]["col"])
    dep = Dependency(CellRef(p["from"]["row"], p["from"]["col"]),
                     CellRef(p["to"]["row"], p["to"]["col"]))
    return replace(state, main_view=replace(view, dependencies=view.dependencies + (dep,)))


# --- generic ----------------------------------------------------------------------

def _resolve_anchor(state: VisualState, raw: dict) -> Anchor:
    view_name = raw["view"]
    element = raw.get("element")
    if isinstance(element, dict):
        element = CellRef(element["row"], element["col"])
    if view_name != "main" and state.aux(view_name) is None:
        raise TargetNotFound(f"anchor names unknown view {view_name!r}")
    if element is not None and view_name == "main":
        _check_anchor_element(state, element)
    return Anchor(view=view_name, element=element)


def _check_anchor_element(state: VisualState, element) -> None:
    view = state.main_view
    if isinstance(view, ArrayView):
        if not isinstance(element, int) or not (0 <= element < len(view.elements)):
            raise TargetNotFound(f"anchor element {element!r} not in array")
    elif isinstance(view, (GraphView, TreeView)):
        if element not in view.node_ids():
            raise TargetNotFound(f"anchor element {element!r} not a node")
    elif isinstance(view, HashtableView):
        if not isinstance(element, int) or not (0 <= element < view.capacity):
            raise TargetNotFound(f"anchor element {element!r} not a bucket")
    elif isinstance(view, TableView):
        if not isinstance(element, CellRef) or not view.in_range(element.row, element.col):
            raise TargetNotFound(f"anchor element {element!r} not a cell")


def _show_comment(state: VisualState, p: dict) -> VisualState:
    if any(c.id == p["id"] for c in state.comments):
        raise DuplicateId(f"comment {p['id']!r} already shown")
    anchor = _resolve_anchor(state, p["anchor"])
    comment = Comment(id=p["id"], text=p["text"], anchor=anchor)
    return replace(state, comments=state.comments + (comment,))


def _hide_comment(state: VisualState, p: dict) -> VisualState:
    if not any(c.id == p["id"] for c in state.comments):
        raise TargetNotFound(f"no comment {p['id']!r}")
    return replace(state, comments=tuple(c for c in state.comments if c.id != p["id"]))


def _normalize_entry(raw) -> AuxEntry:
    if isinstance(raw, dict):
        return AuxEntry(value=raw.get("value"), key=raw.get("key"),
                        style_key=raw.get("styleKey", IDLE_STYLE_KEY))
    return AuxEntry(value=raw)


def _replace_aux(state: VisualState, name: str, new_view: AuxView) -> VisualState:
    views = tuple(new_view if v.name == name else v for v in state.auxiliary_views)
    return replace(state, auxiliary_views=views)


def _append_to_list(state: VisualState, p: dict) -> VisualState:
    aux = state.aux(p["view"])
    if aux is None:
        raise TargetNotFound(f"no auxiliary view {p['view']!r}")
    entry = _normalize_entry(p["entry"])
    if aux.kind == "map" and entry.key is None:
        raise StructuralViolation(f"map view {p['view']!r} needs entries with keys")
    return _replace_aux(state, aux.name, replace(aux, entries=aux.entries + (entry,)))


def _pop_from_list(state: VisualState, p: dict) -> VisualState:
    aux = state.aux(p["view"])
    if aux is None:
        raise TargetNotFound(f"no auxiliary view {p['view']!r}")
    if not aux.entries:
        raise IndexOutOfRange(f"auxiliary view {p['view']!r} is empty")
    entries = aux.entries[1:] if p["end"] == "front" else aux.entries[:-1]
    return _replace_aux(state, aux.name, replace(aux, entries=entries))


_HANDLERS = {
    ops.UPDATE_STYLE: _update_style,
    ops.MOVE_ELEMENTS: _move_elements,
    ops.SHIFT_ELEMENTS: _shift_elements,
    ops.UPDATE_VALUES: _update_values,
    ops.SET_POINTER: _set_pointer,
    ops.CLEAR_POINTER: _clear_pointer,
    ops.UPDATE_NODE_STYLE: _update_node_style,
    ops.UPDATE_NODE_PROPERTIES: _update_node_properties,
    ops.UPDATE_EDGE_STYLE: _update_edge_style,
    ops.ADD_NODE: _add_node,
    ops.REMOVE_NODE: _remove_node,
    ops.ADD_CHILD: _add_child,
    ops.REPARENT: _reparent,
    ops.ROTATE: _rotate,
    ops.INSERT_INTO_BUCKET: _insert_into_bucket,
    ops.REHASH: _rehash,
    ops.HIGHLIGHT_COLLISION: _highlight_collision,
    ops.UPDATE_TABLE_CELL: _update_table_cell,
    ops.HIGHLIGHT_TABLE_CELL: _highlight_table_cell,
    ops.SHOW_DEPENDENCY: _show_dependency,
    ops.SHOW_COMMENT: _show_comment,
    ops.HIDE_COMMENT: _hide_comment,
    ops.APPEND_TO_LIST: _append_to_list,
    ops.POP_FROM_LIST: _pop_from_list,
}

assert set(_HANDLERS) == set(ops.ALL_OPS)
