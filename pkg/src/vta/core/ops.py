"""The primitive operation catalogue.

The op set is a closed enum of 24 codes: the per-view operations grouped
below plus the two array pointer ops. Each code carries a normative
parameter schema; ``check_params`` verifies a raw params record against it
(exact fields, no extras) and returns path-addressed problems.

Finite sequences of operations form the free monoid under concatenation
(identity: the empty word); states are acted on by folding, see
:mod:`vta.core.apply`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .state import Scalar

# Array ops.
UPDATE_STYLE = "updateStyle"
MOVE_ELEMENTS = "moveElements"
SHIFT_ELEMENTS = "shiftElements"
UPDATE_VALUES = "updateValues"
SET_POINTER = "setPointer"
CLEAR_POINTER = "clearPointer"
# Graph ops (node style/property ops also apply to tree views).
UPDATE_NODE_STYLE = "updateNodeStyle"
UPDATE_NODE_PROPERTIES = "updateNodeProperties"
UPDATE_EDGE_STYLE = "updateEdgeStyle"
ADD_NODE = "addNode"
REMOVE_NODE = "removeNode"
# Tree ops.
ADD_CHILD = "addChild"
REPARENT = "reparent"
ROTATE = "rotate"
# Hashtable ops.
INSERT_INTO_BUCKET = "insertIntoBucket"
REHASH = "rehash"
HIGHLIGHT_COLLISION = "highlightCollision"
# Table ops.
UPDATE_TABLE_CELL = "updateTableCell"
HIGHLIGHT_TABLE_CELL = "highlightTableCell"
SHOW_DEPENDENCY = "showDependency"
# Generic ops.
SHOW_COMMENT = "showComment"
HIDE_COMMENT = "hideComment"
APPEND_TO_LIST = "appendToList"
POP_FROM_LIST = "popFromList"

ARRAY_OPS = (UPDATE_STYLE, MOVE_ELEMENTS, SHIFT_ELEMENTS, UPDATE_VALUES,
             SET_POINTER, CLEAR_POINTER)
GRAPH_OPS = (UPDATE_NODE_STYLE, UPDATE_NODE_PROPERTIES, UPDATE_EDGE_STYLE,
             ADD_NODE, REMOVE_NODE)
TREE_OPS = (ADD_CHILD, REPARENT, ROTATE)
HASHTABLE_OPS = (INSERT_INTO_BUCKET, REHASH, HIGHLIGHT_COLLISION)
TABLE_OPS = (UPDATE_TABLE_CELL, HIGHLIGHT_TABLE_CELL, SHOW_DEPENDENCY)
GENERIC_OPS = (SHOW_COMMENT, HIDE_COMMENT, APPEND_TO_LIST, POP_FROM_LIST)

ALL_OPS = ARRAY_OPS + GRAPH_OPS + TREE_OPS + HASHTABLE_OPS + TABLE_OPS + GENERIC_OPS


@dataclass(frozen=True)
class Operation:
    op: str
    params: dict = field(default_factory=dict)


# A word is a finite operation sequence; () is the identity element.
OperationWord = tuple[Operation, ...]
EMPTY_WORD: OperationWord = ()

# A group is a batch of visually simultaneous ops inside one delta.
OpGroup = tuple[Operation, ...]


@dataclass(frozen=True)
class Delta:
    """One trace step: a described, highlighted batch of op groups."""

    description: str = ""
    highlight: tuple[int, ...] = ()
    groups: tuple[OpGroup, ...] = ()


def concat_words(u: OperationWord, v: OperationWord) -> OperationWord:
    """Monoid product: sequence concatenation."""
    return tuple(u) + tuple(v)


def flatten_delta(delta: Delta) -> OperationWord:
    return tuple(op for group in delta.groups for op in group)


def flatten_deltas(deltas) -> OperationWord:
    """Concatenate every delta's op groups into one word, in order."""
    return tuple(op for delta in deltas for group in delta.groups for op in group)


# ---------------------------------------------------------------------------
# Parameter schemas
# ---------------------------------------------------------------------------

def _is_scalar(v) -> bool:
    return v is None or isinstance(v, (int, float, str)) and not isinstance(v, bool)


def _check_int(v, path, out):
    if not isinstance(v, int) or isinstance(v, bool):
        out.append((path, "expected an integer"))


def _check_str(v, path, out):
    if not isinstance(v, str):
        out.append((path, "expected a string"))


def _check_scalar(v, path, out):
    if not _is_scalar(v):
        out.append((path, "expected a number, string, or null"))


def _check_key(v, path, out):
    if not isinstance(v, (str, int)) or isinstance(v, bool):
        out.append((path, "expected a string or integer key"))


def _check_int_or_null(v, path, out):
    if v is not None:
        _check_int(v, path, out)


def _check_bool(v, path, out):
    if not isinstance(v, bool):
        out.append((path, "expected a boolean"))


def _check_number(v, path, out):
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        out.append((path, "expected a number"))


def _check_number_or_null(v, path, out):
    if v is not None:
        _check_number(v, path, out)


def _enum(*allowed):
    def check(v, path, out):
        if v not in allowed:
            out.append((path, f"expected one of {', '.join(map(repr, allowed))}"))
    return check


def _list_of(item_check):
    def check(v, path, out):
        if not isinstance(v, list):
            out.append((path, "expected an array"))
            return
        for i, item in enumerate(v):
            item_check(item, f"{path}/{i}", out)
    return check


def _record(fields: dict, optional: dict | None = None):
    opts = optional or {}

    def check(v, path, out):
        if not isinstance(v, dict):
            out.append((path, "expected an object"))
            return
        for name, item_check in fields.items():
            if name not in v:
                out.append((path, f"missing field {name!r}"))
            else:
                item_check(v[name], f"{path}/{name}", out)
        for name, item_check in opts.items():
            if name in v:
                item_check(v[name], f"{path}/{name}", out)
        extras = set(v) - set(fields) - set(opts)
        for name in sorted(extras):
            out.append((f"{path}/{name}", f"unexpected field {name!r}"))
    return check


def _properties_map(v, path, out):
    if not isinstance(v, dict):
        out.append((path, "expected an object"))
        return
    for name, value in v.items():
        if not isinstance(name, str):
            out.append((path, f"property name {name!r} is not a string"))
        _check_scalar(value, f"{path}/{name}", out)


_cell_ref = _record({"row": _check_int, "col": _check_int})

_graph_node_record = _record(
    {"id": _check_str, "label": _check_str},
    optional={"styleKey": _check_str, "properties": _properties_map},
)

_tree_node_record = _record(
    {"id": _check_str, "label": _check_str},
    optional={"styleKey": _check_str},
)


def _check_anchor(v, path, out):
    if not isinstance(v, dict):
        out.append((path, "expected an object"))
        return
    if "view" not in v:
        out.append((path, "missing field 'view'"))
    elif not isinstance(v["view"], str):
        out.append((f"{path}/view", "expected a string"))
    if "element" in v:
        el = v["element"]
        if el is None or isinstance(el, str) or (isinstance(el, int) and not isinstance(el, bool)):
            pass
        elif isinstance(el, dict):
            _cell_ref(el, f"{path}/element", out)
        else:
            out.append((f"{path}/element", "expected an id, index, cell reference, or null"))
    extras = set(v) - {"view", "element"}
    for name in sorted(extras):
        out.append((f"{path}/{name}", f"unexpected field {name!r}"))


def _check_entry(v, path, out):
    """appendToList entry: a bare scalar or a {key?, value, styleKey?} record."""
    if _is_scalar(v):
        return
    _record({"value": _check_scalar},
            optional={"key": _check_key, "styleKey": _check_str})(v, path, out)


# field name -> checker, in canonical serialization order
PARAM_SPECS: dict[str, dict] = {
    UPDATE_STYLE: {"indices": _list_of(_check_int), "styleKey": _check_str},
    MOVE_ELEMENTS: {"pairs": _list_of(_record({"from": _check_int, "to": _check_int}))},
    SHIFT_ELEMENTS: {"range": _record({"start": _check_int, "end": _check_int}),
                     "offset": _check_int},
    UPDATE_VALUES: {"assignments": _list_of(_record({"index": _check_int,
                                                     "value": _check_scalar}))},
    SET_POINTER: {"name": _check_str, "index": _check_int_or_null},
    CLEAR_POINTER: {"name": _check_str},
    UPDATE_NODE_STYLE: {"ids": _list_of(_check_str), "styleKey": _check_str},
    UPDATE_NODE_PROPERTIES: {"id": _check_str, "properties": _properties_map},
    UPDATE_EDGE_STYLE: {"edges": _list_of(_record({"from": _check_str, "to": _check_str})),
                        "styleKey": _check_str},
    ADD_NODE: {"node": _graph_node_record},
    REMOVE_NODE: {"id": _check_str},
    ADD_CHILD: {"parent": _check_str, "node": _tree_node_record, "position": _check_int},
    REPARENT: {"id": _check_str, "newParent": _check_str, "position": _check_int},
    ROTATE: {"pivot": _check_str, "direction": _enum("left", "right")},
    INSERT_INTO_BUCKET: {"bucket": _check_int, "key": _check_key, "value": _check_scalar},
    REHASH: {"newCapacity": _check_int,
             "placement": _list_of(_record({"key": _check_key, "bucket": _check_int}))},
    HIGHLIGHT_COLLISION: {"bucket": _check_int, "styleKey": _check_str},
    UPDATE_TABLE_CELL: {"row": _check_int, "col": _check_int, "value": _check_scalar},
    HIGHLIGHT_TABLE_CELL: {"cells": _list_of(_cell_ref), "styleKey": _check_str},
    SHOW_DEPENDENCY: {"from": _cell_ref, "to": _cell_ref},
    SHOW_COMMENT: {"id": _check_str, "text": _check_str, "anchor": _check_anchor},
    HIDE_COMMENT: {"id": _check_str},
    APPEND_TO_LIST: {"view": _check_str, "entry": _check_entry},
    POP_FROM_LIST: {"view": _check_str, "end": _enum("front", "back")},
}

assert set(PARAM_SPECS) == set(ALL_OPS)


def is_known_op(op_code: str) -> bool:
    return op_code in PARAM_SPECS


def check_params(op_code: str, params) -> list[tuple[str, str]]:
    """Validate a raw params record; returns (relative path, message) pairs.

    The schema is exact: every declared field is required and extra fields
    are rejected.
    """
    spec = PARAM_SPECS[op_code]
    problems: list[tuple[str, str]] = []
    if not isinstance(params, dict):
        return [("", "params must be an object")]
    for name, checker in spec.items():
        if name not in params:
            problems.append(("", f"missing parameter {name!r}"))
        else:
            checker(params[name], name, problems)
    for name in sorted(set(params) - set(spec)):
        problems.append((str(name), f"unexpected parameter {name!r}"))
    return problems


def style_keys_in_params(op_code: str, params: dict) -> list[str]:
    """Style keys an op references (for unknown-style warnings)."""
    keys = []
    if "styleKey" in PARAM_SPECS.get(op_code, {}):
        value = params.get("styleKey")
        if isinstance(value, str):
            keys.append(value)
    node = params.get("node")
    if isinstance(node, dict) and isinstance(node.get("styleKey"), str):
        keys.append(node["styleKey"])
    entry = params.get("entry")
    if isinstance(entry, dict) and isinstance(entry.get("styleKey"), str):
        keys.append(entry["styleKey"])
    return keys
