"""Typed visual states, the primitive op catalogue, and the word action."""

from .apply import apply_operation, apply_word
from .ops import (ADD_CHILD, ADD_NODE, ALL_OPS, APPEND_TO_LIST, ARRAY_OPS,
                  CLEAR_POINTER, Delta, EMPTY_WORD, GENERIC_OPS, GRAPH_OPS,
                  HASHTABLE_OPS, HIDE_COMMENT, HIGHLIGHT_COLLISION,
                  HIGHLIGHT_TABLE_CELL, INSERT_INTO_BUCKET, MOVE_ELEMENTS, Operation,
                  OperationWord, PARAM_SPECS, POP_FROM_LIST, REHASH, REMOVE_NODE,
                  REPARENT, ROTATE, SET_POINTER, SHIFT_ELEMENTS, SHOW_COMMENT,
                  SHOW_DEPENDENCY, TABLE_OPS, TREE_OPS, UPDATE_EDGE_STYLE,
                  UPDATE_NODE_PROPERTIES, UPDATE_NODE_STYLE, UPDATE_STYLE,
                  UPDATE_TABLE_CELL, UPDATE_VALUES, check_params, concat_words,
                  flatten_delta, flatten_deltas, is_known_op)
from .state import (ARRAY, Anchor, ArrayElement, ArrayView, AuxEntry, AuxView,
                    BucketEntry, CellRef, Comment, DEFAULT_IDLE_STYLE, Dependency,
                    GRAPH, GraphEdge, GraphNode, GraphView, HASHTABLE, HashtableView,
                    IDLE_STYLE_KEY, MainView, Scalar, StyleDef, TABLE, TREE, TableCell,
                    TableView, TreeNode, TreeView, VIEW_KINDS, VisualState, array_view,
                    clear_transients, with_idle_style)

__all__ = [
    "apply_operation", "apply_word",
    "ALL_OPS", "ARRAY_OPS", "GRAPH_OPS", "TREE_OPS", "HASHTABLE_OPS", "TABLE_OPS",
    "GENERIC_OPS", "PARAM_SPECS", "Operation", "OperationWord", "Delta", "EMPTY_WORD",
    "check_params", "concat_words", "flatten_delta", "flatten_deltas", "is_known_op",
    "UPDATE_STYLE", "MOVE_ELEMENTS", "SHIFT_ELEMENTS", "UPDATE_VALUES", "SET_POINTER",
    "CLEAR_POINTER", "UPDATE_NODE_STYLE", "UPDATE_NODE_PROPERTIES", "UPDATE_EDGE_STYLE",
    "ADD_NODE", "REMOVE_NODE", "ADD_CHILD", "REPARENT", "ROTATE", "INSERT_INTO_BUCKET",
    "REHASH", "HIGHLIGHT_COLLISION", "UPDATE_TABLE_CELL", "HIGHLIGHT_TABLE_CELL",
    "SHOW_DEPENDENCY", "SHOW_COMMENT", "HIDE_COMMENT", "APPEND_TO_LIST", "POP_FROM_LIST",
    "ARRAY", "GRAPH", "TREE", "HASHTABLE", "TABLE", "VIEW_KINDS",
    "Anchor", "ArrayElement", "ArrayView", "AuxEntry", "AuxView", "BucketEntry",
    "CellRef", "Comment", "Dependency", "GraphEdge", "GraphNode", "GraphView",
    "HashtableView", "MainView", "Scalar", "StyleDef", "TableCell", "TableView",
    "TreeNode", "TreeView", "VisualState", "array_view", "clear_transients",
    "with_idle_style", "DEFAULT_IDLE_STYLE", "IDLE_STYLE_KEY",
]
