"""Core algebra: op semantics, partiality, monoid/action laws, purity."""

from __future__ import annotations

import copy
import random

import pytest
from hypothesis import given, settings, strategies as st

from vta import core
from vta.core import Operation
from vta.errors import (DuplicateId, IndexOutOfRange, StructuralViolation, TargetNotFound,
                        ViewKindMismatch, WordApplyError)

from generators import (TEST_STYLES, apply_outcome, rand_array_state, rand_graph_state,
                        rand_word)


def array_state(values, **kwargs):
    return core.VisualState(main_view=core.array_view(values),
                            styles=dict(TEST_STYLES), **kwargs)


def graph_state(ids, edges=(), **kwargs):
    return core.VisualState(
        main_view=core.GraphView(
            nodes=tuple(core.GraphNode(id=i, label=i) for i in ids),
            edges=tuple(core.GraphEdge(src=a, dst=b, weight=w, directed=d)
                        for a, b, w, d in edges)),
        styles=dict(TEST_STYLES), **kwargs)


class TestArrayOps:
    def test_update_style(self):
        s = array_state([1, 2, 3])
        out = core.apply_operation(s, Operation(core.UPDATE_STYLE,
                                                {"indices": [0, 2], "styleKey": "done"}))
        assert [e.style_key for e in out.main_view.elements] == ["done", "idle", "done"]

    def test_update_style_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            core.apply_operation(array_state([1]), Operation(
                core.UPDATE_STYLE, {"indices": [1], "styleKey": "done"}))

    def test_move_elements_swap(self):
        s = array_state([10, 20, 30])
        out = core.apply_operation(s, Operation(core.MOVE_ELEMENTS, {
            "pairs": [{"from": 0, "to": 2}, {"from": 2, "to": 0}]}))
        assert [e.value for e in out.main_view.elements] == [30, 20, 10]

    def test_move_elements_copy_semantics(self):
        # A one-directional move duplicates the source value; styles stay put.
        s = array_state([10, 20])
        out = core.apply_operation(s, Operation(core.MOVE_ELEMENTS,
                                                {"pairs": [{"from": 0, "to": 1}]}))
        assert [e.value for e in out.main_view.elements] == [10, 10]

    def test_shift_fills_with_null(self):
        s = array_state([1, 2, 3, 4])
        out = core.apply_operation(s, Operation(core.SHIFT_ELEMENTS, {
            "range": {"start": 0, "end": 1}, "offset": 2}))
        assert [e.value for e in out.main_view.elements] == [None, None, 1, 2]

    def test_shift_out_of_bounds(self):
        with pytest.raises(IndexOutOfRange):
            core.apply_operation(array_state([1, 2]), Operation(core.SHIFT_ELEMENTS, {
                "range": {"start": 0, "end": 1}, "offset": 1}))

    def test_pointers(self):
        s = array_state([1, 2])
        s = core.apply_operation(s, Operation(core.SET_POINTER, {"name": "p", "index": 1}))
        assert s.main_view.pointers == {"p": 1}
        s = core.apply_operation(s, Operation(core.SET_POINTER, {"name": "p", "index": None}))
        assert s.main_view.pointers == {"p": None}
        s = core.apply_operation(s, Operation(core.CLEAR_POINTER, {"name": "p"}))
        assert s.main_view.pointers == {}
        with pytest.raises(TargetNotFound):
            core.apply_operation(s, Operation(core.CLEAR_POINTER, {"name": "p"}))

    def test_view_kind_mismatch(self):
        with pytest.raises(ViewKindMismatch):
            core.apply_operation(graph_state(["A"]), Operation(
                core.UPDATE_STYLE, {"indices": [0], "styleKey": "done"}))


class TestGraphOps:
    def test_update_node_style_on_f1_state(self):
        # Mirrors the first delta of the bundled shortest-path document.
        s = graph_state(["A", "B"], edges=[("A", "B", 4, True)])
        out = core.apply_operation(s, Operation(core.UPDATE_NODE_STYLE,
                                                {"ids": ["A"], "styleKey": "current"}))
        styles = {n.id: n.style_key for n in out.main_view.nodes}
        assert styles == {"A": "current", "B": "idle"}
        assert out.main_view.edges == s.main_view.edges

    def test_remove_node_absent(self):
        with pytest.raises(TargetNotFound):
            core.apply_operation(graph_state(["A", "B"]),
                                 Operation(core.REMOVE_NODE, {"id": "Z"}))

    def test_remove_node_drops_incident_edges(self):
        s = graph_state(["A", "B", "C"],
                        edges=[("A", "B", 1, True), ("B", "C", 1, False), ("A", "C", 1, True)])
        out = core.apply_operation(s, Operation(core.REMOVE_NODE, {"id": "B"}))
        assert {n.id for n in out.main_view.nodes} == {"A", "C"}
        assert [(e.src, e.dst) for e in out.main_view.edges] == [("A", "C")]
        assert not out.main_view.check()

    def test_add_node_duplicate(self):
        with pytest.raises(DuplicateId):
            core.apply_operation(graph_state(["A"]), Operation(core.ADD_NODE, {
                "node": {"id": "A", "label": "again"}}))

    def test_undirected_edge_matches_either_orientation(self):
        s = graph_state(["A", "B"], edges=[("A", "B", 1, False)])
        out = core.apply_operation(s, Operation(core.UPDATE_EDGE_STYLE, {
            "edges": [{"from": "B", "to": "A"}], "styleKey": "done"}))
        assert out.main_view.edges[0].style_key == "done"

    def test_properties_merge(self):
        s = graph_state(["A"])
        s = core.apply_operation(s, Operation(core.UPDATE_NODE_PROPERTIES, {
            "id": "A", "properties": {"distance": 3}}))
        s = core.apply_operation(s, Operation(core.UPDATE_NODE_PROPERTIES, {
            "id": "A", "properties": {"seen": 1}}))
        assert s.main_view.nodes[0].properties == {"distance": 3, "seen": 1}


def tree_state(nodes, children):
    return core.VisualState(
        main_view=core.TreeView(
            nodes=tuple(core.TreeNode(id=i, label=i) for i in nodes),
            children={k: tuple(v) for k, v in children.items()}),
        styles=dict(TEST_STYLES))


class TestTreeOps:
    def test_add_child_slots(self):
        s = tree_state(["r"], {})
        s = core.apply_operation(s, Operation(core.ADD_CHILD, {
            "parent": "r", "node": {"id": "b", "label": "b"}, "position": 1}))
        assert s.main_view.children["r"] == (None, "b")
        s = core.apply_operation(s, Operation(core.ADD_CHILD, {
            "parent": "r", "node": {"id": "a", "label": "a"}, "position": 0}))
        assert s.main_view.children["r"] == ("a", "b")

    def test_reparent_cycle_refused(self):
        s = tree_state(["r", "a", "b"], {"r": ["a"], "a": ["b"]})
        with pytest.raises(StructuralViolation):
            core.apply_operation(s, Operation(core.REPARENT, {
                "id": "a", "newParent": "b", "position": 0}))

    def test_rotate_left(self):
        # r(p, R(b, q)) --left--> R(r(p, b), q)
        s = tree_state(["r", "p", "R", "b", "q"], {"r": ["p", "R"], "R": ["b", "q"]})
        out = core.apply_operation(s, Operation(core.ROTATE,
                                                {"pivot": "r", "direction": "left"}))
        view = out.main_view
        assert view.roots() == ["R"]
        assert view.children["R"] == ("r", "q")
        assert view.children["r"] == ("p", "b")
        assert not view.check()

    def test_rotate_right_missing_child(self):
        s = tree_state(["r", "b"], {"r": [None, "b"]})
        with pytest.raises(StructuralViolation):
            core.apply_operation(s, Operation(core.ROTATE,
                                              {"pivot": "r", "direction": "right"}))

    def test_rotate_inverse_round_trip(self):
        s = tree_state(["r", "p", "R", "b", "q"], {"r": ["p", "R"], "R": ["b", "q"]})
        left = core.apply_operation(s, Operation(core.ROTATE,
                                                 {"pivot": "r", "direction": "left"}))
        back = core.apply_operation(left, Operation(core.ROTATE,
                                                    {"pivot": "R", "direction": "right"}))
        assert back.main_view.children == s.main_view.children


def hash_state(buckets):
    view = core.HashtableView(buckets=tuple(
        tuple(core.BucketEntry(k, v) for k, v in bucket) for bucket in buckets))
    return core.VisualState(main_view=view, styles=dict(TEST_STYLES))


class TestHashtableOps:
    def test_insert_and_duplicate(self):
        s = hash_state([[], []])
        s = core.apply_operation(s, Operation(core.INSERT_INTO_BUCKET,
                                              {"bucket": 1, "key": "a", "value": 5}))
        assert s.main_view.buckets[1][0].key == "a"
        with pytest.raises(DuplicateId):
            core.apply_operation(s, Operation(core.INSERT_INTO_BUCKET,
                                              {"bucket": 0, "key": "a", "value": 6}))

    def test_rehash_placement_is_authoritative(self):
        s = hash_state([[("a", 1), ("b", 2)]])
        out = core.apply_operation(s, Operation(core.REHASH, {
            "newCapacity": 3,
            "placement": [{"key": "b", "bucket": 0}, {"key": "a", "bucket": 2}]}))
        assert [[e.key for e in b] for b in out.main_view.buckets] == [["b"], [], ["a"]]

    def test_rehash_incomplete_placement(self):
        s = hash_state([[("a", 1), ("b", 2)]])
        with pytest.raises(StructuralViolation):
            core.apply_operation(s, Operation(core.REHASH, {
                "newCapacity": 2, "placement": [{"key": "a", "bucket": 0}]}))


def table_state(rows, cols):
    cells = tuple(tuple(core.TableCell(None) for _ in range(cols)) for _ in range(rows))
    return core.VisualState(
        main_view=core.TableView(rows=rows, cols=cols, cells=cells),
        styles=dict(TEST_STYLES))


class TestTableOps:
    def test_update_and_highlight(self):
        s = table_state(2, 2)
        s = core.apply_operation(s, Operation(core.UPDATE_TABLE_CELL,
                                              {"row": 1, "col": 0, "value": 7}))
        s = core.apply_operation(s, Operation(core.HIGHLIGHT_TABLE_CELL, {
            "cells": [{"row": 1, "col": 0}], "styleKey": "done"}))
        cell = s.main_view.cells[1][0]
        assert (cell.value, cell.style_key) == (7, "done")

    def test_cell_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            core.apply_operation(table_state(2, 2), Operation(
                core.UPDATE_TABLE_CELL, {"row": 2, "col": 0, "value": 1}))

    def test_dependency_is_transient(self):
        s = table_state(2, 2)
        s = core.apply_operation(s, Operation(core.SHOW_DEPENDENCY, {
            "from": {"row": 0, "col": 0}, "to": {"row": 1, "col": 1}}))
        assert len(s.main_view.dependencies) == 1
        assert core.clear_transients(s).main_view.dependencies == ()


class TestGenericOps:
    def test_comment_lifecycle(self):
        s = array_state([1, 2])
        s = core.apply_operation(s, Operation(core.SHOW_COMMENT, {
            "id": "note", "text": "hi", "anchor": {"view": "main", "element": 1}}))
        assert s.comments[0].anchor.element == 1
        with pytest.raises(DuplicateId):
            core.apply_operation(s, Operation(core.SHOW_COMMENT, {
                "id": "note", "text": "again", "anchor": {"view": "main"}}))
        s = core.apply_operation(s, Operation(core.HIDE_COMMENT, {"id": "note"}))
        assert s.comments == ()

    def test_list_ops(self):
        s = core.VisualState(
            main_view=core.array_view([1]),
            auxiliary_views=(core.AuxView(name="q", kind="list"),),
            styles=dict(TEST_STYLES))
        s = core.apply_operation(s, Operation(core.APPEND_TO_LIST, {"view": "q", "entry": 3}))
        s = core.apply_operation(s, Operation(core.APPEND_TO_LIST,
                                              {"view": "q", "entry": {"value": 4}}))
        assert [e.value for e in s.aux("q").entries] == [3, 4]
        s = core.apply_operation(s, Operation(core.POP_FROM_LIST, {"view": "q", "end": "front"}))
        assert [e.value for e in s.aux("q").entries] == [4]
        s = core.apply_operation(s, Operation(core.POP_FROM_LIST, {"view": "q", "end": "back"}))
        with pytest.raises(IndexOutOfRange):
            core.apply_operation(s, Operation(core.POP_FROM_LIST, {"view": "q", "end": "front"}))


class TestWords:
    def test_empty_word_is_identity(self):
        s = array_state([1, 2, 3])
        assert core.apply_word(s, core.EMPTY_WORD) == s

    def test_two_step_fold(self):
        # Hand-simulated fold: write 9 at index 0, then style index 0.
        s = array_state([1, 2])
        word = (Operation(core.UPDATE_VALUES, {"assignments": [{"index": 0, "value": 9}]}),
                Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "done"}))
        out = core.apply_word(s, word)
        assert [e.value for e in out.main_view.elements] == [9, 2]
        assert out.main_view.elements[0].style_key == "done"

    def test_failure_position_is_reported(self):
        s = array_state([1])
        word = (Operation(core.UPDATE_VALUES, {"assignments": [{"index": 0, "value": 5}]}),
                Operation(core.UPDATE_STYLE, {"indices": [9], "styleKey": "done"}))
        with pytest.raises(WordApplyError) as err:
            core.apply_word(s, word)
        assert err.value.position == 1

    def test_style_then_restyle_is_identity(self):
        s = array_state([1])
        word = (Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "current"}),
                Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "idle"}))
        assert core.apply_word(s, word) == s

    def test_concat(self):
        a = Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "done"})
        b = Operation(core.SET_POINTER, {"name": "p", "index": 0})
        c = Operation(core.CLEAR_POINTER, {"name": "p"})
        assert core.concat_words((), (a,)) == (a,)
        assert core.concat_words((a,), ()) == (a,)
        assert core.concat_words((a,), (b, c)) == (a, b, c)

    def test_flatten_deltas(self):
        a = Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "done"})
        b = Operation(core.SET_POINTER, {"name": "p", "index": 0})
        c = Operation(core.CLEAR_POINTER, {"name": "p"})
        d = Operation(core.UPDATE_STYLE, {"indices": [0], "styleKey": "idle"})
        deltas = [core.Delta(groups=((a,), (b, c))), core.Delta(groups=((d,),))]
        assert core.flatten_deltas(deltas) == (a, b, c, d)
        assert core.flatten_deltas([]) == ()


words_strategy = st.integers(min_value=0, max_value=2 ** 32 - 1)


@settings(max_examples=200, deadline=None)
@given(seed=words_strategy)
def test_monoid_laws(seed):
    rng = random.Random(seed)
    s = rand_array_state(rng)
    u = rand_word(rng, s)
    v = rand_word(rng, s)
    w = rand_word(rng, s)
    assert core.concat_words(core.concat_words(u, v), w) == \
        core.concat_words(u, core.concat_words(v, w))
    assert core.concat_words((), u) == u
    assert core.concat_words(u, ()) == u


@settings(max_examples=200, deadline=None)
@given(seed=words_strategy, graph=st.booleans())
def test_action_law(seed, graph):
    rng = random.Random(seed)
    s = rand_graph_state(rng) if graph else rand_array_state(rng)
    u = rand_word(rng, s)
    v = rand_word(rng, s)
    whole = apply_outcome(s, core.concat_words(u, v))
    first = apply_outcome(s, u)
    if first[0] == "fail":
        assert whole[0] == "fail" and whole[1] == first[1]
        return
    second = apply_outcome(first[1], v)
    if second[0] == "ok":
        assert whole == ("ok", second[1])
    else:
        assert whole[0] == "fail"
        assert whole[1] == len(u) + second[1]
        assert whole[2] == second[2]


@settings(max_examples=150, deadline=None)
@given(seed=words_strategy)
def test_purity_and_referential_soundness(seed):
    rng = random.Random(seed)
    s = rand_graph_state(rng)
    word = rand_word(rng, s)
    snapshot = copy.deepcopy(s)
    outcome = apply_outcome(s, word)
    assert s == snapshot  # inputs never mutate
    # equal inputs give equal outputs
    assert apply_outcome(s, word) == outcome
    if outcome[0] == "ok":
        assert not outcome[1].main_view.check()
