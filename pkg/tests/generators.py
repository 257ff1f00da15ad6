"""Seeded random generators shared by the property and acceptance tests.

Words are generated against a state's initial shape; ops may deliberately
reference out-of-range targets so the action law is exercised on the
failure side too (both sides must fail at the same position).
"""

from __future__ import annotations

import random

from vta import core
from vta.errors import WordApplyError
from vta.trackers.tasks import TaskSpec

STYLE_KEYS = ("idle", "current", "done")

TEST_STYLES = {
    "idle": core.DEFAULT_IDLE_STYLE,
    "current": core.StyleDef(fill="#3498DB", stroke="#2980B9", text="#FFFFFF"),
    "done": core.StyleDef(fill="#27AE60", stroke="#1E8449", text="#FFFFFF"),
}


def rand_array_state(rng: random.Random, max_len: int = 8) -> core.VisualState:
    n = rng.randint(1, max_len)
    values = [rng.randint(-9, 20) for _ in range(n)]
    pointers = {}
    if rng.random() < 0.4:
        pointers["p"] = rng.randrange(n)
    return core.VisualState(
        main_view=core.ArrayView(
            elements=tuple(core.ArrayElement(i, v, rng.choice(STYLE_KEYS))
                           for i, v in enumerate(values)),
            pointers=pointers),
        styles=dict(TEST_STYLES),
        pseudocode=("1. line one", "2. line two"),
        auxiliary_views=(core.AuxView(name="aux", kind="list",
                                      entries=tuple(core.AuxEntry(value=k)
                                                    for k in range(rng.randint(0, 3)))),),
    )


def rand_graph_state(rng: random.Random, max_nodes: int = 8) -> core.VisualState:
    n = rng.randint(1, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                edges.append(core.GraphEdge(src=ids[i], dst=ids[j],
                                            weight=rng.randint(1, 9),
                                            directed=rng.random() < 0.5))
    return core.VisualState(
        main_view=core.GraphView(
            nodes=tuple(core.GraphNode(id=i, label=i, style_key=rng.choice(STYLE_KEYS),
                                       properties={"distance": None})
                        for i in ids),
            edges=tuple(edges)),
        styles=dict(TEST_STYLES),
        pseudocode=("1. only line",),
    )


def rand_array_op(rng: random.Random, n: int, faulty: bool) -> core.Operation:
    hi = n + 2 if faulty else n
    pick = rng.randrange(6)
    if pick == 0:
        idx = [rng.randrange(hi) for _ in range(rng.randint(1, 3))]
        return core.Operation(core.UPDATE_STYLE,
                              {"indices": idx, "styleKey": rng.choice(STYLE_KEYS)})
    if pick == 1:
        i, j = rng.randrange(hi), rng.randrange(hi)
        return core.Operation(core.MOVE_ELEMENTS,
                              {"pairs": [{"from": i, "to": j}, {"from": j, "to": i}]})
    if pick == 2:
        a, b = sorted((rng.randrange(hi), rng.randrange(hi)))
        off = rng.randint(-2, 2)
        return core.Operation(core.SHIFT_ELEMENTS,
                              {"range": {"start": a, "end": b}, "offset": off})
    if pick == 3:
        return core.Operation(core.UPDATE_VALUES, {"assignments": [
            {"index": rng.randrange(hi), "value": rng.randint(-5, 99)}]})
    if pick == 4:
        return core.Operation(core.SET_POINTER,
                              {"name": rng.choice("pq"),
                               "index": None if rng.random() < 0.2 else rng.randrange(hi)})
    return core.Operation(core.APPEND_TO_LIST,
                          {"view": "aux" if not faulty or rng.random() < 0.7 else "ghost",
                           "entry": rng.randint(0, 9)})


def rand_graph_op(rng: random.Random, ids: list[str], faulty: bool) -> core.Operation:
    pool = ids + (["zz"] if faulty else [])
    pick = rng.randrange(5)
    if pick == 0:
        return core.Operation(core.UPDATE_NODE_STYLE,
                              {"ids": [rng.choice(pool)], "styleKey": rng.choice(STYLE_KEYS)})
    if pick == 1:
        return core.Operation(core.UPDATE_NODE_PROPERTIES,
                              {"id": rng.choice(pool),
                               "properties": {"distance": rng.randint(0, 30)}})
    if pick == 2:
        new_id = f"x{rng.randrange(4)}"
        return core.Operation(core.ADD_NODE, {"node": {"id": new_id, "label": new_id,
                                                       "styleKey": "idle"}})
    if pick == 3:
        return core.Operation(core.REMOVE_NODE, {"id": rng.choice(pool)})
    return core.Operation(core.UPDATE_NODE_STYLE,
                          {"ids": [rng.choice(pool)], "styleKey": "done"})


def rand_word(rng: random.Random, state: core.VisualState, max_len: int = 8,
              fault_rate: float = 0.2) -> core.OperationWord:
    view = state.main_view
    length = rng.randint(0, max_len)
    word = []
    for _ in range(length):
        faulty = rng.random() < fault_rate
        if isinstance(view, core.ArrayView):
            word.append(rand_array_op(rng, len(view.elements), faulty))
        else:
            word.append(rand_graph_op(rng, [n.id for n in view.nodes], faulty))
    return tuple(word)


def apply_outcome(state: core.VisualState, word: core.OperationWord):
    """('ok', state) on success, ('fail', position, error code) otherwise."""
    try:
        return ("ok", core.apply_word(state, word))
    except WordApplyError as exc:
        return ("fail", exc.position, exc.cause.code)


# --- fuzzed tracker tasks (bounds: arrays <= 12, graphs <= 8, tables <= 8x8) ---

def _task(kind: str, data: dict, **kwargs) -> TaskSpec:
    return TaskSpec(name=kwargs.pop("name", "fuzz"), problem_id=None, difficulty="",
                    family=kwargs.pop("family", ""), goal="", user_request="",
                    input_kind=kind, input_data=data, **kwargs)


def fuzz_bubble_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 12)
    return _task("array", {"array": [rng.randint(-20, 99) for _ in range(n)]},
                 family="Sorting")


def fuzz_two_pointer_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(2, 12)
    values = sorted(rng.randint(-15, 30) for _ in range(n))
    if rng.random() < 0.6:
        i, j = sorted(rng.sample(range(n), 2))
        target = values[i] + values[j]
    else:
        target = rng.randint(-40, 80)
    return _task("array", {"array": values}, family="Array",
                 extras={"target": target})


def fuzz_sieve_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 12)
    return _task("array", {"array": list(range(1, n + 1))}, family="Array")


def fuzz_graph(rng: random.Random, directed: bool, max_nodes: int = 8):
    n = rng.randint(1, max_nodes)
    ids = [chr(ord("A") + i) for i in range(n)]
    nodes = [{"id": i, "label": i} for i in ids]
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < 0.25:
                if not directed and i > j:
                    continue
                edges.append({"from": ids[i], "to": ids[j],
                              "weight": rng.randint(1, 9),
                              "directed": directed or rng.random() < 0.5})
    return {"nodes": nodes, "edges": edges}, ids


def fuzz_dijkstra_task(rng: random.Random) -> TaskSpec:
    graph, ids = fuzz_graph(rng, directed=rng.random() < 0.5)
    return _task("graph", {"graph": graph}, family="Graph", source=rng.choice(ids))


def fuzz_course_schedule_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 8)
    ids = [chr(ord("A") + i) for i in range(n)]
    nodes = [{"id": i, "label": i} for i in ids]
    edges = []
    acyclic = rng.random() < 0.7
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if acyclic and i > j:
                continue
            if rng.random() < 0.2:
                edges.append({"from": ids[i], "to": ids[j], "directed": True})
    return _task("graph", {"graph": {"nodes": nodes, "edges": edges}}, family="Graph")


def fuzz_knapsack_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 7)
    items = [[rng.randint(1, 6), rng.randint(0, 9)] for _ in range(n)]
    return _task("pairs", {"pairs": items}, family="DP",
                 extras={"capacity": rng.randint(0, 7)})


def fuzz_lcs_task(rng: random.Random) -> TaskSpec:
    alphabet = "ABC"
    s1 = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 7)))
    s2 = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 7)))
    return _task("pairs", {"pairs": [s1, s2]}, family="DP")


def fuzz_bst_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 12)
    return _task("array", {"array": [rng.randint(0, 40) for _ in range(n)]}, family="Tree")


def fuzz_hash_task(rng: random.Random) -> TaskSpec:
    n = rng.randint(1, 10)
    keys = rng.sample(range(100), n) if rng.random() < 0.5 else \
        rng.sample([f"k{i}" for i in range(40)], n)
    pairs = [[k, rng.randint(0, 9)] for k in keys]
    return _task("pairs", {"pairs": pairs}, family="Hashtable",
                 extras={"capacity": rng.randint(1, 4)})


FUZZERS = {
    "bubble_sort": fuzz_bubble_task,
    "two_pointer_search": fuzz_two_pointer_task,
    "sieve_of_eratosthenes": fuzz_sieve_task,
    "dijkstra": fuzz_dijkstra_task,
    "bfs_course_schedule": fuzz_course_schedule_task,
    "knapsack_01": fuzz_knapsack_task,
    "lcs_table": fuzz_lcs_task,
    "bst_insert": fuzz_bst_task,
    "chained_hash_insert": fuzz_hash_task,
}
