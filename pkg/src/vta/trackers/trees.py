"""Binary search tree insertion tracker."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import (Visualizer, add_child, hide_comment, show_comment, styles,
                         update_node_style)

PSEUDOCODE = (
    "1. the first value becomes the root",
    "2. compare the new value with the current node",
    "3. descend left if smaller, right if larger",
    "4. insert as a new leaf",
    "5. equal values are skipped",
    "6. tree complete",
)

LEFT, RIGHT = 0, 1


def run(task: TaskSpec) -> Trace:
    values = task.input_data.get("array")
    if not isinstance(values, list) or not values:
        raise IncompatibleInput("bst_insert needs a non-empty array input")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise IncompatibleInput("bst_insert needs numeric values")

    root_id = "n0"
    view = core.TreeView(nodes=(core.TreeNode(id=root_id, label=f"{values[0]:g}"),))
    state = core.VisualState(main_view=view,
                             styles=styles("current", "inserted", "done"),
                             pseudocode=PSEUDOCODE)
    viz = Visualizer("BST Insert", "Tree", state)

    by_id = {root_id: values[0]}
    children: dict[str, dict[int, str]] = {root_id: {}}
    note_shown = False

    def clear_note() -> list:
        nonlocal note_shown
        if note_shown:
            note_shown = False
            return [hide_comment("note")]
        return []

    for k, value in enumerate(values[1:], start=1):
        node = root_id
        path = [node]
        placed = None
        while True:
            if value == by_id[node]:
                break
            slot = LEFT if value < by_id[node] else RIGHT
            child = children[node].get(slot)
            if child is None:
                placed = (node, slot)
                break
            node = child
            path.append(node)

        if placed is None:
            ops = clear_note() + [update_node_style(path, "current"),
                                  show_comment("note", f"{value:g} already present")]
            viz.step(f"Skip duplicate {value:g}", 5, [ops])
            note_shown = True
            viz.step("Reset path", 2, [update_node_style(path, "idle")])
            continue

        viz.step(f"Search for a slot for {value:g}", (2, 3),
                 [clear_note() + [update_node_style(path, "current")]])
        parent, slot = placed
        node_id = f"n{k}"
        by_id[node_id] = value
        children[node_id] = {}
        children[parent][slot] = node_id
        side = "left" if slot == LEFT else "right"
        viz.step(f"Insert {value:g} as the {side} child of {by_id[parent]:g}", 4,
                 [[add_child(parent, node_id, f"{value:g}", slot, style_key="inserted")],
                  [update_node_style(path, "idle")]])

    all_ids = sorted(by_id)
    viz.step("All values inserted", 6,
             [clear_note() + [update_node_style(all_ids, "done")]])
    return viz.finish()
