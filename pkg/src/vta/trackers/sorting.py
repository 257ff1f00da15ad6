"""Bubble sort tracker."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import Visualizer, move_elements, styles, update_style

PSEUDOCODE = (
    "1. repeat passes over the array",
    "2. compare the adjacent pair a[j], a[j+1]",
    "3. if out of order, swap them",
    "4. after each pass the tail element is sorted",
    "5. array fully sorted",
)


def _numbers(task: TaskSpec) -> list:
    values = task.input_data.get("array")
    if not isinstance(values, list) or not values:
        raise IncompatibleInput("bubble_sort needs a non-empty array input")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise IncompatibleInput("bubble_sort needs numeric array values")
    return list(values)


def run(task: TaskSpec) -> Trace:
    values = _numbers(task)
    n = len(values)
    state = core.VisualState(
        main_view=core.array_view(values),
        styles=styles("comparing", "swapped", "sorted"),
        pseudocode=PSEUDOCODE,
    )
    viz = Visualizer("Bubble Sort", "Sorting", state)

    marked: list[int] = []  # pair styled by the previous comparison
    sorted_from = n

    def reset_group():
        stale = [i for i in marked if i < sorted_from]
        return [update_style(stale, "idle")] if stale else []

    for i in range(1, n):
        swapped_any = False
        for j in range(n - i):
            groups = []
            if reset_group():
                groups.append(reset_group())
            groups.append([update_style([j, j + 1], "comparing")])
            viz.step(f"Compare a[{j}] and a[{j + 1}]", 2, groups)
            marked = [j, j + 1]
            if values[j] > values[j + 1]:
                values[j], values[j + 1] = values[j + 1], values[j]
                swapped_any = True
                viz.step(f"Swap a[{j}] and a[{j + 1}]", 3,
                         [[move_elements([(j, j + 1), (j + 1, j)])],
                          [update_style([j, j + 1], "swapped")]])
                marked = [j, j + 1]
        sorted_from = n - i
        groups = []
        if reset_group():
            groups.append(reset_group())
        groups.append([update_style([sorted_from], "sorted")])
        viz.step(f"a[{sorted_from}] is in final position", 4, groups)
        marked = []
        if not swapped_any:
            break

    viz.step("Array sorted", 5, [update_style(list(range(n)), "sorted")])
    return viz.finish()
