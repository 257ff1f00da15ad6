"""DP-family trackers: 0/1 knapsack and longest common subsequence."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import (Visualizer, highlight_table_cell, show_comment,
                         show_dependency, styles, update_table_cell)

KNAPSACK_PSEUDOCODE = (
    "1. zero items -> best value 0 at every capacity",
    "2. for each item i:",
    "3.   for each capacity c:",
    "4.     skip the item: best[i-1][c]",
    "5.     take the item: best[i-1][c-w] + v, if it fits",
    "6.     keep the better of the two",
    "7. answer = best[n][W]",
)


def _table_state(rows: int, cols: int, row_labels, col_labels, pseudocode,
                 filled_row0: bool) -> core.VisualState:
    cells = []
    for r in range(rows):
        row = []
        for c in range(cols):
            if (r == 0 and filled_row0) or (not filled_row0 and (r == 0 or c == 0)):
                row.append(core.TableCell(value=0))
            else:
                row.append(core.TableCell(value=None))
        cells.append(tuple(row))
    view = core.TableView(rows=rows, cols=cols, cells=tuple(cells),
                          row_labels=tuple(row_labels), col_labels=tuple(col_labels))
    return core.VisualState(main_view=view,
                            styles=styles("current", "answer"),
                            pseudocode=pseudocode)


def run_knapsack(task: TaskSpec) -> Trace:
    items = task.input_data.get("pairs")
    capacity = task.extras.get("capacity")
    if not isinstance(items, list) or not items:
        raise IncompatibleInput("knapsack_01 needs 'pairs' of [weight, value] items")
    if isinstance(capacity, bool) or not isinstance(capacity, int) or capacity < 0:
        raise IncompatibleInput("knapsack_01 needs a non-negative integer 'capacity'")
    parsed = []
    for item in items:
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in item)):
            raise IncompatibleInput("knapsack_01 items must be [weight, value] integer pairs")
        parsed.append((item[0], item[1]))

    n, cap = len(parsed), capacity
    state = _table_state(
        rows=n + 1, cols=cap + 1,
        row_labels=["-"] + [f"w{w}v{v}" for w, v in parsed],
        col_labels=[str(c) for c in range(cap + 1)],
        pseudocode=KNAPSACK_PSEUDOCODE, filled_row0=True)
    viz = Visualizer("0/1 Knapsack", "DP", state)

    best = [[0] * (cap + 1) for _ in range(n + 1)]
    prev: tuple[int, int] | None = None
    for i in range(1, n + 1):
        w, v = parsed[i - 1]
        for c in range(cap + 1):
            skip = best[i - 1][c]
            deps = [show_dependency((i - 1, c), (i, c))]
            if w <= c:
                take = best[i - 1][c - w] + v
                deps.append(show_dependency((i - 1, c - w), (i, c)))
                value = max(skip, take)
                highlight = (4, 5, 6)
            else:
                value = skip
                highlight = (4, 6)
            best[i][c] = value
            groups = []
            if prev is not None:
                groups.append([highlight_table_cell([prev], "idle")])
            groups.append([highlight_table_cell([(i, c)], "current")] + deps)
            groups.append([update_table_cell(i, c, value)])
            viz.step(f"best[{i}][{c}] = {value}", highlight, groups)
            prev = (i, c)

    groups = []
    if prev is not None:
        groups.append([highlight_table_cell([prev], "idle")])
    groups.append([highlight_table_cell([(n, cap)], "answer"),
                   show_comment("result", f"answer: {best[n][cap]}",
                                element={"row": n, "col": cap})])
    viz.step(f"Best value: {best[n][cap]}", 7, groups)
    return viz.finish()


LCS_PSEUDOCODE = (
    "1. empty prefixes share length 0",
    "2. for each i, j:",
    "3.   matching characters extend the diagonal",
    "4.   otherwise keep the better neighbor",
    "5. answer = cell (m, n)",
)


def run_lcs(task: TaskSpec) -> Trace:
    pair = task.input_data.get("pairs")
    if (not isinstance(pair, list) or len(pair) != 2
            or not all(isinstance(s, str) for s in pair)):
        raise IncompatibleInput("lcs_table needs 'pairs' holding exactly two strings")
    s1, s2 = pair
    if not s1 or not s2:
        raise IncompatibleInput("lcs_table needs two non-empty strings")

    m, n = len(s1), len(s2)
    state = _table_state(
        rows=m + 1, cols=n + 1,
        row_labels=["-"] + list(s1),
        col_labels=["-"] + list(s2),
        pseudocode=LCS_PSEUDOCODE, filled_row0=False)
    viz = Visualizer("Longest Common Subsequence", "DP", state)

    table = [[0] * (n + 1) for _ in range(m + 1)]
    prev: tuple[int, int] | None = None
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if s1[i - 1] == s2[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
                deps = [show_dependency((i - 1, j - 1), (i, j))]
                note = f"'{s1[i - 1]}' matches"
                highlight = 3
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
                deps = [show_dependency((i - 1, j), (i, j)),
                        show_dependency((i, j - 1), (i, j))]
                note = "no match"
                highlight = 4
            groups = []
            if prev is not None:
                groups.append([highlight_table_cell([prev], "idle")])
            groups.append([highlight_table_cell([(i, j)], "current")] + deps)
            groups.append([update_table_cell(i, j, table[i][j])])
            viz.step(f"cell ({i},{j}): {note} -> {table[i][j]}", highlight, groups)
            prev = (i, j)

    groups = []
    if prev is not None:
        groups.append([highlight_table_cell([prev], "idle")])
    groups.append([highlight_table_cell([(m, n)], "answer"),
                   show_comment("result", f"answer: {table[m][n]}",
                                element={"row": m, "col": n})])
    viz.step(f"LCS length: {table[m][n]}", 5, groups)
    return viz.finish()
