"""The shipped tracker catalogue.

Nine deterministic reference trackers covering the six algorithm families.
Each entry knows its accepted input kind, its pseudocode, and a few name
aliases so bench runs can pick a tracker from a task file that does not
carry an explicit ``- Tracker:`` bullet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import IncompatibleInput
from ..tracejson import Trace
from . import arrays, dp, graphs, hashing, sorting, trees
from .tasks import TaskSpec


@dataclass(frozen=True)
class TrackerInfo:
    id: str
    family: str
    input_kind: str
    pseudocode: tuple[str, ...]
    run: Callable[[TaskSpec], Trace]
    aliases: tuple[str, ...]


TRACKERS: tuple[TrackerInfo, ...] = (
    TrackerInfo("bubble_sort", "Sorting", "array", sorting.PSEUDOCODE,
                sorting.run, ("bubble sort", "sort")),
    TrackerInfo("two_pointer_search", "Array", "array", arrays.TWO_POINTER_PSEUDOCODE,
                arrays.run_two_pointer, ("two pointer", "two sum", "pair sum")),
    TrackerInfo("sieve_of_eratosthenes", "Array", "array", arrays.SIEVE_PSEUDOCODE,
                arrays.run_sieve, ("sieve", "count primes", "primes")),
    TrackerInfo("dijkstra", "Graph", "graph", graphs.DIJKSTRA_PSEUDOCODE,
                graphs.run_dijkstra, ("dijkstra", "shortest path")),
    TrackerInfo("bfs_course_schedule", "Graph", "graph", graphs.KAHN_PSEUDOCODE,
                graphs.run_course_schedule, ("course schedule", "topological", "kahn")),
    TrackerInfo("knapsack_01", "DP", "pairs", dp.KNAPSACK_PSEUDOCODE,
                dp.run_knapsack, ("knapsack",)),
    TrackerInfo("lcs_table", "DP", "pairs", dp.LCS_PSEUDOCODE,
                dp.run_lcs, ("longest common subsequence", "lcs")),
    TrackerInfo("bst_insert", "Tree", "array", trees.PSEUDOCODE,
                trees.run, ("binary search tree", "bst")),
    TrackerInfo("chained_hash_insert", "Hashtable", "pairs", hashing.PSEUDOCODE,
                hashing.run, ("hash table", "hash insert", "hashtable")),
)

_BY_ID = {info.id: info for info in TRACKERS}


def list_trackers() -> tuple[TrackerInfo, ...]:
    return TRACKERS


def get_tracker(tracker_id: str) -> TrackerInfo:
    info = _BY_ID.get(tracker_id)
    if info is None:
        known = ", ".join(sorted(_BY_ID))
        raise KeyError(f"unknown tracker {tracker_id!r} (known: {known})")
    return info


def run_tracker(tracker_id: str, task: TaskSpec) -> Trace:
    """Execute a shipped tracker on a task; the result is always a trace
    that validates with zero errors (enforced by the Visualizer)."""
    info = get_tracker(tracker_id)
    if task.input_kind != info.input_kind:
        raise IncompatibleInput(
            f"{info.id} expects {info.input_kind!r} input, task carries {task.input_kind!r}")
    return info.run(task)


def infer_tracker(task: TaskSpec) -> TrackerInfo | None:
    """Pick a tracker for a task: explicit bullet first, then name aliases."""
    if task.tracker:
        wanted = task.tracker.strip()
        if wanted in _BY_ID:
            return _BY_ID[wanted]
        return None
    haystack = " ".join((task.name, task.user_request, task.goal)).lower()
    for info in TRACKERS:
        for alias in info.aliases:
            if alias in haystack and info.input_kind == task.input_kind:
                return info
    return None
