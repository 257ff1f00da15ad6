"""Chained hash table insertion tracker (with load-factor rehash)."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import (Visualizer, highlight_collision, insert_into_bucket, rehash,
                         show_comment, styles)

PSEUDOCODE = (
    "1. bucket = hash(key) mod capacity",
    "2. an occupied bucket is a collision",
    "3. append the entry to the bucket's chain",
    "4. load factor above 0.75 doubles the capacity",
    "5. every key is re-placed after a rehash",
    "6. table complete",
)

LOAD_FACTOR_LIMIT = 0.75
DEFAULT_CAPACITY = 4


def hash_key(key: str | int, capacity: int) -> int:
    """Deterministic bucket index: identity for ints, a 31-polynomial over
    UTF-8 bytes for strings, both mod capacity."""
    if isinstance(key, int):
        return key % capacity
    h = 0
    for byte in key.encode("utf-8"):
        h = (h * 31 + byte) % (2 ** 32)
    return h % capacity


def run(task: TaskSpec) -> Trace:
    pairs = task.input_data.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise IncompatibleInput("chained_hash_insert needs 'pairs' of [key, value] entries")
    capacity = task.extras.get("capacity", DEFAULT_CAPACITY)
    if isinstance(capacity, bool) or not isinstance(capacity, int) or capacity < 1:
        raise IncompatibleInput("capacity must be a positive integer")
    entries: list[tuple[str | int, object]] = []
    seen = set()
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise IncompatibleInput("each pair must be [key, value]")
        key = pair[0]
        if isinstance(key, bool) or not isinstance(key, (str, int)):
            raise IncompatibleInput("keys must be strings or integers")
        if key in seen:
            raise IncompatibleInput(f"duplicate key {key!r}")
        seen.add(key)
        entries.append((key, pair[1]))

    view = core.HashtableView(buckets=tuple(() for _ in range(capacity)))
    state = core.VisualState(main_view=view,
                             styles=styles("current", "collision"),
                             pseudocode=PSEUDOCODE)
    viz = Visualizer("Chained Hash Insert", "Hashtable", state)

    buckets: list[list[tuple[str | int, object]]] = [[] for _ in range(capacity)]
    count = 0
    collided: int | None = None

    def reset_collision() -> list:
        nonlocal collided
        if collided is not None:
            ops = [highlight_collision(collided, "idle")]
            collided = None
            return ops
        return []

    for key, value in entries:
        bucket = hash_key(key, capacity)
        if buckets[bucket]:
            viz.step(f"hash({key!r}) = {bucket}: collision", 2,
                     [reset_collision() + [highlight_collision(bucket, "collision")]])
            collided = bucket
        viz.step(f"Insert {key!r} into bucket {bucket}", (1, 3),
                 [reset_collision() + [insert_into_bucket(bucket, key, value)]])
        buckets[bucket].append((key, value))
        count += 1

        if count / capacity > LOAD_FACTOR_LIMIT:
            capacity *= 2
            placement = []
            new_buckets: list[list[tuple[str | int, object]]] = [[] for _ in range(capacity)]
            for old in buckets:
                for k, v in old:
                    b = hash_key(k, capacity)
                    placement.append((k, b))
                    new_buckets[b].append((k, v))
            buckets = new_buckets
            viz.step(f"Load factor {count}/{capacity // 2} exceeds "
                     f"{LOAD_FACTOR_LIMIT}: rehash to {capacity}", (4, 5),
                     [reset_collision() + [rehash(capacity, placement)]])

    viz.step("Table complete", 6,
             [reset_collision()
              + [show_comment("result", f"answer: {count} entries in {capacity} buckets")]])
    return viz.finish()
