"""Independent brute-force oracles.

These deliberately avoid the package's algorithm code paths: plain
enumeration, trial division, Bellman-Ford relaxation sweeps, recursive
memoized LCS, subset enumeration. The trackers are checked against these,
never against themselves.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

INF = float("inf")


def inversion_count(values: list) -> int:
    """Adjacent-swap distance of a sequence = its inversion count."""
    return sum(1 for i, j in combinations(range(len(values)), 2)
               if values[i] > values[j])


def pair_sums(values: list, target) -> set[tuple[int, int]]:
    return {(i, j) for i, j in combinations(range(len(values)), 2)
            if values[i] + values[j] == target}


def primes_up_to(n: int) -> set[int]:
    out = set()
    for k in range(2, n + 1):
        if all(k % d for d in range(2, k)):
            out.add(k)
    return out


def bellman_ford(ids: list[str], edges: list[dict], source: str) -> dict[str, float]:
    dist = {i: INF for i in ids}
    dist[source] = 0
    arcs = []
    for e in edges:
        w = e.get("weight", 1)
        arcs.append((e["from"], e["to"], w))
        if not e.get("directed", False):
            arcs.append((e["to"], e["from"], w))
    for _ in range(len(ids)):
        for u, v, w in arcs:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
    return dist


def has_cycle(ids: list[str], edges: list[dict]) -> bool:
    adjacency = {i: [] for i in ids}
    for e in edges:
        adjacency[e["from"]].append(e["to"])
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {i: WHITE for i in ids}

    def visit(u: str) -> bool:
        color[u] = GRAY
        for v in adjacency[u]:
            if color[v] == GRAY or (color[v] == WHITE and visit(v)):
                return True
        color[u] = BLACK
        return False

    return any(color[i] == WHITE and visit(i) for i in ids)


def is_topological_order(order: list[str], ids: list[str], edges: list[dict]) -> bool:
    if sorted(order) != sorted(ids):
        return False
    pos = {u: i for i, u in enumerate(order)}
    return all(pos[e["from"]] < pos[e["to"]] for e in edges)


def knapsack_best(items: list[tuple[int, int]], capacity: int) -> int:
    best = 0
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            weight = sum(w for w, _ in combo)
            if weight <= capacity:
                best = max(best, sum(v for _, v in combo))
    return best


def lcs_length(s1: str, s2: str) -> int:
    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        if s1[i - 1] == s2[j - 1]:
            return go(i - 1, j - 1) + 1
        return max(go(i - 1, j), go(i, j - 1))

    return go(len(s1), len(s2))


def string_hash_31(key: str, capacity: int) -> int:
    h = 0
    for byte in key.encode("utf-8"):
        h = (h * 31 + byte) % (2 ** 32)
    return h % capacity
