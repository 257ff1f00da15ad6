"""Graph-family trackers: Dijkstra and Kahn topological ordering."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import (Visualizer, append_to_list, pop_from_list, show_comment,
                         styles, update_edge_style, update_node_properties,
                         update_node_style)

INF = float("inf")


def _graph_view(task: TaskSpec, properties) -> core.GraphView:
    graph = task.input_data.get("graph")
    if not isinstance(graph, dict) or not graph.get("nodes"):
        raise IncompatibleInput("graph trackers need a non-empty graph input")
    nodes = tuple(core.GraphNode(id=n["id"], label=n["label"],
                                 properties=properties(n["id"]))
                  for n in graph["nodes"])
    edges = tuple(core.GraphEdge(src=e["from"], dst=e["to"], weight=e.get("weight"),
                                 directed=e["directed"], style_key="normal")
                  for e in graph["edges"])
    return core.GraphView(nodes=nodes, edges=edges)


DIJKSTRA_PSEUDOCODE = (
    "1. source distance 0, others unknown",
    "2. pick the closest unvisited node u",
    "3. relax each edge (u, v)",
    "4. shorter path found: update v",
    "5. mark u visited",
    "6. distances final",
)


def run_dijkstra(task: TaskSpec) -> Trace:
    graph = task.input_data.get("graph")
    if not isinstance(graph, dict):
        raise IncompatibleInput("dijkstra needs a graph input")
    ids = [n["id"] for n in graph.get("nodes", [])]
    if not ids:
        raise IncompatibleInput("dijkstra needs at least one node")
    source = task.source
    if source is None or source not in ids:
        raise IncompatibleInput("dijkstra needs a 'source' naming an existing node")
    for e in graph["edges"]:
        w = e.get("weight", 1)
        if isinstance(w, bool) or not isinstance(w, (int, float)) or w < 0:
            raise IncompatibleInput("dijkstra needs non-negative numeric edge weights")

    view = _graph_view(task, lambda nid: {"distance": 0 if nid == source else None})
    state = core.VisualState(
        main_view=view,
        auxiliary_views=(core.AuxView(name="order", kind="list"),),
        styles=styles("current", "visited", "frontier", "normal", "active"),
        pseudocode=DIJKSTRA_PSEUDOCODE,
    )
    viz = Visualizer("Dijkstra Shortest Path", "Graph", state)

    adjacency: dict[str, list[tuple[str, float, str, str]]] = {nid: [] for nid in ids}
    for e in graph["edges"]:
        w = e.get("weight", 1)
        adjacency[e["from"]].append((e["to"], w, e["from"], e["to"]))
        if not e["directed"]:
            adjacency[e["to"]].append((e["from"], w, e["from"], e["to"]))
    for nid in adjacency:
        adjacency[nid].sort(key=lambda item: item[0])

    dist: dict[str, float] = {nid: INF for nid in ids}
    dist[source] = 0
    visited: set[str] = set()

    viz.step(f"Start from {source}", 1, [update_node_style([source], "frontier")])

    while True:
        candidates = [(dist[nid], nid) for nid in ids if nid not in visited and dist[nid] < INF]
        if not candidates:
            break
        _, u = min(candidates)
        viz.step(f"Visit {u} (distance {dist[u]:g})", 2, [update_node_style([u], "current")])
        for v, w, esrc, edst in adjacency[u]:
            if v in visited:
                continue
            relaxed = dist[u] + w
            if relaxed < dist[v]:
                dist[v] = relaxed
                viz.step(f"Improve {v}: {relaxed:g} via {u}", (3, 4),
                         [[update_edge_style([(esrc, edst)], "active")],
                          [update_node_properties(v, {"distance": relaxed}),
                           update_node_style([v], "frontier")]])
            else:
                viz.step(f"Keep {v} at {dist[v]:g}", 3,
                         [update_edge_style([(esrc, edst)], "active")])
            viz.step(f"Edge ({esrc}, {edst}) settled", 3,
                     [update_edge_style([(esrc, edst)], "normal")])
        visited.add(u)
        viz.step(f"{u} finalized", 5,
                 [update_node_style([u], "visited"), append_to_list("order", u)])

    viz.step("All reachable nodes finalized", 6,
             [show_comment("result",
                           "answer: " + ", ".join(
                               f"{nid}={dist[nid]:g}" if dist[nid] < INF else f"{nid}=unreached"
                               for nid in sorted(ids)))])
    return viz.finish()


KAHN_PSEUDOCODE = (
    "1. compute the indegree of every course",
    "2. enqueue courses with indegree 0",
    "3. dequeue u and append it to the order",
    "4. decrement the indegree of u's neighbors",
    "5. enqueue neighbors reaching indegree 0",
    "6. everything ordered means no cycle",
)


def run_course_schedule(task: TaskSpec) -> Trace:
    graph = task.input_data.get("graph")
    if not isinstance(graph, dict):
        raise IncompatibleInput("bfs_course_schedule needs a graph input")
    ids = sorted(n["id"] for n in graph.get("nodes", []))
    if not ids:
        raise IncompatibleInput("bfs_course_schedule needs at least one node")
    if any(not e["directed"] for e in graph["edges"]):
        raise IncompatibleInput("bfs_course_schedule needs directed edges")

    indegree = {nid: 0 for nid in ids}
    adjacency: dict[str, list[str]] = {nid: [] for nid in ids}
    for e in graph["edges"]:
        adjacency[e["from"]].append(e["to"])
        indegree[e["to"]] += 1
    for nid in adjacency:
        adjacency[nid].sort()

    view = _graph_view(task, lambda nid: {"indegree": None, "order": None})
    state = core.VisualState(
        main_view=view,
        auxiliary_views=(core.AuxView(name="queue", kind="list"),
                         core.AuxView(name="order", kind="list")),
        styles=styles("current", "done", "frontier", "blocked", "normal", "active"),
        pseudocode=KAHN_PSEUDOCODE,
    )
    viz = Visualizer("Course Schedule", "Graph", state)

    viz.step("Count prerequisites", 1,
             [[update_node_properties(nid, {"indegree": indegree[nid]}) for nid in ids]])

    queue = [nid for nid in ids if indegree[nid] == 0]
    if queue:
        viz.step("Courses without prerequisites join the queue", 2,
                 [[append_to_list("queue", nid) for nid in queue]
                  + [update_node_style(queue, "frontier")]])

    order: list[str] = []
    while queue:
        u = queue.pop(0)
        viz.step(f"Take {u}", 3,
                 [pop_from_list("queue", "front"),
                  update_node_style([u], "current"),
                  append_to_list("order", u),
                  update_node_properties(u, {"order": len(order)})])
        order.append(u)
        for v in adjacency[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                queue.append(v)
                viz.step(f"{v} is now unblocked", (4, 5),
                         [[update_edge_style([(u, v)], "active"),
                           update_node_properties(v, {"indegree": 0})],
                          [append_to_list("queue", v), update_node_style([v], "frontier")]])
            else:
                viz.step(f"{v} still waits on {indegree[v]} course(s)", 4,
                         [update_edge_style([(u, v)], "active"),
                          update_node_properties(v, {"indegree": indegree[v]})])
        viz.step(f"{u} scheduled", 3, [update_node_style([u], "done")])

    if len(order) == len(ids):
        viz.step("All courses ordered", 6,
                 [show_comment("result", "answer: order " + ", ".join(order))])
    else:
        stuck = sorted(set(ids) - set(order))
        viz.step("Cycle detected", 6,
                 [update_node_style(stuck, "blocked"),
                  show_comment("result", "answer: cycle, cannot finish")])
    return viz.finish()
