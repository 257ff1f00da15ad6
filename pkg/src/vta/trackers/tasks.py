"""Task files: the benchmark input format.

A task file is a small text header (title line, metadata bullets) followed
by an ``input_data = {...}`` block in a relaxed literal form (JSON or
Python-style). Graph inputs normalize to node/edge records with explicit
``directed`` flags.

Example shape::

    Algorithm Snippet (Course Schedule):

    - LeetCode Problem ID: 207
    - Difficulty: Medium
    - Goal: Generate `graph_tracker.py`
    - User Request: Create visualization tracker
                   for "Course Schedule (Graph)"

    - Input:
    input_data = {
      "graph": {"nodes": [...], "edges": [...]},
      "source": "A"
    }
"""

from __future__ import annotations

import ast
import json
import re
from dataclasses import dataclass, field

from ..errors import MalformedTask

INPUT_KINDS = ("array", "graph", "matrix", "pairs")

_TITLE = re.compile(r"^\s*Algorithm Snippet\s*\((?P<name>.+)\)\s*:\s*$")
_BULLET = re.compile(r"^-\s*(?P<key>[A-Za-z][A-Za-z0-9 _]*?)\s*:\s*(?P<value>.*)$")
_FAMILY_HINT = re.compile(r"\(([^()]+)\)\s*\"?\s*$")

FAMILIES = ("Array", "DP", "Sorting", "Graph", "Tree", "Hashtable")


@dataclass(frozen=True)
class TaskSpec:
    name: str
    problem_id: int | None
    difficulty: str
    family: str
    goal: str
    user_request: str
    input_kind: str
    input_data: dict
    source: str | None = None
    tracker: str | None = None
    extras: dict = field(default_factory=dict)


def _parse_literal(text: str, line: int):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        pass
    normalized = re.sub(r"\btrue\b", "True", text)
    normalized = re.sub(r"\bfalse\b", "False", normalized)
    normalized = re.sub(r"\bnull\b", "None", normalized)
    try:
        return ast.literal_eval(normalized)
    except (ValueError, SyntaxError) as exc:
        raise MalformedTask(f"cannot parse input_data literal: {exc}", line)


def _normalize_graph(graph, line: int) -> dict:
    if not isinstance(graph, dict):
        raise MalformedTask("graph input must be an object", line)
    nodes = []
    ids = set()
    for record in graph.get("nodes", []):
        if isinstance(record, str):
            record = {"id": record}
        if not isinstance(record, dict) or "id" not in record:
            raise MalformedTask("graph nodes need an id", line)
        node_id = str(record["id"])
        if node_id in ids:
            raise MalformedTask(f"duplicate graph node {node_id!r}", line)
        ids.add(node_id)
        nodes.append({"id": node_id, "label": str(record.get("label", node_id))})
    edges = []
    for record in graph.get("edges", []):
        if not isinstance(record, dict) or "from" not in record or "to" not in record:
            raise MalformedTask("graph edges need from/to", line)
        src, dst = str(record["from"]), str(record["to"])
        if src not in ids or dst not in ids:
            raise MalformedTask(f"edge {src!r}->{dst!r} references a missing node", line)
        edge = {"from": src, "to": dst, "directed": bool(record.get("directed", False))}
        if record.get("weight") is not None:
            edge["weight"] = record["weight"]
        edges.append(edge)
    return {"nodes": nodes, "edges": edges}


def _detect_family(bullets: dict[str, str], user_request: str, input_kind: str) -> str:
    explicit = bullets.get("family")
    if explicit:
        return explicit.strip()
    hint = _FAMILY_HINT.search(user_request.strip().strip('"'))
    if hint:
        candidate = hint.group(1).strip()
        for family in FAMILIES:
            if candidate.lower() == family.lower():
                return family
    return {"graph": "Graph", "array": "Array", "matrix": "DP", "pairs": "Hashtable"}[input_kind]


def parse_task_file(text: str) -> TaskSpec:
    lines = text.splitlines()
    name = ""
    bullets: dict[str, str] = {}
    last_key: str | None = None
    input_start: int | None = None

    for i, raw in enumerate(lines):
        line = raw.rstrip()
        if not line.strip():
            continue
        title = _TITLE.match(line)
        if title and not name:
            name = title.group("name").strip()
            continue
        bullet = _BULLET.match(line.strip())
        if bullet:
            key = bullet.group("key").strip().lower()
            if key == "input":
                input_start = i + 1
                break
            bullets[key] = bullet.group("value").strip()
            last_key = key
            continue
        if last_key is not None:
            bullets[last_key] = (bullets[last_key] + " " + line.strip()).strip()

    if input_start is None:
        raise MalformedTask("no '- Input:' section found", len(lines))

    block = "\n".join(lines[input_start:])
    eq = block.find("=")
    if "input_data" not in block or eq < 0:
        raise MalformedTask("input section must assign input_data", input_start + 1)
    data = _parse_literal(block[eq + 1:].strip(), input_start + 1)
    if not isinstance(data, dict):
        raise MalformedTask("input_data must be an object", input_start + 1)

    kinds = [k for k in INPUT_KINDS if k in data]
    if len(kinds) != 1:
        raise MalformedTask(
            f"input_data must contain exactly one of {', '.join(INPUT_KINDS)}; "
            f"found {kinds or 'none'}", input_start + 1)
    kind = kinds[0]
    payload = {kind: data[kind]}
    if kind == "graph":
        payload["graph"] = _normalize_graph(data["graph"], input_start + 1)

    extras = {k: v for k, v in data.items() if k not in (kind, "source")}
    source = data.get("source")
    user_request = bullets.get("user request", "")

    problem_id: int | None = None
    raw_id = bullets.get("leetcode problem id")
    if raw_id:
        digits = re.search(r"\d+", raw_id)
        problem_id = int(digits.group()) if digits else None

    return TaskSpec(
        name=name or user_request or "task",
        problem_id=problem_id,
        difficulty=bullets.get("difficulty", ""),
        family=_detect_family(bullets, user_request, kind),
        goal=bullets.get("goal", ""),
        user_request=user_request,
        input_kind=kind,
        input_data=payload,
        source=str(source) if source is not None else None,
        tracker=bullets.get("tracker"),
        extras=extras,
    )


def parse_task_path(path) -> TaskSpec:
    from pathlib import Path
    return parse_task_file(Path(path).read_text(encoding="utf-8"))
