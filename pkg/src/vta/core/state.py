"""The many-sorted visual state space.

A :class:`VisualState` holds one main data view (array, graph, tree,
hashtable or table), ordered auxiliary panels, a style table, pseudocode
lines and the currently highlighted line set. All types are immutable;
operations produce new states and never mutate inputs.

Scalar cell/label values are numbers, text, or ``None``. ``None`` stands
for "undefined" (unreached distance, unfilled table cell); the wire format
bans Infinity tokens, so backends render ``None`` with a placeholder glyph
instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

Scalar = int | float | str | None

# Reserved style key; always present in a state's style table.
IDLE_STYLE_KEY = "idle"

ARRAY = "array"
GRAPH = "graph"
TREE = "tree"
HASHTABLE = "hashtable"
TABLE = "table"

VIEW_KINDS = (ARRAY, GRAPH, TREE, HASHTABLE, TABLE)

AUX_LIST = "list"
AUX_MAP = "map"


@dataclass(frozen=True)
class StyleDef:
    """Fill/stroke/text colors for one style key ("#RRGGBB" strings)."""

    fill: str = "#F0F0F0"
    stroke: str = "#666666"
    text: str = "#FFFFFF"


DEFAULT_IDLE_STYLE = StyleDef(fill="#2C3E50", stroke="#7F8C8D", text="#FFFFFF")


@dataclass(frozen=True)
class ArrayElement:
    index: int
    value: Scalar
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class ArrayView:
    """Contiguous 0..n-1 indexed cells plus optional named pointers.

    A pointer maps a name to an element index, or to ``None`` when it is
    explicitly detached.
    """

    elements: tuple[ArrayElement, ...] = ()
    pointers: dict[str, int | None] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return ARRAY

    def check(self) -> list[str]:
        problems = []
        for i, el in enumerate(self.elements):
            if el.index != i:
                problems.append(f"element {i} carries index {el.index}; indices must be contiguous 0..n-1")
        n = len(self.elements)
        for name, target in self.pointers.items():
            if target is not None and not (0 <= target < n):
                problems.append(f"pointer {name!r} targets {target}, outside 0..{n - 1}")
        return problems


@dataclass(frozen=True)
class GraphNode:
    id: str
    label: str
    style_key: str = IDLE_STYLE_KEY
    properties: dict[str, Scalar] = field(default_factory=dict)


@dataclass(frozen=True)
class GraphEdge:
    src: str
    dst: str
    weight: int | float | None = None
    directed: bool = False
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class GraphView:
    nodes: tuple[GraphNode, ...] = ()
    edges: tuple[GraphEdge, ...] = ()

    @property
    def kind(self) -> str:
        return GRAPH

    def node_ids(self) -> set[str]:
        return {n.id for n in self.nodes}

    def check(self) -> list[str]:
        problems = []
        seen: set[str] = set()
        for n in self.nodes:
            if n.id in seen:
                problems.append(f"duplicate node id {n.id!r}")
            seen.add(n.id)
        for i, e in enumerate(self.edges):
            for endpoint in (e.src, e.dst):
                if endpoint not in seen:
                    problems.append(f"edge {i} references missing node {endpoint!r}")
        return problems


@dataclass(frozen=True)
class TreeNode:
    id: str
    label: str
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class TreeView:
    """Rooted ordered tree.

    ``children`` maps a parent id to its ordered child slots. A slot may
    hold ``None``: binary trackers use slot 0 for the left child and slot 1
    for the right, and a lone right child is stored as ``(None, id)`` so
    rotations and in-order walks keep their positional meaning. Trailing
    ``None`` slots are trimmed.
    """

    nodes: tuple[TreeNode, ...] = ()
    children: dict[str, tuple[str | None, ...]] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return TREE

    def node_ids(self) -> set[str]:
        return {n.id for n in self.nodes}

    def parent_map(self) -> dict[str, str]:
        parents: dict[str, str] = {}
        for parent, slots in self.children.items():
            for child in slots:
                if child is not None:
                    parents[child] = parent
        return parents

    def roots(self) -> list[str]:
        parents = self.parent_map()
        return [n.id for n in self.nodes if n.id not in parents]

    def check(self) -> list[str]:
        problems = []
        ids = set()
        for n in self.nodes:
            if n.id in ids:
                problems.append(f"duplicate node id {n.id!r}")
            ids.add(n.id)
        child_seen: set[str] = set()
        for parent, slots in self.children.items():
            if parent not in ids:
                problems.append(f"children listed for missing node {parent!r}")
            if slots and slots[-1] is None:
                problems.append(f"child list of {parent!r} has trailing empty slots")
            for child in slots:
                if child is None:
                    continue
                if child not in ids:
                    problems.append(f"missing child node {child!r}")
                elif child in child_seen:
                    problems.append(f"node {child!r} attached to more than one parent")
                child_seen.add(child)
        # Walk from roots; anything unreached sits on a cycle or floats.
        parents = self.parent_map()
        roots = [n.id for n in self.nodes if n.id not in parents]
        if self.nodes and not roots:
            problems.append("tree has no root (parent relation is cyclic)")
        reached: set[str] = set()
        stack = list(roots)
        while stack:
            node = stack.pop()
            if node in reached:
                problems.append(f"cycle through node {node!r}")
                break
            reached.add(node)
            stack.extend(c for c in self.children.get(node, ()) if c is not None)
        if self.nodes and len(roots) > 1:
            problems.append(f"tree has {len(roots)} roots; expected exactly one")
        return problems


@dataclass(frozen=True)
class BucketEntry:
    key: str | int
    value: Scalar
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class HashtableView:
    buckets: tuple[tuple[BucketEntry, ...], ...] = ((),)

    @property
    def kind(self) -> str:
        return HASHTABLE

    @property
    def capacity(self) -> int:
        return len(self.buckets)

    def keys(self) -> list[str | int]:
        return [entry.key for bucket in self.buckets for entry in bucket]

    def check(self) -> list[str]:
        problems = []
        if self.capacity < 1:
            problems.append("capacity must be >= 1")
        seen: set[str | int] = set()
        for b, bucket in enumerate(self.buckets):
            for entry in bucket:
                if entry.key in seen:
                    problems.append(f"duplicate key {entry.key!r} (bucket {b})")
                seen.add(entry.key)
        return problems


@dataclass(frozen=True)
class TableCell:
    value: Scalar = None
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class CellRef:
    row: int
    col: int


@dataclass(frozen=True)
class Dependency:
    src: CellRef
    dst: CellRef


@dataclass(frozen=True)
class TableView:
    """Dense rows x cols grid. ``dependencies`` are transient overlay
    arrows that live for exactly one delta boundary."""

    rows: int = 1
    cols: int = 1
    cells: tuple[tuple[TableCell, ...], ...] = ((TableCell(),),)
    row_labels: tuple[str, ...] | None = None
    col_labels: tuple[str, ...] | None = None
    dependencies: tuple[Dependency, ...] = ()

    @property
    def kind(self) -> str:
        return TABLE

    def in_range(self, row: int, col: int) -> bool:
        return 0 <= row < self.rows and 0 <= col < self.cols

    def check(self) -> list[str]:
        problems = []
        if self.rows < 1 or self.cols < 1:
            problems.append("rows and cols must be >= 1")
        if len(self.cells) != self.rows:
            problems.append(f"grid has {len(self.cells)} rows, header says {self.rows}")
        for r, row in enumerate(self.cells):
            if len(row) != self.cols:
                problems.append(f"row {r} has {len(row)} cells, header says {self.cols}")
        if self.row_labels is not None and len(self.row_labels) != self.rows:
            problems.append("row_labels length does not match rows")
        if self.col_labels is not None and len(self.col_labels) != self.cols:
            problems.append("col_labels length does not match cols")
        return problems


MainView = ArrayView | GraphView | TreeView | HashtableView | TableView


@dataclass(frozen=True)
class AuxEntry:
    value: Scalar
    key: Scalar = None
    style_key: str = IDLE_STYLE_KEY


@dataclass(frozen=True)
class AuxView:
    name: str
    kind: str = AUX_LIST
    entries: tuple[AuxEntry, ...] = ()

    def check(self) -> list[str]:
        if self.kind not in (AUX_LIST, AUX_MAP):
            return [f"auxiliary view {self.name!r} has unknown kind {self.kind!r}"]
        return []


@dataclass(frozen=True)
class Anchor:
    """Reference to a view element a comment attaches to.

    ``view`` is ``"main"`` or an auxiliary view name; ``element`` is an
    element id (graph/tree), index (array/aux/bucket), cell reference
    (table), or ``None`` to anchor the whole view.
    """

    view: str = "main"
    element: str | int | CellRef | None = None


@dataclass(frozen=True)
class Comment:
    id: str
    text: str
    anchor: Anchor = Anchor()


@dataclass(frozen=True)
class VisualState:
    main_view: MainView
    auxiliary_views: tuple[AuxView, ...] = ()
    styles: dict[str, StyleDef] = field(default_factory=lambda: {IDLE_STYLE_KEY: DEFAULT_IDLE_STYLE})
    pseudocode: tuple[str, ...] = ()
    highlight: frozenset[int] = frozenset()
    comments: tuple[Comment, ...] = ()

    def aux(self, name: str) -> AuxView | None:
        for view in self.auxiliary_views:
            if view.name == name:
                return view
        return None

    def resolve_style(self, style_key: str) -> StyleDef:
        """Unknown keys fall back to the reserved "idle" entry."""
        if style_key in self.styles:
            return self.styles[style_key]
        return self.styles.get(IDLE_STYLE_KEY, DEFAULT_IDLE_STYLE)

    def referenced_style_keys(self) -> set[str]:
        keys: set[str] = set()
        view = self.main_view
        if isinstance(view, ArrayView):
            keys.update(el.style_key for el in view.elements)
        elif isinstance(view, GraphView):
            keys.update(n.style_key for n in view.nodes)
            keys.update(e.style_key for e in view.edges)
        elif isinstance(view, TreeView):
            keys.update(n.style_key for n in view.nodes)
        elif isinstance(view, HashtableView):
            keys.update(e.style_key for b in view.buckets for e in b)
        elif isinstance(view, TableView):
            keys.update(c.style_key for row in view.cells for c in row)
        for aux in self.auxiliary_views:
            keys.update(e.style_key for e in aux.entries)
        return keys

    def check(self) -> list[str]:
        problems = self.main_view.check()
        names = set()
        for aux in self.auxiliary_views:
            if aux.name in names:
                problems.append(f"duplicate auxiliary view name {aux.name!r}")
            names.add(aux.name)
            problems.extend(aux.check())
        if IDLE_STYLE_KEY not in self.styles:
            problems.append('style table is missing the reserved "idle" key')
        if self.pseudocode:
            for line in self.highlight:
                if not (1 <= line <= len(self.pseudocode)):
                    problems.append(f"highlight line {line} outside 1..{len(self.pseudocode)}")
        return problems


def with_idle_style(styles: dict[str, StyleDef]) -> dict[str, StyleDef]:
    """Return a copy of ``styles`` guaranteed to carry the "idle" entry."""
    out = dict(styles)
    out.setdefault(IDLE_STYLE_KEY, DEFAULT_IDLE_STYLE)
    return out


def clear_transients(state: VisualState) -> VisualState:
    """Drop overlays that persist for exactly one delta boundary."""
    view = state.main_view
    if isinstance(view, TableView) and view.dependencies:
        return replace(state, main_view=replace(view, dependencies=()))
    return state


def array_view(values, pointers: dict[str, int | None] | None = None,
               style_key: str = IDLE_STYLE_KEY) -> ArrayView:
    elements = tuple(ArrayElement(i, v, style_key) for i, v in enumerate(values))
    return ArrayView(elements=elements, pointers=dict(pointers or {}))
