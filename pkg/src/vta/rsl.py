"""Rendering Style Language: validation, interpretation, feature extraction.

An RSL document has five top-level sections (``meta``, ``theme``,
``timeline``, ``layout``, ``rules``) plus optional free-form
``annotations``. Interpretation is total: any invalid document falls back
to the built-in defaults for the trace's data type, so rendering always
proceeds. Numeric parameters are bounded; out-of-bound values reject the
config in strict mode and are clamped in lenient mode.

RSL never touches trace semantics. ``interpret_rsl`` consumes only a
:class:`TraceFeatures` projection, so there is no channel through which a
style document could alter replay output.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import core
from .diagnostics import (BAD_COLOR, BAD_TYPE, Collector, OUT_OF_BOUNDS, UNKNOWN_ENUM,
                          UNKNOWN_FIELD, UNKNOWN_OP, ValidationReport, join_path)
from .tracejson import Trace

LAYOUT_TYPES = ("force_directed", "hierarchical", "circular", "grid", "matrix",
                "horizontal_array")

ANIMATION_VARIANTS = ("pulse", "glow", "shake", "fade", "morph")

# Numeric parameter bounds (inclusive).
BOUNDS: dict[str, tuple[float, float]] = {
    "transition": (0.1, 2.0),
    "pause": (0.0, 1.0),
    "node_spacing": (1.0, 10.0),
    "edge_curve": (-1.0, 1.0),
    "cell_size": (0.3, 2.0),
    "duration": (0.1, 2.0),
}

DEFAULT_THEME = {
    "background": "#1A1A1A",
    "text": "#FFFFFF",
    "primary": "#3498DB",
}

DEFAULT_TRANSITION = 0.5
DEFAULT_PAUSE = 0.3

# Default layout per data type, with default engine parameters.
DEFAULT_LAYOUTS: dict[str, tuple[str, dict]] = {
    core.ARRAY: ("horizontal_array", {"cell_size": 1.0, "node_spacing": 1.5}),
    core.GRAPH: ("force_directed", {"node_spacing": 2.0}),
    core.TREE: ("hierarchical", {"node_spacing": 1.5}),
    core.HASHTABLE: ("grid", {"cell_size": 1.0}),
    core.TABLE: ("matrix", {"cell_size": 1.0}),
}

# Which layout engines make sense for which main-view sort; anything else
# falls back to the sort's default engine with a warning.
COMPATIBLE_LAYOUTS: dict[str, tuple[str, ...]] = {
    core.ARRAY: ("horizontal_array", "grid", "circular"),
    core.GRAPH: ("force_directed", "circular", "hierarchical", "grid"),
    core.TREE: ("hierarchical", "circular"),
    core.HASHTABLE: ("grid", "matrix"),
    core.TABLE: ("matrix", "grid"),
}

# The op a family's default pulse rule attaches to.
_FAMILY_RULE_OP = {
    core.ARRAY: core.UPDATE_STYLE,
    core.GRAPH: core.UPDATE_NODE_STYLE,
    core.TREE: core.UPDATE_NODE_STYLE,
    core.HASHTABLE: core.INSERT_INTO_BUCKET,
    core.TABLE: core.UPDATE_TABLE_CELL,
}

_HEX_COLOR = re.compile(r"^#[0-9A-Fa-f]{6}$")


@dataclass(frozen=True)
class TraceFeatures:
    """Deterministic projection of a trace used to key style decisions."""

    family: str
    data_type: str
    scale: int
    frame_count: int
    ops_used: frozenset[str]


@dataclass(frozen=True)
class Canvas:
    width: float = 16.0
    height: float = 9.0
    margin: float = 0.5


@dataclass(frozen=True)
class AnimationDirective:
    variant: str
    duration: float | None = None
    emphasis: str | None = None


@dataclass(frozen=True)
class RenderConfig:
    """Resolved, bounded render-time configuration.

    Carries no trace content whatsoever: replay output is computed before
    and independently of anything in here.
    """

    theme: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_THEME))
    transition: float = DEFAULT_TRANSITION
    pause: float = DEFAULT_PAUSE
    layout_type: str = "horizontal_array"
    layout_params: dict[str, float] = field(default_factory=dict)
    animations: dict[str, AnimationDirective] = field(default_factory=dict)
    annotations: tuple = ()
    canvas: Canvas = Canvas()
    from_fallback: bool = False


def extract_features(trace: Trace) -> TraceFeatures:
    """Family, data type, element scale, frame count, and the op set."""
    view = trace.initial_state.main_view
    if isinstance(view, core.ArrayView):
        scale = len(view.elements)
    elif isinstance(view, (core.GraphView, core.TreeView)):
        scale = len(view.nodes)
    elif isinstance(view, core.HashtableView):
        scale = view.capacity
    else:
        scale = view.rows * view.cols
    ops_used = frozenset(op.op for delta in trace.deltas
                         for group in delta.groups for op in group)
    return TraceFeatures(family=trace.algorithm_family, data_type=view.kind,
                         scale=scale, frame_count=len(trace.deltas) + 1,
                         ops_used=ops_used)


def default_rsl(features: TraceFeatures) -> dict:
    """Built-in valid config for a data type (dark theme, family pulse rule)."""
    layout_type, params = DEFAULT_LAYOUTS[features.data_type]
    return {
        "meta": {"rsl_version": "0.1"},
        "theme": dict(DEFAULT_THEME),
        "timeline": {"transition": DEFAULT_TRANSITION, "pause": DEFAULT_PAUSE},
        "layout": {"main": {"type": layout_type, "params": dict(params)}},
        "rules": [{"when": {"op": _FAMILY_RULE_OP[features.data_type]},
                   "do": {"animation": {"variant": "pulse"}}}],
    }


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _check_color(value, path: str, out: Collector) -> None:
    if not isinstance(value, str) or not _HEX_COLOR.match(value):
        out.error(BAD_COLOR, path, 'colors must be "#RRGGBB" hex strings')


def _check_bounded(value, name: str, path: str, out: Collector) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        out.error(BAD_TYPE, path, f"{name} must be a number")
        return
    lo, hi = BOUNDS[name]
    if not (lo <= value <= hi):
        out.error(OUT_OF_BOUNDS, path, f"{name} must lie in [{lo}, {hi}]")


def _validate_rules(rules, out: Collector) -> None:
    if not isinstance(rules, list):
        out.error(BAD_TYPE, "/rules", "rules must be an array")
        return
    for i, rule in enumerate(rules):
        path = join_path("rules", i)
        if not isinstance(rule, dict):
            out.error(BAD_TYPE, path, "rule must be an object")
            continue
        when = rule.get("when")
        if not isinstance(when, dict) or "op" not in when:
            out.error(BAD_TYPE, join_path("rules", i, "when"),
                      "rule needs a when.op selector")
        else:
            op = when["op"]
            if not isinstance(op, str) or not core.is_known_op(op):
                out.error(UNKNOWN_OP, join_path("rules", i, "when", "op"),
                          f"{op!r} is not a catalogue op code (semantic labels are not allowed)")
            style_filter = when.get("styleKey")
            if style_filter is not None and not isinstance(style_filter, str):
                out.error(BAD_TYPE, join_path("rules", i, "when", "styleKey"),
                          "styleKey filter must be a string")
            for name in sorted(set(when) - {"op", "styleKey"}):
                out.warning(UNKNOWN_FIELD, join_path("rules", i, "when", name),
                            f"ignoring unknown selector field {name!r}")
        do = rule.get("do")
        if not isinstance(do, dict):
            out.error(BAD_TYPE, join_path("rules", i, "do"), "rule needs a do block")
            continue
        animation = do.get("animation")
        if animation is not None:
            if not isinstance(animation, dict):
                out.error(BAD_TYPE, join_path("rules", i, "do", "animation"),
                          "animation must be an object")
            else:
                variant = animation.get("variant")
                if variant not in ANIMATION_VARIANTS:
                    out.error(UNKNOWN_ENUM, join_path("rules", i, "do", "animation", "variant"),
                              f"variant must be one of {', '.join(ANIMATION_VARIANTS)}")
                if "duration" in animation:
                    _check_bounded(animation["duration"], "duration",
                                   join_path("rules", i, "do", "animation", "duration"), out)
        if "emphasis" in do:
            _check_color(do["emphasis"], join_path("rules", i, "do", "emphasis"), out)


def validate_rsl(doc) -> ValidationReport:
    """Structural and semantic checks; never raises."""
    out = Collector()
    if not isinstance(doc, dict):
        out.error(BAD_TYPE, "", "RSL document must be a JSON object")
        return out.report()

    meta = doc.get("meta")
    if meta is not None:
        if not isinstance(meta, dict):
            out.error(BAD_TYPE, "/meta", "meta must be an object")
        elif "rsl_version" in meta and not isinstance(meta["rsl_version"], str):
            out.error(BAD_TYPE, "/meta/rsl_version", "rsl_version must be a string")

    theme = doc.get("theme")
    if theme is not None:
        if not isinstance(theme, dict):
            out.error(BAD_TYPE, "/theme", "theme must be an object")
        else:
            for name in sorted(theme):
                _check_color(theme[name], join_path("theme", name), out)

    timeline = doc.get("timeline")
    if timeline is not None:
        if not isinstance(timeline, dict):
            out.error(BAD_TYPE, "/timeline", "timeline must be an object")
        else:
            for name in ("transition", "pause"):
                if name in timeline:
                    _check_bounded(timeline[name], name, join_path("timeline", name), out)
            for name in sorted(set(timeline) - {"transition", "pause"}):
                out.warning(UNKNOWN_FIELD, join_path("timeline", name),
                            f"ignoring unknown timeline field {name!r}")

    layout = doc.get("layout")
    if layout is not None:
        if not isinstance(layout, dict) or not isinstance(layout.get("main"), dict):
            out.error(BAD_TYPE, "/layout", "layout must be an object with a main block")
        else:
            main = layout["main"]
            layout_type = main.get("type")
            if layout_type not in LAYOUT_TYPES:
                out.error(UNKNOWN_ENUM, "/layout/main/type",
                          f"layout type must be one of {', '.join(LAYOUT_TYPES)}")
            params = main.get("params", {})
            if not isinstance(params, dict):
                out.error(BAD_TYPE, "/layout/main/params", "params must be an object")
            else:
                for name in sorted(params):
                    if name in ("node_spacing", "edge_curve", "cell_size"):
                        _check_bounded(params[name], name,
                                       join_path("layout", "main", "params", name), out)
                    else:
                        out.warning(UNKNOWN_FIELD, join_path("layout", "main", "params", name),
                                    f"ignoring unknown layout param {name!r}")

    if "rules" in doc:
        _validate_rules(doc["rules"], out)

    if "annotations" in doc and not isinstance(doc["annotations"], list):
        out.error(BAD_TYPE, "/annotations", "annotations must be an array")

    known = {"meta", "theme", "timeline", "layout", "rules", "annotations"}
    for name in sorted(set(doc) - known):
        out.warning(UNKNOWN_FIELD, join_path(name), f"ignoring unknown field {name!r}")
    return out.report()


# ---------------------------------------------------------------------------
# Interpretation
# ---------------------------------------------------------------------------

def _clamp(value: float, name: str) -> float:
    lo, hi = BOUNDS[name]
    return min(max(float(value), lo), hi)


def clamp_bounds(doc: dict) -> dict:
    """Lenient mode: pull every bounded numeric back into its range."""
    out = json.loads(json.dumps(doc))
    timeline = out.get("timeline")
    if isinstance(timeline, dict):
        for name in ("transition", "pause"):
            value = timeline.get(name)
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                timeline[name] = _clamp(value, name)
    layout = out.get("layout")
    if isinstance(layout, dict) and isinstance(layout.get("main"), dict):
        params = layout["main"].get("params")
        if isinstance(params, dict):
            for name in ("node_spacing", "edge_curve", "cell_size"):
                value = params.get(name)
                if isinstance(value, (int, float)) and not isinstance(value, bool):
                    params[name] = _clamp(value, name)
    rules = out.get("rules")
    if isinstance(rules, list):
        for rule in rules:
            if isinstance(rule, dict) and isinstance(rule.get("do"), dict):
                animation = rule["do"].get("animation")
                if isinstance(animation, dict):
                    value = animation.get("duration")
                    if isinstance(value, (int, float)) and not isinstance(value, bool):
                        animation["duration"] = _clamp(value, "duration")
    return out


def _resolve(doc: dict, features: TraceFeatures, from_fallback: bool) -> RenderConfig:
    """Fill a validated document into a RenderConfig, defaulting absent fields."""
    default_type, default_params = DEFAULT_LAYOUTS[features.data_type]

    theme = dict(DEFAULT_THEME)
    theme.update(doc.get("theme") or {})

    timeline = doc.get("timeline") or {}
    transition = float(timeline.get("transition", DEFAULT_TRANSITION))
    pause = float(timeline.get("pause", DEFAULT_PAUSE))

    layout = (doc.get("layout") or {}).get("main") or {}
    layout_type = layout.get("type", default_type)
    params = dict(default_params)
    params.update(layout.get("params") or {})
    params = {name: float(value) for name, value in params.items()
              if name in ("node_spacing", "edge_curve", "cell_size")}

    animations: dict[str, AnimationDirective] = {}
    for rule in doc.get("rules") or []:
        op = rule["when"]["op"]
        animation = rule.get("do", {}).get("animation") or {}
        directive = AnimationDirective(
            variant=animation.get("variant", "pulse"),
            duration=animation.get("duration"),
            emphasis=rule.get("do", {}).get("emphasis"),
        )
        # Later rules override earlier directives for the same op.
        animations[op] = directive

    return RenderConfig(theme=theme, transition=transition, pause=pause,
                        layout_type=layout_type, layout_params=params,
                        animations=animations,
                        annotations=tuple(doc.get("annotations") or ()),
                        from_fallback=from_fallback)


def interpret_rsl(doc, features: TraceFeatures, lenient: bool = False) -> RenderConfig:
    """Total interpretation: any invalid input yields the default config.

    ``doc`` may be a parsed object, raw bytes/text, or None. In lenient
    mode out-of-bound numerics are clamped before validation; every other
    defect still triggers the full fallback.
    """
    if doc is None:
        return _resolve(default_rsl(features), features, from_fallback=True)
    if isinstance(doc, (bytes, str)):
        try:
            if isinstance(doc, bytes):
                doc = doc.decode("utf-8")
            doc = json.loads(doc)
        except (UnicodeDecodeError, json.JSONDecodeError):
            return _resolve(default_rsl(features), features, from_fallback=True)
    if lenient and isinstance(doc, dict):
        doc = clamp_bounds(doc)
    report = validate_rsl(doc)
    if not report.valid:
        return _resolve(default_rsl(features), features, from_fallback=True)
    return _resolve(doc, features, from_fallback=False)
