"""Rendering backends behind the validation gate.

``render_trace`` is the one entry point the CLI uses: it refuses traces
with error diagnostics, interprets the style document (falling back to
defaults when it is missing or invalid), replays, lays out, and dispatches
to the requested emitter.
"""

from __future__ import annotations

from .. import rsl as rsl_mod
from .. import tracejson
from ..errors import TraceValidationError
from .bundle import Bundle, ManifestEntry, write_bundle
from .frames import Frame, FrameSet, build_frames
from .player import emit_player_bundle, find_player_assets
from .svg import emit_svg
from .tikz import emit_tikz

BACKENDS = ("tikz", "svg", "player")


def render_trace(trace: tracejson.Trace | bytes | str | dict, rsl_doc, backend: str,
                 out_dir, lenient: bool = False, player_assets=None) -> Bundle:
    """Validate, interpret RSL, replay, lay out, and emit one bundle."""
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {', '.join(BACKENDS)}")
    if not isinstance(trace, tracejson.Trace):
        parsed, report = tracejson.validate_document(trace)
        if parsed is None or not report.valid:
            raise TraceValidationError(report.errors)
        trace = parsed
    else:
        report = tracejson.validate_trace(trace)
        if not report.valid:
            raise TraceValidationError(report.errors)

    features = rsl_mod.extract_features(trace)
    config = rsl_mod.interpret_rsl(rsl_doc, features, lenient=lenient)

    if backend == "player":
        raw = rsl_doc
        if isinstance(raw, (bytes, str)):
            import json
            try:
                raw = json.loads(raw)
            except Exception:
                raw = None
        if raw is not None and not rsl_mod.validate_rsl(raw).valid:
            raw = None
        return emit_player_bundle(trace, raw, out_dir, assets_dir=player_assets)

    frames = build_frames(trace, config)
    if backend == "tikz":
        return emit_tikz(frames, config, out_dir)
    return emit_svg(frames, config, out_dir)


__all__ = [
    "BACKENDS", "Bundle", "ManifestEntry", "Frame", "FrameSet", "build_frames",
    "emit_tikz", "emit_svg", "emit_player_bundle", "find_player_assets",
    "render_trace", "write_bundle",
]
