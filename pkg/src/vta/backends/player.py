"""Player bundle emission: trace.json + rsl.json + the prebuilt web player.

The client replays the trace itself, so this backend writes no rendered
frames — just the canonical trace, the style document, and the static
player assets. Asset resolution order: explicit argument, the
VTA_PLAYER_ASSETS environment variable, then ./frontend/dist.
"""

from __future__ import annotations

import os
from pathlib import Path

from .. import rsl as rsl_mod
from .. import tracejson
from ..errors import MissingPlayerAssets, TraceValidationError
from .bundle import Bundle, write_bundle


def find_player_assets(explicit: str | Path | None = None) -> Path:
    """An explicit directory (argument, then env var) is authoritative;
    otherwise fall back to ./frontend/dist."""
    if explicit is not None:
        candidates = [Path(explicit)]
    elif os.environ.get("VTA_PLAYER_ASSETS"):
        candidates = [Path(os.environ["VTA_PLAYER_ASSETS"])]
    else:
        candidates = [Path("frontend") / "dist"]
    for candidate in candidates:
        if (candidate / "index.html").is_file():
            return candidate
    tried = ", ".join(str(c) for c in candidates)
    raise MissingPlayerAssets(
        f"no player assets found (need an index.html; tried: {tried}); "
        "build the frontend or pass --player-assets")


def emit_player_bundle(trace: tracejson.Trace, rsl_doc, out_dir,
                       assets_dir: str | Path | None = None) -> Bundle:
    """Copy canonical trace.json, rsl.json, and the player assets.

    The validation gate runs here too: a trace with error diagnostics is
    refused before anything is written.
    """
    report = tracejson.validate_trace(trace)
    if not report.valid:
        raise TraceValidationError(report.errors)
    assets = find_player_assets(assets_dir)

    files: dict[str, bytes] = {}
    files["trace.json"] = tracejson.serialize_trace(trace)
    if rsl_doc is None:
        rsl_doc = rsl_mod.default_rsl(rsl_mod.extract_features(trace))
    files["rsl.json"] = tracejson.canonical_json_bytes(rsl_doc)

    for path in sorted(assets.rglob("*")):
        if path.is_file():
            rel = path.relative_to(assets).as_posix()
            if rel == "manifest.json":
                continue
            files[rel] = path.read_bytes()
    return write_bundle(out_dir, files)
