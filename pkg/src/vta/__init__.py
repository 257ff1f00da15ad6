"""Deterministic algorithm-visualization toolkit.

Pipeline: reference trackers emit VTA-JSON 5.0 traces; the validator gates
them with path-addressed diagnostics; the RSL interpreter resolves style
configuration; deterministic layout engines place every element without
collisions; backends compile the replayed frames into TikZ frame sets, SVG
flipbooks, or a client-side player bundle.
"""

from . import core
from .diagnostics import Diagnostic, ValidationReport, format_repair_block
from .tracejson import (ParseResult, Trace, parse_trace, replay_trace, serialize_trace,
                        state_to_doc, trace_to_doc, validate_document, validate_trace)

__version__ = "0.1.0"

__all__ = [
    "core", "Diagnostic", "ValidationReport", "format_repair_block",
    "ParseResult", "Trace", "parse_trace", "replay_trace", "serialize_trace",
    "state_to_doc", "trace_to_doc", "validate_document", "validate_trace",
    "__version__",
]
