"""Structured diagnostics and the repair-block text format.

Every validation finding is a :class:`Diagnostic` with a stable code, a
severity, and a JSON-pointer path that resolves inside the offending
document. Validators never raise; they accumulate diagnostics into a
:class:`ValidationReport`.
"""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"

# Stable diagnostic codes. Error-severity codes first.
SYNTAX_ERROR = "SYNTAX_ERROR"
VERSION_NOT_STRING = "VERSION_NOT_STRING"
UNSUPPORTED_VERSION = "UNSUPPORTED_VERSION"
MISSING_FIELD = "MISSING_FIELD"
BAD_TYPE = "BAD_TYPE"
OPS_NOT_2D = "OPS_NOT_2D"
BAD_HIGHLIGHT_TYPE = "BAD_HIGHLIGHT_TYPE"
HIGHLIGHT_OUT_OF_RANGE = "HIGHLIGHT_OUT_OF_RANGE"
UNKNOWN_OP = "UNKNOWN_OP"
BAD_PARAMS = "BAD_PARAMS"
INFINITY_TOKEN = "INFINITY_TOKEN"
DANGLING_EDGE = "DANGLING_EDGE"
DUPLICATE_ID = "DUPLICATE_ID"
BAD_STATE = "BAD_STATE"
UNKNOWN_EXTENSION = "UNKNOWN_EXTENSION"
STEP_APPLY_FAILED = "STEP_APPLY_FAILED"
OUT_OF_BOUNDS = "OUT_OF_BOUNDS"
UNKNOWN_ENUM = "UNKNOWN_ENUM"
BAD_COLOR = "BAD_COLOR"

# Warning-severity codes.
UNKNOWN_STYLE_KEY = "UNKNOWN_STYLE_KEY"
MISSING_EXTENSION = "MISSING_EXTENSION"
GROUP_TARGET_CONFLICT = "GROUP_TARGET_CONFLICT"
UNKNOWN_FIELD = "UNKNOWN_FIELD"
DENSITY_RESCALE = "DENSITY_RESCALE"
LAYOUT_FALLBACK = "LAYOUT_FALLBACK"

# Collection stops once this many diagnostics have accumulated.
DIAGNOSTIC_CAP = 100

# Default number of entries rendered into a repair block.
REPAIR_BLOCK_LIMIT = 3


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    path: str
    message: str
    delta_index: int | None = None

    def to_doc(self) -> dict:
        doc = {
            "severity": self.severity,
            "code": self.code,
            "path": self.path,
            "message": self.message,
        }
        if self.delta_index is not None:
            doc["delta_index"] = self.delta_index
        return doc


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    diagnostics: tuple[Diagnostic, ...]

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == ERROR)

    @property
    def warnings(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == WARNING)

    def to_doc(self) -> list[dict]:
        return [d.to_doc() for d in self.diagnostics]


class Collector:
    """Accumulates diagnostics up to the hard cap."""

    def __init__(self, cap: int = DIAGNOSTIC_CAP):
        self.cap = cap
        self.items: list[Diagnostic] = []

    @property
    def full(self) -> bool:
        return len(self.items) >= self.cap

    def add(self, severity: str, code: str, path: str, message: str,
            delta_index: int | None = None) -> None:
        if not self.full:
            self.items.append(Diagnostic(severity, code, path, message, delta_index))

    def error(self, code: str, path: str, message: str, delta_index: int | None = None) -> None:
        self.add(ERROR, code, path, message, delta_index)

    def warning(self, code: str, path: str, message: str, delta_index: int | None = None) -> None:
        self.add(WARNING, code, path, message, delta_index)

    def has_errors(self) -> bool:
        return any(d.severity == ERROR for d in self.items)

    def report(self) -> ValidationReport:
        return ValidationReport(valid=not self.has_errors(), diagnostics=tuple(self.items))


def escape_pointer_token(token: str) -> str:
    return token.replace("~", "~0").replace("/", "~1")


def join_path(*segments) -> str:
    """Build a JSON-pointer path from raw segments (ints pass through)."""
    parts = []
    for seg in segments:
        if isinstance(seg, int):
            parts.append(str(seg))
        else:
            parts.append(escape_pointer_token(str(seg)))
    return "/" + "/".join(parts) if parts else ""


def resolve_pointer(doc, path: str):
    """Navigate ``doc`` by a JSON pointer; raises KeyError/IndexError on miss."""
    if path in ("", "/"):
        return doc
    node = doc
    for raw in path.lstrip("/").split("/"):
        token = raw.replace("~1", "/").replace("~0", "~")
        if isinstance(node, list):
            node = node[int(token)]
        elif isinstance(node, dict):
            node = node[token]
        else:
            raise KeyError(f"cannot descend into {type(node).__name__} at {token!r}")
    return node


def format_repair_block(diagnostics, limit: int = REPAIR_BLOCK_LIMIT) -> str:
    """Render error diagnostics as the plain-text block fed to repair agents.

    The block opens with the literal header line ``[Previous Error]``,
    followed by ``{error_type}: {error_message}`` and ``Location: {path}``
    per entry, capped at ``limit`` entries with a ``+N more`` trailer.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    items = list(diagnostics)
    if not items:
        return ""
    lines = ["[Previous Error]"]
    for diag in items[:limit]:
        lines.append(f"{diag.code}: {diag.message}")
        location = diag.path or "(document root)"
        if diag.delta_index is not None:
            lines.append(f"Location: {location} (delta {diag.delta_index})")
        else:
            lines.append(f"Location: {location}")
    if len(items) > limit:
        lines.append(f"+{len(items) - limit} more")
    return "\n".join(lines) + "\n"
