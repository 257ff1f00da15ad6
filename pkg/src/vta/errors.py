"""Exception types shared across the toolkit.

Operation application is partial: an operation that references a missing
target fails with an :class:`OperationError` subclass instead of returning
a state. Everything above the algebra (validation, rendering, trackers,
CLI) reports failures through these types or through diagnostics.
"""

from __future__ import annotations


class OperationError(Exception):
    """An operation could not be applied to the given state."""

    code = "OPERATION_ERROR"

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.message = message
        self.path = path


class TargetNotFound(OperationError):
    code = "TARGET_NOT_FOUND"


class IndexOutOfRange(OperationError):
    code = "INDEX_OUT_OF_RANGE"


class DuplicateId(OperationError):
    code = "DUPLICATE_ID"


class StructuralViolation(OperationError):
    code = "STRUCTURAL_VIOLATION"


class ViewKindMismatch(OperationError):
    code = "VIEW_KIND_MISMATCH"


class WordApplyError(Exception):
    """A word failed at op position ``position`` (0-based) with ``cause``."""

    def __init__(self, position: int, cause: OperationError):
        super().__init__(f"op {position}: {cause.message}")
        self.position = position
        self.cause = cause


class TraceReplayError(Exception):
    """Replay hit a partial-transformer failure (skipped validation only)."""

    def __init__(self, delta_index: int, position: int, cause: OperationError, path: str):
        super().__init__(f"delta {delta_index}, op {position}: {cause.message}")
        self.delta_index = delta_index
        self.position = position
        self.cause = cause
        self.path = path


class TraceValidationError(Exception):
    """A trace with error diagnostics reached a validation-gated stage."""

    def __init__(self, diagnostics):
        codes = ", ".join(sorted({d.code for d in diagnostics})) or "unknown"
        super().__init__(f"trace failed validation: {codes}")
        self.diagnostics = list(diagnostics)


class CapacityExceeded(Exception):
    """Content cannot fit its panel even at the minimum rescale factor."""


class MissingPlayerAssets(Exception):
    """The player bundle backend could not locate the prebuilt web assets."""


class MalformedTask(Exception):
    """A task file does not follow the expected layout."""

    def __init__(self, message: str, line: int = 0):
        suffix = f" (line {line})" if line else ""
        super().__init__(message + suffix)
        self.line = line


class IncompatibleInput(Exception):
    """A tracker was asked to run on input of the wrong sort or shape."""


class InternalInstrumentationFault(Exception):
    """A tracker emitted operations its own shadow state rejects."""
