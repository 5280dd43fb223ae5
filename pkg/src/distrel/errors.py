"""Exception types shared across the package."""

from __future__ import annotations


class DistrelError(Exception):
    """Base class for all package errors."""


class InputError(DistrelError, ValueError):
    """An argument names something that does not exist or is malformed."""


class CapacityError(DistrelError):
    """An enumeration would exceed the configured tuple cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} tuples exceeds cap {cap}")
        self.size = size
        self.cap = cap


class ParseError(DistrelError):
    """A document could not be parsed.

    ``line``/``column`` are 1-based when known; ``path`` locates the offending
    node inside a structured (JSON) document.
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, path: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
            if column is not None:
                where.append(f"column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.message = message
        self.line = line
        self.column = column
        self.path = path


class ValidationError(DistrelError):
    """A parsed object violates its invariants; carries the full report."""

    def __init__(self, report):
        self.report = list(report)
        lines = "\n".join(f"  - {v}" for v in self.report)
        super().__init__(f"{len(self.report)} violation(s):\n{lines}")
