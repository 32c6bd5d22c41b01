"""Exception hierarchy shared by every dashgen stage."""

from __future__ import annotations

from typing import Optional


class DashgenError(Exception):
    """Base class for all errors raised by dashgen."""


class ParseError(DashgenError):
    """Malformed definition document (syntax or shape)."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class VariantError(ParseError):
    """A KPI or visualization record mixes the keys of both variants, or has neither."""

    def __init__(self, kind: str, name: str, message: str,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.kind = kind
        self.name = name
        super().__init__(f"{kind} {name!r}: {message}", line, column)


class ConfigError(DashgenError):
    """Invalid layout configuration file or values."""


class UnknownKpi(DashgenError, KeyError):
    def __init__(self, name: str):
        self.name = name
        DashgenError.__init__(self, f"unknown KPI {name!r}")

    def __str__(self) -> str:
        return self.args[0]


class LayoutError(DashgenError):
    """A meta-model layout cannot be applied to the visualization forest.

    ``kind`` is ``"DepthExceeded"`` when a composed visualization sits at or
    below the depth cap, or ``"WidthExhausted"`` when the grid is too narrow
    to split a composed visualization horizontally.
    """

    def __init__(self, kind: str, node: str, depth: int, max_depth: int):
        self.kind = kind
        self.node = node
        self.depth = depth
        self.max_depth = max_depth
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"{self.kind} node={self.node} depth={self.depth} max={self.max_depth}"


class IrFormatError(DashgenError):
    """Virtual dashboard text is malformed or carries an unsupported schema version."""


class RenderError(DashgenError):
    """The virtual dashboard and definition handed to a renderer do not match."""
