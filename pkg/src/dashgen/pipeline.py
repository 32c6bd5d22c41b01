"""The three compilation steps chained together: definition, layout, virtual dashboard."""

from __future__ import annotations

from dashgen.definition import (
    DeclarativeDefinition,
    ValidationError,
    build_forest,
    parse_definition,
    validate_definition,
)
from dashgen.errors import DashgenError
from dashgen.ir import VirtualDashboard
from dashgen.layout import LayoutConfig, build_layout


class InvalidDefinition(DashgenError):
    def __init__(self, errors: list[ValidationError]):
        self.errors = errors
        super().__init__(f"definition has {len(errors)} validation error(s)")


def load_definition(text: str) -> DeclarativeDefinition:
    """Parse and validate; raises :class:`InvalidDefinition` carrying every violation."""
    defn = parse_definition(text)
    errors = validate_definition(defn)
    if errors:
        raise InvalidDefinition(errors)
    return defn


def compile_dashboard(defn: DeclarativeDefinition, cfg: LayoutConfig) -> VirtualDashboard:
    return build_layout(build_forest(defn), cfg)
