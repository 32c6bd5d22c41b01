"""dashgen: compile declarative dashboard definitions into virtual dashboards and Grafana JSON."""

from dashgen.definition import (
    DeclarativeDefinition,
    build_forest,
    kpi_expression,
    parse_definition,
    tree_depth,
    validate_definition,
)
from dashgen.errors import (
    ConfigError,
    DashgenError,
    IrFormatError,
    LayoutError,
    ParseError,
    RenderError,
    UnknownKpi,
    VariantError,
)
from dashgen.ir import VirtualDashboard, check_geometry, parse_ir, serialize_ir
from dashgen.layout import LayoutConfig, build_layout, load_layout_config
from dashgen.pipeline import InvalidDefinition, compile_dashboard, load_definition
from dashgen.render import GrafanaOptions, render_grafana, render_html_preview

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DashgenError",
    "DeclarativeDefinition",
    "GrafanaOptions",
    "InvalidDefinition",
    "IrFormatError",
    "LayoutConfig",
    "LayoutError",
    "ParseError",
    "RenderError",
    "UnknownKpi",
    "VariantError",
    "VirtualDashboard",
    "build_forest",
    "build_layout",
    "check_geometry",
    "compile_dashboard",
    "kpi_expression",
    "load_definition",
    "load_layout_config",
    "parse_definition",
    "parse_ir",
    "render_grafana",
    "render_html_preview",
    "serialize_ir",
    "tree_depth",
    "validate_definition",
]
