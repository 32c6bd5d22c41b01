"""Declarative dashboard definitions: parsing, validation and reference resolution."""

from dashgen.definition.forest import build_forest, kpi_expression, tree_depth
from dashgen.definition.model import (
    TRANSFORMATION_FUNCTIONS,
    ComposedKpi,
    ComposedVisualization,
    DeclarativeDefinition,
    Kpi,
    SimpleKpi,
    SimpleVisualization,
    Target,
    ValidationError,
    VisNode,
    VisualizationDef,
)
from dashgen.definition.parser import parse_definition
from dashgen.definition.validation import validate_definition

__all__ = [
    "TRANSFORMATION_FUNCTIONS",
    "ComposedKpi",
    "ComposedVisualization",
    "DeclarativeDefinition",
    "Kpi",
    "SimpleKpi",
    "SimpleVisualization",
    "Target",
    "ValidationError",
    "VisNode",
    "VisualizationDef",
    "build_forest",
    "kpi_expression",
    "parse_definition",
    "tree_depth",
    "validate_definition",
]
