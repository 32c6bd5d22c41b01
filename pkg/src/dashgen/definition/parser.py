"""YAML reader for declarative dashboard definitions.

The document is walked at the node level (``yaml.compose``) instead of being
loaded into plain dicts, so that every shape error can point at a line and
duplicate mapping keys are caught rather than silently overwritten.
"""

from __future__ import annotations

from typing import Any, Optional

import yaml
from yaml.nodes import MappingNode, Node, ScalarNode, SequenceNode

from dashgen.errors import ParseError, VariantError
from dashgen.definition.model import (
    ComposedKpi,
    ComposedVisualization,
    DeclarativeDefinition,
    Kpi,
    SimpleKpi,
    SimpleVisualization,
    Target,
    VisualizationDef,
)

_STR_TAG = "tag:yaml.org,2002:str"
_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)

_TOP_KEYS = {"kpis", "visualizations"}
_SIMPLE_KPI_KEYS = {"metric", "target"}
_COMPOSED_KPI_KEYS = {"source_kpis", "transformation_function"}
_TARGET_KEYS = {"id", "cluster"}
_SIMPLE_VIS_KEYS = {"kpis"}
_COMPOSED_VIS_KEYS = {"composing_visualizations", "summary_visualization"}


def _line(node: Node) -> int:
    return node.start_mark.line + 1


def _fail(node: Node, message: str) -> ParseError:
    return ParseError(message, _line(node), node.start_mark.column + 1)


def _mapping(node: Node, what: str) -> dict[str, tuple[Node, Node]]:
    """Return ``{key: (key_node, value_node)}``, rejecting duplicates and non-string keys."""
    if not isinstance(node, MappingNode):
        raise _fail(node, f"{what} must be a mapping")
    out: dict[str, tuple[Node, Node]] = {}
    for key_node, value_node in node.value:
        if not isinstance(key_node, ScalarNode) or key_node.tag != _STR_TAG:
            raise _fail(key_node, f"{what} keys must be strings")
        if key_node.value in out:
            raise _fail(key_node, f"duplicate key {key_node.value!r} in {what}")
        out[key_node.value] = (key_node, value_node)
    return out


def _string(node: Node, what: str) -> str:
    if not isinstance(node, ScalarNode) or node.tag != _STR_TAG:
        raise _fail(node, f"{what} must be a string")
    return node.value


def _string_list(node: Node, what: str) -> tuple[str, ...]:
    if not isinstance(node, SequenceNode):
        raise _fail(node, f"{what} must be a list")
    items = tuple(_string(item, f"entry of {what}") for item in node.value)
    seen: set[str] = set()
    for item_node, item in zip(node.value, items):
        if item in seen:
            raise _fail(item_node, f"duplicate name {item!r} in {what}")
        seen.add(item)
    return items


def _reject_unknown(fields: dict[str, Any], allowed: set[str], node: Node, what: str) -> None:
    for key, (key_node, _) in fields.items():
        if key not in allowed:
            raise _fail(key_node, f"unknown key {key!r} in {what}")


def _record_name(fields: dict[str, tuple[Node, Node]], node: Node, what: str) -> str:
    if "name" not in fields:
        raise _fail(node, f"{what} record has no 'name'")
    name = _string(fields["name"][1], f"{what} name")
    if not name.strip():
        raise _fail(fields["name"][1], f"{what} name must not be empty")
    return name


def _parse_target(node: Node, kpi: str) -> Target:
    fields = _mapping(node, f"target of KPI {kpi!r}")
    _reject_unknown(fields, _TARGET_KEYS, node, f"target of KPI {kpi!r}")
    if "id" not in fields:
        raise _fail(node, f"target of KPI {kpi!r} has no 'id'")
    target_id = _string(fields["id"][1], "target id")
    cluster: Optional[str] = None
    if "cluster" in fields:
        cluster = _string(fields["cluster"][1], "target cluster")
        if not cluster.strip():
            raise _fail(fields["cluster"][1], f"cluster of KPI {kpi!r} must not be empty")
    return Target(target_id, cluster)


def _parse_kpi(node: Node) -> Kpi:
    fields = _mapping(node, "KPI")
    name = _record_name(fields, node, "KPI")
    _reject_unknown(fields, {"name"} | _SIMPLE_KPI_KEYS | _COMPOSED_KPI_KEYS, node, f"KPI {name!r}")
    simple = _SIMPLE_KPI_KEYS & fields.keys()
    composed = _COMPOSED_KPI_KEYS & fields.keys()
    line, column = _line(node), node.start_mark.column + 1
    if simple and composed:
        raise VariantError("KPI", name, "has keys of both the simple and composed variants", line, column)
    if not simple and not composed:
        raise VariantError(
            "KPI", name, "needs either metric+target or source_kpis+transformation_function", line, column
        )
    if simple:
        missing = sorted(_SIMPLE_KPI_KEYS - simple)
        if missing:
            raise _fail(node, f"simple KPI {name!r} is missing {missing[0]!r}")
        metric = _string(fields["metric"][1], f"metric of KPI {name!r}")
        return SimpleKpi(name, metric, _parse_target(fields["target"][1], name), line=line)

    missing = sorted(_COMPOSED_KPI_KEYS - composed)
    if missing:
        raise _fail(node, f"composed KPI {name!r} is missing {missing[0]!r}")
    sources_node = fields["source_kpis"][1]
    sources = _string_list(sources_node, f"source_kpis of {name!r}")
    if len(sources) < 2:
        raise _fail(sources_node, f"composed KPI {name!r} needs at least two source KPIs")
    function = _string(fields["transformation_function"][1], f"transformation_function of {name!r}")
    return ComposedKpi(name, sources, function, line=line)


def _parse_visualization(node: Node) -> VisualizationDef:
    fields = _mapping(node, "visualization")
    name = _record_name(fields, node, "visualization")
    _reject_unknown(
        fields, {"name"} | _SIMPLE_VIS_KEYS | _COMPOSED_VIS_KEYS, node, f"visualization {name!r}"
    )
    line, column = _line(node), node.start_mark.column + 1
    has_kpis = "kpis" in fields
    composed_keys = _COMPOSED_VIS_KEYS & fields.keys()
    if has_kpis and composed_keys:
        raise VariantError(
            "visualization", name, "has keys of both the simple and composed variants", line, column
        )
    if has_kpis:
        kpis = _string_list(fields["kpis"][1], f"kpis of visualization {name!r}")
        return SimpleVisualization(name, kpis, line=line)
    if "composing_visualizations" not in fields:
        raise VariantError(
            "visualization", name, "needs either kpis or composing_visualizations", line, column
        )
    children = _string_list(
        fields["composing_visualizations"][1], f"composing_visualizations of {name!r}"
    )
    summary = None
    if "summary_visualization" in fields:
        summary = _string(fields["summary_visualization"][1], f"summary_visualization of {name!r}")
    return ComposedVisualization(name, children, summary, line=line)


def parse_definition(document_text: str) -> DeclarativeDefinition:
    """Parse a definition document, preserving the order records appear in.

    Raises :class:`ParseError` for malformed YAML or an unexpected shape and
    :class:`VariantError` for records whose variant cannot be told apart.
    Semantic problems (dangling references, cycles, ...) are left to
    :func:`dashgen.definition.validate_definition`.
    """
    try:
        root = yaml.compose(document_text, Loader=_Loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        column = mark.column + 1 if mark else None
        raise ParseError(f"invalid YAML: {exc.problem or exc.context}", line, column) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from exc
    if root is None:
        raise ParseError("empty document")

    fields = _mapping(root, "document")
    _reject_unknown(fields, _TOP_KEYS, root, "document")

    def records(key: str) -> list[Node]:
        if key not in fields:
            return []
        node = fields[key][1]
        if not isinstance(node, SequenceNode):
            raise _fail(node, f"{key!r} must be a list")
        return node.value

    kpis = tuple(_parse_kpi(n) for n in records("kpis"))
    visualizations = tuple(_parse_visualization(n) for n in records("visualizations"))
    return DeclarativeDefinition(kpis, visualizations)
