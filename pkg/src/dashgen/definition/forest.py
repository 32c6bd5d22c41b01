"""Resolution of name references: the visualization forest and KPI query expressions."""

from __future__ import annotations

from dashgen.errors import UnknownKpi
from dashgen.definition.model import (
    ComposedKpi,
    ComposedVisualization,
    DeclarativeDefinition,
    SimpleVisualization,
    VisNode,
)


def build_forest(defn: DeclarativeDefinition) -> list[VisNode]:
    """Resolve visualizations into trees, roots first in document order.

    A root is a visualization that is neither composed into another one nor
    used as a summary. ``defn`` must have passed validation.
    """
    by_name = {v.name: v for v in defn.visualizations}
    nested: set[str] = set()
    for v in defn.visualizations:
        if isinstance(v, ComposedVisualization):
            nested.update(v.composing_visualizations)
            if v.summary_visualization is not None:
                nested.add(v.summary_visualization)

    def resolve(name: str, depth: int) -> VisNode:
        vis = by_name[name]
        if isinstance(vis, SimpleVisualization):
            return VisNode(vis, depth=depth)
        summary = by_name[vis.summary_visualization]
        assert isinstance(summary, SimpleVisualization)
        children = tuple(resolve(c, depth + 1) for c in vis.composing_visualizations)
        return VisNode(vis, children, summary, depth)

    return [resolve(v.name, 1) for v in defn.visualizations if v.name not in nested]


def tree_depth(root: VisNode) -> int:
    """Number of visualization levels in the subtree under ``root`` (a leaf is 1)."""
    if not root.children:
        return 1
    return 1 + max(tree_depth(child) for child in root.children)


def _quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def kpi_expression(kpi_name: str, defn: DeclarativeDefinition) -> str:
    """Render a KPI as a query expression.

    >>> from dashgen.definition import parse_definition
    >>> d = parse_definition('''
    ... kpis:
    ...   - {name: a, metric: m, target: {id: t}}
    ...   - {name: b, metric: n, target: {id: t, cluster: c}}
    ...   - {name: s, source_kpis: [a, b], transformation_function: sum}
    ... ''')
    >>> kpi_expression("s", d)
    'sum(m{target="t"}, n{target="t",cluster="c"})'
    """
    kpi = defn.kpi(kpi_name)
    if kpi is None:
        raise UnknownKpi(kpi_name)
    if isinstance(kpi, ComposedKpi):
        args = ", ".join(kpi_expression(src, defn) for src in kpi.source_kpis)
        return f"{kpi.transformation_function}({args})"
    labels = [f"target={_quote(kpi.target.id)}"]
    if kpi.target.cluster is not None:
        labels.append(f"cluster={_quote(kpi.target.cluster)}")
    return f"{kpi.metric}{{{','.join(labels)}}}"
