"""Referential and structural checks over a parsed definition.

Every rule has a fixed code:

===== ==============================================================
V1    KPI names are unique
V2    visualization names are unique
V3    every ``source_kpis`` entry names a KPI
V4    the KPI composition graph is acyclic
V5    ``transformation_function`` is a registered aggregator
V6    every ``kpis`` entry of a visualization names a KPI
V7    every ``composing_visualizations`` entry names a visualization
V8    the visualization composition graph is acyclic
V9    a visualization is composed into at most one parent
V10   composed visualizations have a summary that exists, is simple
      and is not shared with another parent
V11   a simple visualization shows at least one KPI
V12   a composed visualization has at least one child
V13   a simple KPI has a non-blank metric and target id
V14   a summary visualization is never also a composing child
===== ==============================================================
"""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, Mapping, Sequence

from dashgen.definition.model import (
    TRANSFORMATION_FUNCTIONS,
    ComposedKpi,
    ComposedVisualization,
    DeclarativeDefinition,
    SimpleKpi,
    SimpleVisualization,
    ValidationError,
)


def _cycles(order: Sequence[str], edges: Mapping[str, Sequence[str]]) -> list[list[str]]:
    """Strongly connected components that contain a cycle, members in ``order`` order.

    Iterative Tarjan so that long composition chains cannot hit the recursion limit.
    """
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    found: list[list[str]] = []
    counter = 0

    for start in order:
        if start in index:
            continue
        work = [(start, iter(edges.get(start, ())))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(edges.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                members = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    members.append(member)
                    if member == node:
                        break
                if len(members) > 1 or node in edges.get(node, ()):
                    rank = {name: i for i, name in enumerate(order)}
                    found.append(sorted(members, key=rank.__getitem__))
    found.sort(key=lambda members: order.index(members[0]))
    return found


def _unique(names: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(names))


def validate_definition(defn: DeclarativeDefinition) -> list[ValidationError]:
    """Return every rule violation in ``defn``; an empty list means it is valid.

    Errors come grouped by code (V1 first) and, within a code, in document order.
    """
    errors: list[ValidationError] = []

    def report(code: str, entity: str, message: str) -> None:
        errors.append(ValidationError(code, entity, message))

    kpi_names = [k.name for k in defn.kpis]
    vis_names = [v.name for v in defn.visualizations]
    known_kpis = set(kpi_names)
    vis_by_name = {}
    for v in defn.visualizations:
        vis_by_name.setdefault(v.name, v)
    simple_kpis = [k for k in defn.kpis if isinstance(k, SimpleKpi)]
    composed_kpis = [k for k in defn.kpis if isinstance(k, ComposedKpi)]
    simple_vis = [v for v in defn.visualizations if isinstance(v, SimpleVisualization)]
    composed_vis = [v for v in defn.visualizations if isinstance(v, ComposedVisualization)]

    # V1 / V2
    for name, count in Counter(kpi_names).items():
        if count > 1:
            report("V1", name, f"KPI name is declared {count} times")
    for name, count in Counter(vis_names).items():
        if count > 1:
            report("V2", name, f"visualization name is declared {count} times")

    # V3
    for k in composed_kpis:
        for src in k.source_kpis:
            if src not in known_kpis:
                report("V3", k.name, f"source KPI {src!r} is not defined")

    # V4
    kpi_edges: dict[str, list[str]] = defaultdict(list)
    for k in composed_kpis:
        kpi_edges[k.name].extend(s for s in k.source_kpis if s in known_kpis)
    for members in _cycles(_unique(kpi_names), kpi_edges):
        report("V4", members[0], "KPI composition cycle through " + ", ".join(members))

    # V5
    for k in composed_kpis:
        if k.transformation_function not in TRANSFORMATION_FUNCTIONS:
            allowed = ", ".join(sorted(TRANSFORMATION_FUNCTIONS))
            report("V5", k.name, f"unknown transformation function {k.transformation_function!r} "
                                 f"(expected one of {allowed})")

    # V6
    for v in simple_vis:
        for ref in v.kpis:
            if ref not in known_kpis:
                report("V6", v.name, f"KPI {ref!r} is not defined")

    # V7
    for v in composed_vis:
        for child in v.composing_visualizations:
            if child not in vis_by_name:
                report("V7", v.name, f"composing visualization {child!r} is not defined")

    # V8
    vis_edges: dict[str, list[str]] = defaultdict(list)
    for v in composed_vis:
        vis_edges[v.name].extend(c for c in v.composing_visualizations if c in vis_by_name)
    for members in _cycles(_unique(vis_names), vis_edges):
        report("V8", members[0], "visualization composition cycle through " + ", ".join(members))

    # V9
    parents: dict[str, list[str]] = defaultdict(list)
    for v in composed_vis:
        for child in v.composing_visualizations:
            if child in vis_by_name:
                parents[child].append(v.name)
    for name in _unique(vis_names):
        if len(parents[name]) > 1:
            report("V9", name, "is composed into several visualizations: " + ", ".join(parents[name]))

    # V10
    summarised_by: dict[str, list[str]] = defaultdict(list)
    for v in composed_vis:
        summary = v.summary_visualization
        if summary is None:
            report("V10", v.name, "composed visualization has no summary_visualization")
            continue
        target = vis_by_name.get(summary)
        if target is None:
            report("V10", v.name, f"summary visualization {summary!r} is not defined")
            continue
        if not isinstance(target, SimpleVisualization):
            report("V10", v.name, f"summary visualization {summary!r} is not a simple visualization")
            continue
        summarised_by[summary].append(v.name)
    for name in _unique(vis_names):
        if len(summarised_by[name]) > 1:
            report("V10", name, "is the summary of several visualizations: "
                                + ", ".join(summarised_by[name]))

    # V11 / V12
    for v in simple_vis:
        if not v.kpis:
            report("V11", v.name, "simple visualization lists no KPIs")
    for v in composed_vis:
        if not v.composing_visualizations:
            report("V12", v.name, "composed visualization lists no composing visualizations")

    # V13
    for k in simple_kpis:
        if not k.metric.strip():
            report("V13", k.name, "metric is blank")
        if not k.target.id.strip():
            report("V13", k.name, "target id is blank")

    # V14
    for name in _unique(vis_names):
        if summarised_by[name] and parents[name]:
            report("V14", name, "is a summary visualization and also composed into "
                                + ", ".join(parents[name]))

    return errors
