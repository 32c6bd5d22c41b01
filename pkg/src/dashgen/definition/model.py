"""Value types for a parsed declarative dashboard definition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

#: Aggregators a composed KPI may apply to its sources.
TRANSFORMATION_FUNCTIONS: frozenset[str] = frozenset({"avg", "sum", "min", "max"})


@dataclass(frozen=True)
class Target:
    id: str
    cluster: Optional[str] = None


@dataclass(frozen=True)
class SimpleKpi:
    """A metric collected from a single target."""

    name: str
    metric: str
    target: Target
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ComposedKpi:
    """A KPI derived from other KPIs through a transformation function."""

    name: str
    source_kpis: tuple[str, ...]
    transformation_function: str
    line: Optional[int] = field(default=None, compare=False, repr=False)


Kpi = Union[SimpleKpi, ComposedKpi]


@dataclass(frozen=True)
class SimpleVisualization:
    name: str
    kpis: tuple[str, ...]
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ComposedVisualization:
    """Groups other visualizations behind a summary visualization.

    ``summary_visualization`` is None only when the document omitted it;
    validation reports that as V10.
    """

    name: str
    composing_visualizations: tuple[str, ...]
    summary_visualization: Optional[str]
    line: Optional[int] = field(default=None, compare=False, repr=False)


VisualizationDef = Union[SimpleVisualization, ComposedVisualization]


@dataclass(frozen=True)
class DeclarativeDefinition:
    kpis: tuple[Kpi, ...] = ()
    visualizations: tuple[VisualizationDef, ...] = ()

    def kpi(self, name: str) -> Optional[Kpi]:
        for k in self.kpis:
            if k.name == name:
                return k
        return None

    def visualization(self, name: str) -> Optional[VisualizationDef]:
        for v in self.visualizations:
            if v.name == name:
                return v
        return None


@dataclass(frozen=True)
class ValidationError:
    code: str
    entity: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} {self.entity}: {self.message}"


@dataclass(frozen=True)
class VisNode:
    """A visualization resolved into the forest, with its absolute depth (roots are 1)."""

    definition: VisualizationDef
    children: tuple[VisNode, ...] = ()
    summary: Optional[SimpleVisualization] = None
    depth: int = 1

    @property
    def name(self) -> str:
        return self.definition.name

    @property
    def is_composed(self) -> bool:
        return isinstance(self.definition, ComposedVisualization)

    @property
    def representative(self) -> SimpleVisualization:
        """The Simple visualization drawn for this node."""
        if self.summary is not None:
            return self.summary
        assert isinstance(self.definition, SimpleVisualization)
        return self.definition

    def walk(self):
        """Yield this node and every descendant in pre-order."""
        yield self
        for child in self.children:
            yield from child.walk()
