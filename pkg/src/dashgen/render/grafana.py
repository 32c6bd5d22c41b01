"""Grafana backend: one dashboard JSON model per virtual dashboard page."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any

from dashgen.definition.model import (
    ComposedVisualization,
    DeclarativeDefinition,
    SimpleVisualization,
)
from dashgen.definition.forest import kpi_expression
from dashgen.errors import RenderError, UnknownKpi
from dashgen.ir import DashboardItem, DashboardPage, GridRect, VirtualDashboard
from dashgen.render.base import RenderedArtifact, canonical_json

GRAFANA_SCHEMA_VERSION = 39


@dataclass(frozen=True)
class GrafanaOptions:
    """Knobs for the Grafana backend.

    ``item_rows`` adds a collapsible row panel above every item holding more
    than one placement. Grafana rows occupy a grid line of their own, so
    content below each row is pushed down by one cell and panel positions no
    longer equal the virtual dashboard rectangles. Off by default.
    """

    datasource_name: str = "default"
    tag: str = "dashgen"
    item_rows: bool = False

    def __post_init__(self) -> None:
        if not self.datasource_name:
            raise ValueError("datasource_name must not be empty")
        if not self.tag:
            raise ValueError("tag must not be empty")


def page_uid(page_id: str) -> str:
    return hashlib.sha256(f"dashgen/{page_id}".encode("utf-8")).hexdigest()[:12]


def ref_id(index: int) -> str:
    """0 -> A, 25 -> Z, 26 -> AA, like spreadsheet columns."""
    letters = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        letters = chr(ord("A") + rem) + letters
    return letters


def _grid_pos(rect: GridRect, shift: int = 0) -> dict[str, int]:
    return {"h": rect.h, "w": rect.w, "x": rect.x, "y": rect.y + shift}


def _row_items(page: DashboardPage) -> list[DashboardItem]:
    # only full-width items can carry a row: nothing else shares their vertical extent
    return [i for i in page.items
            if len(i.placements) > 1 and i.bounds.x == 0 and i.bounds.w == page.grid_columns]


def _targets(vis: SimpleVisualization, defn: DeclarativeDefinition) -> list[dict[str, str]]:
    targets = []
    for n, kpi in enumerate(vis.kpis):
        try:
            expr = kpi_expression(kpi, defn)
        except UnknownKpi as exc:
            raise RenderError(f"visualization {vis.name!r}: {exc}") from None
        targets.append({"refId": ref_id(n), "expr": expr})
    return targets


def _dashboard(page: DashboardPage, vd: VirtualDashboard, defn: DeclarativeDefinition,
               opts: GrafanaOptions) -> dict[str, Any]:
    rows = _row_items(page) if opts.item_rows else []
    row_tops = sorted(i.bounds.y for i in rows)

    def shift_for(item: DashboardItem) -> int:
        return sum(1 for top in row_tops if top <= item.bounds.y)

    panels: list[dict[str, Any]] = []
    for item in page.items:
        shift = shift_for(item)
        if item in rows:
            panels.append({
                "id": len(panels) + 1,
                "title": item.item_id,
                "type": "row",
                "collapsed": False,
                "panels": [],
                "gridPos": {"h": 1, "w": page.grid_columns, "x": 0, "y": item.bounds.y + shift - 1},
            })
        for placement in item.placements:
            vis = defn.visualization(placement.vis_name)
            if not isinstance(vis, SimpleVisualization):
                raise RenderError(f"placement {placement.vis_name!r} on page {page.page_id!r} "
                                  "does not name a simple visualization")
            if placement.represents is not None and not isinstance(
                    defn.visualization(placement.represents), ComposedVisualization):
                raise RenderError(f"placement {placement.vis_name!r} represents unknown composed "
                                  f"visualization {placement.represents!r}")
            panel: dict[str, Any] = {
                "id": len(panels) + 1,
                "title": placement.vis_name,
                "type": "stat" if placement.represents is not None else "timeseries",
                "datasource": opts.datasource_name,
                "gridPos": _grid_pos(placement.rect, shift),
                "targets": _targets(vis, defn),
            }
            if placement.link_to is not None:
                target = vd.page(placement.link_to)
                if target is None:
                    raise RenderError(f"placement {placement.vis_name!r} links to missing page "
                                      f"{placement.link_to!r}")
                panel["links"] = [{"title": target.title, "url": f"/d/{page_uid(target.page_id)}"}]
            panels.append(panel)

    links = []
    if page.parent_page is not None:
        parent = vd.page(page.parent_page)
        if parent is None:
            raise RenderError(f"page {page.page_id!r} has missing parent {page.parent_page!r}")
        links.append({"title": parent.title, "url": f"/d/{page_uid(parent.page_id)}"})

    return {
        "uid": page_uid(page.page_id),
        "title": page.title,
        "tags": [opts.tag],
        "schemaVersion": GRAFANA_SCHEMA_VERSION,
        "panels": panels,
        "links": links,
    }


def render_grafana(vd: VirtualDashboard, defn: DeclarativeDefinition,
                   opts: GrafanaOptions = GrafanaOptions()) -> list[RenderedArtifact]:
    """Render each page to ``<page_id>.json``, in page order.

    Raises :class:`RenderError` when ``vd`` refers to visualizations or KPIs
    that ``defn`` does not define, or when two page ids hash to the same uid.
    """
    uids: dict[str, str] = {}
    for page in vd.pages:
        uid = page_uid(page.page_id)
        if uid in uids and uids[uid] != page.page_id:
            raise RenderError(f"pages {uids[uid]!r} and {page.page_id!r} share uid {uid}")
        uids[uid] = page.page_id
    artifacts = []
    for page in vd.pages:
        content = canonical_json(_dashboard(page, vd, defn, opts))
        try:
            artifacts.append(RenderedArtifact(f"{page.page_id}.json", content))
        except ValueError as exc:
            raise RenderError(str(exc)) from None
    return artifacts
