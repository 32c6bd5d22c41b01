"""The virtual dashboard: a tool-independent description of pages, items and placements.

Geometry is expressed on an integer cell grid with the origin at the top-left
corner. A rectangle covers the half-open ranges ``[x, x + w)`` and
``[y, y + h)``, so rectangles that merely share an edge do not overlap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

import jsonschema

from dashgen.errors import IrFormatError

SCHEMA_VERSION = 1
LAYOUT_STYLES = ("pyramidal", "repeated", "nested")
SINGLE_PAGE_STYLES = ("pyramidal", "repeated")


@dataclass(frozen=True)
class GridRect:
    x: int
    y: int
    w: int
    h: int

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h

    def overlaps(self, other: GridRect) -> bool:
        return (self.x < other.right and other.x < self.right
                and self.y < other.bottom and other.y < self.bottom)

    def contains(self, other: GridRect) -> bool:
        return (self.x <= other.x and other.right <= self.right
                and self.y <= other.y and other.bottom <= self.bottom)


@dataclass(frozen=True)
class PlacedVisualization:
    """A simple visualization drawn at ``rect``.

    ``represents`` names the composed visualization this tile stands for, and
    ``link_to`` is the page that tile navigates to.
    """

    vis_name: str
    rect: GridRect
    represents: Optional[str] = None
    link_to: Optional[str] = None


@dataclass(frozen=True)
class DashboardItem:
    item_id: str
    bounds: GridRect
    placements: tuple[PlacedVisualization, ...]


@dataclass(frozen=True)
class DashboardPage:
    page_id: str
    title: str
    grid_columns: int
    items: tuple[DashboardItem, ...] = ()
    parent_page: Optional[str] = None

    def placements(self):
        for item in self.items:
            yield from item.placements


@dataclass(frozen=True)
class VirtualDashboard:
    pages: tuple[DashboardPage, ...]
    layout_style: str

    @property
    def entry_page(self) -> DashboardPage:
        return self.pages[0]

    def page(self, page_id: str) -> Optional[DashboardPage]:
        for p in self.pages:
            if p.page_id == page_id:
                return p
        return None


@dataclass(frozen=True)
class GeometryViolation:
    kind: str  # out_of_bounds | overlap | dangling_link | orphan_link | duplicate_page | page_count
    page_id: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} [{self.page_id}] {self.detail}"


def _fmt(r: GridRect) -> str:
    return f"{{x:{r.x},y:{r.y},w:{r.w},h:{r.h}}}"


def _rect_problem(rect: GridRect, columns: int) -> Optional[str]:
    if rect.w < 1 or rect.h < 1:
        return "has a non-positive size"
    if rect.x < 0 or rect.y < 0:
        return "starts at a negative coordinate"
    if rect.right > columns:
        return f"extends past column {columns}"
    return None


def check_geometry(vd: VirtualDashboard) -> list[GeometryViolation]:
    """Report every geometric or linkage defect; an empty list means the dashboard is sound.

    Each rectangle contributes at most one bounds violation. Overlaps are
    checked between placements of the same item and between item bounds on
    the same page.
    """
    out: list[GeometryViolation] = []
    seen_ids: set[str] = set()
    for page in vd.pages:
        if page.page_id in seen_ids:
            out.append(GeometryViolation("duplicate_page", page.page_id, "page_id is used twice"))
        seen_ids.add(page.page_id)
    if vd.layout_style in SINGLE_PAGE_STYLES and len(vd.pages) != 1:
        out.append(GeometryViolation(
            "page_count", vd.pages[0].page_id if vd.pages else "",
            f"{vd.layout_style} dashboards have exactly one page, found {len(vd.pages)}"))

    for page in vd.pages:
        pid = page.page_id
        if page.parent_page is not None and page.parent_page not in seen_ids:
            out.append(GeometryViolation("dangling_link", pid,
                                         f"parent page {page.parent_page!r} does not exist"))
        for item in page.items:
            problem = _rect_problem(item.bounds, page.grid_columns)
            if problem:
                out.append(GeometryViolation(
                    "out_of_bounds", pid, f"item {item.item_id} {_fmt(item.bounds)} {problem}"))
            for p in item.placements:
                problem = _rect_problem(p.rect, page.grid_columns)
                if problem is None and not item.bounds.contains(p.rect):
                    problem = f"lies outside item {item.item_id}"
                if problem:
                    out.append(GeometryViolation(
                        "out_of_bounds", pid, f"placement {p.vis_name} {_fmt(p.rect)} {problem}"))
                if p.link_to is not None:
                    if p.represents is None:
                        out.append(GeometryViolation(
                            "orphan_link", pid, f"placement {p.vis_name} links without representing"))
                    if p.link_to not in seen_ids:
                        out.append(GeometryViolation(
                            "dangling_link", pid, f"placement {p.vis_name} links to "
                                                  f"missing page {p.link_to!r}"))
            placed = item.placements
            for i in range(len(placed)):
                for j in range(i + 1, len(placed)):
                    if placed[i].rect.overlaps(placed[j].rect):
                        out.append(GeometryViolation(
                            "overlap", pid, f"placements {placed[i].vis_name} and "
                                            f"{placed[j].vis_name} in item {item.item_id} overlap"))
        items = page.items
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if items[i].bounds.overlaps(items[j].bounds):
                    out.append(GeometryViolation(
                        "overlap", pid, f"items {items[i].item_id} and {items[j].item_id} overlap"))
    return out


# -- serialization -----------------------------------------------------------

def _rect_json(r: GridRect) -> dict[str, int]:
    return {"x": r.x, "y": r.y, "w": r.w, "h": r.h}


def to_json_obj(vd: VirtualDashboard) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "layout_style": vd.layout_style,
        "pages": [
            {
                "page_id": page.page_id,
                "title": page.title,
                "grid_columns": page.grid_columns,
                "parent_page": page.parent_page,
                "items": [
                    {
                        "item_id": item.item_id,
                        "bounds": _rect_json(item.bounds),
                        "placements": [
                            {
                                "vis_name": p.vis_name,
                                "rect": _rect_json(p.rect),
                                "represents": p.represents,
                                "link_to": p.link_to,
                            }
                            for p in item.placements
                        ],
                    }
                    for item in page.items
                ],
            }
            for page in vd.pages
        ],
    }


def serialize_ir(vd: VirtualDashboard) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_json_obj(vd), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


_RECT = {
    "type": "object",
    "required": ["x", "y", "w", "h"],
    "additionalProperties": False,
    "properties": {k: {"type": "integer"} for k in ("x", "y", "w", "h")},
}
_OPT_STR = {"type": ["string", "null"]}

IR_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "layout_style", "pages"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "layout_style": {"enum": list(LAYOUT_STYLES)},
        "pages": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["page_id", "title", "grid_columns", "parent_page", "items"],
                "additionalProperties": False,
                "properties": {
                    "page_id": {"type": "string"},
                    "title": {"type": "string"},
                    "grid_columns": {"type": "integer", "minimum": 1},
                    "parent_page": _OPT_STR,
                    "items": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["item_id", "bounds", "placements"],
                            "additionalProperties": False,
                            "properties": {
                                "item_id": {"type": "string"},
                                "bounds": _RECT,
                                "placements": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["vis_name", "rect", "represents", "link_to"],
                                        "additionalProperties": False,
                                        "properties": {
                                            "vis_name": {"type": "string"},
                                            "rect": _RECT,
                                            "represents": _OPT_STR,
                                            "link_to": _OPT_STR,
                                        },
                                    },
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}


_VALIDATOR = jsonschema.Draft202012Validator(IR_SCHEMA)


def _rect(obj: dict[str, int]) -> GridRect:
    return GridRect(obj["x"], obj["y"], obj["w"], obj["h"])


def from_json_obj(obj: Any) -> VirtualDashboard:
    if isinstance(obj, dict) and "schema_version" in obj and obj["schema_version"] != SCHEMA_VERSION:
        raise IrFormatError(
            f"unsupported schema_version {obj['schema_version']!r} (expected {SCHEMA_VERSION})")
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(obj))
    if error is not None:
        where = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise IrFormatError(f"invalid IR at {where}: {error.message}")
    pages = tuple(
        DashboardPage(
            page_id=p["page_id"],
            title=p["title"],
            grid_columns=p["grid_columns"],
            parent_page=p["parent_page"],
            items=tuple(
                DashboardItem(
                    item_id=i["item_id"],
                    bounds=_rect(i["bounds"]),
                    placements=tuple(
                        PlacedVisualization(pl["vis_name"], _rect(pl["rect"]),
                                            pl["represents"], pl["link_to"])
                        for pl in i["placements"]
                    ),
                )
                for i in p["items"]
            ),
        )
        for p in obj["pages"]
    )
    return VirtualDashboard(pages, obj["layout_style"])


def parse_ir(text: str) -> VirtualDashboard:
    """Inverse of :func:`serialize_ir`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IrFormatError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json_obj(obj)
