"""Meta-model layouts: arrange the visualization forest into a virtual dashboard.

Three styles are available:

``pyramidal``
    one page; each root is an item whose representative spans the full
    width, with its children in rows of ``per_row`` columns underneath.
``repeated``
    one page; each root is a horizontal band, with a composed
    visualization's representative on the left and its children stacked
    to the right.
``nested``
    one page per composed visualization, linked from the tile that
    represents it; every tile on a page has the same size.

A composed visualization is always drawn through its summary visualization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import yaml

from dashgen.definition.model import VisNode
from dashgen.errors import ConfigError, LayoutError
from dashgen.ir import (
    LAYOUT_STYLES,
    DashboardItem,
    DashboardPage,
    GridRect,
    PlacedVisualization,
    VirtualDashboard,
)

ENTRY_TITLE = "Overview"


def _parse_ratio(value: Union[str, int, float, Fraction]) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"parent_ratio must be a number, got {value!r}")
    try:
        return Fraction(value) if isinstance(value, (int, Fraction)) else Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"parent_ratio must be a number or a fraction like 1/3, got {value!r}") from None


@dataclass(frozen=True)
class LayoutConfig:
    style: str
    grid_columns: int = 24
    base_panel_height: int = 8
    per_row: int = 4
    max_depth: int = 3
    parent_ratio: Fraction = Fraction(1, 3)
    item_gap: int = 1

    def __post_init__(self) -> None:
        if self.style not in LAYOUT_STYLES:
            raise ConfigError(f"unknown style {self.style!r} (expected one of {', '.join(LAYOUT_STYLES)})")
        for name in ("grid_columns", "base_panel_height", "per_row", "max_depth", "item_gap"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            minimum = 0 if name == "item_gap" else 1
            if value < minimum:
                raise ConfigError(f"{name} must be >= {minimum}, got {value}")
        if self.per_row > self.grid_columns:
            raise ConfigError(f"per_row ({self.per_row}) exceeds grid_columns ({self.grid_columns})")
        ratio = _parse_ratio(self.parent_ratio)
        if not 0 < ratio < 1:
            raise ConfigError(f"parent_ratio must lie strictly between 0 and 1, got {ratio}")
        object.__setattr__(self, "parent_ratio", ratio)

    @classmethod
    def from_mapping(cls, data: Any) -> LayoutConfig:
        if not isinstance(data, dict):
            raise ConfigError("layout config must be a mapping")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(map(str, data)) - known)
        if unknown:
            raise ConfigError(f"unknown layout config key(s): {', '.join(unknown)}")
        if "style" not in data:
            raise ConfigError("layout config needs a 'style'")
        return cls(**data)

    def with_style(self, style: str) -> LayoutConfig:
        return replace(self, style=style)


def load_layout_config(text: str) -> LayoutConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in layout config: {exc}") from None
    return LayoutConfig.from_mapping(data)


def _check_depth(roots: Iterable[VisNode], max_depth: int) -> None:
    for root in roots:
        for node in root.walk():
            if node.is_composed and node.depth >= max_depth:
                raise LayoutError("DepthExceeded", node.name, node.depth, max_depth)


def _tile(node: VisNode, rect: GridRect, link_to: Optional[str] = None) -> PlacedVisualization:
    return PlacedVisualization(
        node.representative.name, rect, node.name if node.is_composed else None, link_to
    )


def _stack_items(roots: Sequence[VisNode], cfg: LayoutConfig, place) -> DashboardPage:
    items = []
    y = 0
    for root in roots:
        placements, height = place(root, 0, y, cfg.grid_columns)
        items.append(DashboardItem(root.name, GridRect(0, y, cfg.grid_columns, height), tuple(placements)))
        y += height + cfg.item_gap
    return DashboardPage(_slug(ENTRY_TITLE), ENTRY_TITLE, cfg.grid_columns, tuple(items))


def layout_pyramidal(roots: Sequence[VisNode], cfg: LayoutConfig) -> VirtualDashboard:
    """Representative on top at full width, children in uniform columns below.

    When a subtree is narrower than ``per_row`` columns, the row holds as many
    one-column slots as fit.
    """
    _check_depth(roots, cfg.max_depth)
    base = cfg.base_panel_height

    def place(node: VisNode, x: int, y: int, w: int):
        out = [_tile(node, GridRect(x, y, w, base))]
        if not node.is_composed:
            return out, base
        slots = min(cfg.per_row, w)
        col_w = w // slots
        cy = y + base
        for start in range(0, len(node.children), slots):
            row_h = 0
            for i, child in enumerate(node.children[start:start + slots]):
                placed, h = place(child, x + i * col_w, cy, col_w)
                out.extend(placed)
                row_h = max(row_h, h)
            cy += row_h
        return out, cy - y

    return VirtualDashboard((_stack_items(roots, cfg, place),), "pyramidal")


def layout_repeated(roots: Sequence[VisNode], cfg: LayoutConfig) -> VirtualDashboard:
    """Representative on the left at full band height, children stacked to its right."""
    _check_depth(roots, cfg.max_depth)
    base = cfg.base_panel_height

    def place(node: VisNode, x: int, y: int, w: int):
        if not node.is_composed:
            return [_tile(node, GridRect(x, y, w, base))], base
        if w < 2:
            raise LayoutError("WidthExhausted", node.name, node.depth, cfg.max_depth)
        pw = min(max(2, int(w * cfg.parent_ratio)), w - 1)
        children = []
        cy = y
        for child in node.children:
            placed, h = place(child, x + pw, cy, w - pw)
            children.extend(placed)
            cy += h
        height = cy - y
        return [_tile(node, GridRect(x, y, pw, height))] + children, height

    return VirtualDashboard((_stack_items(roots, cfg, place),), "repeated")


def _slug(title: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", title.lower()).strip("-") or "page"


def layout_nested(roots: Sequence[VisNode], cfg: LayoutConfig) -> VirtualDashboard:
    """One page per level of composition; never fails, whatever the depth."""
    pages: list[Optional[DashboardPage]] = []
    used: set[str] = set()
    cell_w = cfg.grid_columns // cfg.per_row
    base = cfg.base_panel_height

    def allocate(title: str) -> str:
        stem = _slug(title)
        page_id, n = stem, 1
        while page_id in used:
            n += 1
            page_id = f"{stem}-{n}"
        used.add(page_id)
        return page_id

    def build(title: str, nodes: Sequence[VisNode], parent: Optional[str]) -> str:
        page_id = allocate(title)
        slot = len(pages)
        pages.append(None)
        items = []
        for i, node in enumerate(nodes):
            rect = GridRect((i % cfg.per_row) * cell_w, (i // cfg.per_row) * base, cell_w, base)
            link = build(node.name, node.children, page_id) if node.is_composed else None
            items.append(DashboardItem(node.name, rect, (_tile(node, rect, link),)))
        pages[slot] = DashboardPage(page_id, title, cfg.grid_columns, tuple(items), parent)
        return page_id

    build(ENTRY_TITLE, roots, None)
    return VirtualDashboard(tuple(pages), "nested")


_STYLES = {
    "pyramidal": layout_pyramidal,
    "repeated": layout_repeated,
    "nested": layout_nested,
}


def build_layout(roots: Sequence[VisNode], cfg: LayoutConfig) -> VirtualDashboard:
    """Apply the meta-model named by ``cfg.style``.

    Raises :class:`LayoutError` when a single-page style cannot hold the
    forest's depth.
    """
    return _STYLES[cfg.style](roots, cfg)
