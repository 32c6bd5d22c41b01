"""Static HTML preview of a virtual dashboard, for eyeballing layouts without Grafana."""

from __future__ import annotations

from html import escape

from dashgen.ir import GridRect, VirtualDashboard
from dashgen.render.base import RenderedArtifact

CELL_PX = 40

_STYLE = """\
body { font-family: sans-serif; margin: 24px; background: #f4f5f7; }
section.page { margin-bottom: 48px; }
.grid { position: relative; background: #fff; border: 1px solid #ccc; }
.item { position: absolute; box-sizing: border-box; border: 1px dashed #999; }
.box { position: absolute; box-sizing: border-box; border: 1px solid #3b6ea5; background: #dce8f5;
       padding: 4px; overflow: hidden; font-size: 13px; color: #123; text-decoration: none; }
.box.rep { background: #f5e6c8; border-color: #a5773b; }
.box .note { display: block; font-size: 11px; color: #555; }
"""


def _geometry(rect: GridRect) -> str:
    return (f"left:{rect.x * CELL_PX}px;top:{rect.y * CELL_PX}px;"
            f"width:{rect.w * CELL_PX}px;height:{rect.h * CELL_PX}px")


def render_html_preview(vd: VirtualDashboard) -> RenderedArtifact:
    """One ``preview.html`` with a section per page and absolutely positioned boxes.

    Tiles that link to another page become ``<a href="#page_id">`` anchors.
    """
    titles = {p.page_id: p.title for p in vd.pages}
    out = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>dashgen preview ({escape(vd.layout_style)})</title>",
        f"<style>\n{_STYLE}</style>",
        "</head>",
        "<body>",
    ]
    for page in vd.pages:
        pid = escape(page.page_id, quote=True)
        out.append(f'<section class="page" id="{pid}">')
        out.append(f"<h2>{escape(page.title)}</h2>")
        if page.parent_page is not None:
            parent = escape(page.parent_page, quote=True)
            out.append(f'<p><a href="#{parent}">back to {escape(titles.get(page.parent_page, page.parent_page))}</a></p>')
        height = max((i.bounds.bottom for i in page.items), default=0)
        out.append(f'<div class="grid" style="width:{page.grid_columns * CELL_PX}px;'
                   f'height:{height * CELL_PX}px">')
        for item in page.items:
            out.append(f'<div class="item" title="{escape(item.item_id, quote=True)}" '
                       f'style="{_geometry(item.bounds)}"></div>')
            for p in item.placements:
                label = escape(p.vis_name)
                note = f'<span class="note">{escape(p.represents)}</span>' if p.represents else ""
                css = "box rep" if p.represents else "box"
                if p.link_to is not None:
                    out.append(f'<a class="{css}" href="#{escape(p.link_to, quote=True)}" '
                               f'style="{_geometry(p.rect)}">{label}{note}</a>')
                else:
                    out.append(f'<div class="{css}" style="{_geometry(p.rect)}">{label}{note}</div>')
        out.append("</div>")
        out.append("</section>")
    out += ["</body>", "</html>", ""]
    return RenderedArtifact("preview.html", "\n".join(out).encode("utf-8"))
