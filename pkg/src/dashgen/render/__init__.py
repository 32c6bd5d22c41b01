"""Backends that turn a virtual dashboard into files."""

from dashgen.ir import VirtualDashboard, serialize_ir
from dashgen.render.base import RenderedArtifact, canonical_json, write_artifacts
from dashgen.render.grafana import GrafanaOptions, page_uid, render_grafana
from dashgen.render.html import render_html_preview

IR_FILENAME = "dashboard.ir.json"


def render_ir(vd: VirtualDashboard) -> RenderedArtifact:
    return RenderedArtifact(IR_FILENAME, serialize_ir(vd).encode("utf-8"))


__all__ = [
    "IR_FILENAME",
    "GrafanaOptions",
    "RenderedArtifact",
    "canonical_json",
    "page_uid",
    "render_grafana",
    "render_html_preview",
    "render_ir",
    "write_artifacts",
]
