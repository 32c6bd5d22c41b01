import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dashgen import (
    ConfigError,
    LayoutConfig,
    LayoutError,
    build_forest,
    build_layout,
    check_geometry,
    load_layout_config,
    parse_definition,
    serialize_ir,
    tree_depth,
)
from dashgen.ir import GridRect
from dashgen.layout import layout_nested, layout_pyramidal, layout_repeated

from _checks import (
    composed_tree,
    containment,
    drawn_tiles,
    expected_tiles,
    link_tree,
    parents_invert_links,
    reachable_pages,
)
from _corpus import CHAIN4_TEXT, dump, random_definition

ONE_LEAF = "kpis: [{name: k, metric: m, target: {id: t}}]\nvisualizations: [{name: solo, kpis: [k]}]\n"
TWO_LEAVES = ("kpis: [{name: k, metric: m, target: {id: t}}]\n"
              "visualizations: [{name: one, kpis: [k]}, {name: two, kpis: [k]}]\n")


def _roots(text):
    return build_forest(parse_definition(text))


def _rects(vd, page=0):
    return [(p.vis_name, p.represents, p.link_to, p.rect) for p in vd.pages[page].placements()]


# -- config -------------------------------------------------------------------

def test_defaults():
    cfg = LayoutConfig(style="pyramidal")
    assert (cfg.grid_columns, cfg.base_panel_height, cfg.per_row, cfg.max_depth, cfg.item_gap) == (24, 8, 4, 3, 1)
    assert cfg.parent_ratio == Fraction(1, 3)


def test_load_config_file():
    cfg = load_layout_config("style: repeated\nper_row: 3\nparent_ratio: 1/4\ngrid_columns: 12\n")
    assert cfg == LayoutConfig(style="repeated", per_row=3, parent_ratio=Fraction(1, 4), grid_columns=12)
    assert load_layout_config("style: nested\nparent_ratio: 0.5\n").parent_ratio == Fraction(1, 2)


@pytest.mark.parametrize("text, fragment", [
    ("per_row: 3\n", "style"),
    ("style: grid\n", "unknown style"),
    ("style: nested\ncolumns: 3\n", "unknown layout config key"),
    ("style: nested\nper_row: 30\n", "exceeds grid_columns"),
    ("style: nested\nper_row: 0\n", ">= 1"),
    ("style: nested\nitem_gap: -1\n", ">= 0"),
    ("style: nested\nmax_depth: 2.5\n", "integer"),
    ("style: nested\nmax_depth: true\n", "integer"),
    ("style: nested\nparent_ratio: 1\n", "strictly between"),
    ("style: nested\nparent_ratio: third\n", "fraction"),
    ("- style\n", "mapping"),
    ("style: [\n", "invalid YAML"),
])
def test_bad_config(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        load_layout_config(text)


def test_with_style_overrides():
    assert load_layout_config("style: nested\n").with_style("repeated").style == "repeated"


# -- worked examples ----------------------------------------------------------

def test_pyramidal_f1(f1_roots):
    vd = build_layout(f1_roots, LayoutConfig(style="pyramidal"))
    assert len(vd.pages) == 1 and len(vd.pages[0].items) == 1
    assert _rects(vd) == [
        ("CPU Overview", "CPU", None, GridRect(0, 0, 24, 8)),
        ("CPU System", None, None, GridRect(0, 8, 6, 8)),
        ("CPU User", None, None, GridRect(6, 8, 6, 8)),
    ]
    assert vd.pages[0].items[0].bounds == GridRect(0, 0, 24, 16)


def test_repeated_f1(f1_roots):
    vd = build_layout(f1_roots, LayoutConfig(style="repeated"))
    assert _rects(vd) == [
        ("CPU Overview", "CPU", None, GridRect(0, 0, 8, 16)),
        ("CPU System", None, None, GridRect(8, 0, 16, 8)),
        ("CPU User", None, None, GridRect(8, 8, 16, 8)),
    ]


def test_nested_f1(f1_roots):
    vd = build_layout(f1_roots, LayoutConfig(style="nested"))
    assert [(p.page_id, p.title, p.parent_page) for p in vd.pages] == [
        ("overview", "Overview", None), ("cpu", "CPU", "overview")]
    assert _rects(vd, 0) == [("CPU Overview", "CPU", "cpu", GridRect(0, 0, 6, 8))]
    assert _rects(vd, 1) == [
        ("CPU System", None, None, GridRect(0, 0, 6, 8)),
        ("CPU User", None, None, GridRect(6, 0, 6, 8)),
    ]
    assert [len(i.placements) for i in vd.pages[1].items] == [1, 1]


@pytest.mark.parametrize("style", ["pyramidal", "repeated"])
def test_single_leaf(style):
    vd = build_layout(_roots(ONE_LEAF), LayoutConfig(style=style))
    assert _rects(vd) == [("solo", None, None, GridRect(0, 0, 24, 8))]


def test_nested_two_leaves():
    vd = build_layout(_roots(TWO_LEAVES), LayoutConfig(style="nested"))
    assert len(vd.pages) == 1
    assert _rects(vd) == [("one", None, None, GridRect(0, 0, 6, 8)), ("two", None, None, GridRect(6, 0, 6, 8))]


def test_items_are_separated_by_gap():
    vd = build_layout(_roots(TWO_LEAVES), LayoutConfig(style="pyramidal", item_gap=2))
    assert [i.bounds for i in vd.pages[0].items] == [GridRect(0, 0, 24, 8), GridRect(0, 10, 24, 8)]


@pytest.mark.parametrize("style", ["pyramidal", "repeated", "nested"])
def test_empty_forest(style):
    vd = build_layout([], LayoutConfig(style=style))
    assert len(vd.pages) == 1 and vd.pages[0].items == ()
    assert vd.pages[0].page_id == "overview"


@pytest.mark.parametrize("style", ["pyramidal", "repeated"])
def test_chain_exceeds_depth(style):
    with pytest.raises(LayoutError) as info:
        build_layout(_roots(CHAIN4_TEXT), LayoutConfig(style=style))
    err = info.value
    assert (err.kind, err.node, err.depth, err.max_depth) == ("DepthExceeded", "C", 3, 3)
    assert str(err) == "DepthExceeded node=C depth=3 max=3"


def test_chain_fits_with_larger_cap():
    roots = _roots(CHAIN4_TEXT)
    for layout in (layout_pyramidal, layout_repeated):
        assert check_geometry(layout(roots, LayoutConfig(style="pyramidal", max_depth=4))) == []


def test_nested_chain():
    vd = layout_nested(_roots(CHAIN4_TEXT), LayoutConfig(style="nested"))
    assert [p.page_id for p in vd.pages] == ["overview", "a", "b", "c"]
    assert [p.parent_page for p in vd.pages] == [None, "overview", "a", "b"]
    assert all(len(p.items) == 1 for p in vd.pages)
    assert [p.link_to for page in vd.pages for p in page.placements()] == ["a", "b", "c", None]


def test_pyramidal_wraps_rows():
    text = "kpis: [{name: k, metric: m, target: {id: t}}]\nvisualizations:\n" + "".join(
        f"  - {{name: c{i}, kpis: [k]}}\n" for i in range(5)) + \
        "  - {name: s, kpis: [k]}\n  - {name: g, composing_visualizations: [c0, c1, c2, c3, c4], summary_visualization: s}\n"
    vd = build_layout(_roots(text), LayoutConfig(style="pyramidal", per_row=2))
    assert [p.rect for p in vd.pages[0].placements()] == [
        GridRect(0, 0, 24, 8),
        GridRect(0, 8, 12, 8), GridRect(12, 8, 12, 8),
        GridRect(0, 16, 12, 8), GridRect(12, 16, 12, 8),
        GridRect(0, 24, 12, 8),
    ]


def test_pyramidal_row_height_follows_tallest_subtree():
    text = """
kpis: [{name: k, metric: m, target: {id: t}}]
visualizations:
  - {name: g, composing_visualizations: [a, h], summary_visualization: sg}
  - {name: a, kpis: [k]}
  - {name: h, composing_visualizations: [b], summary_visualization: sh}
  - {name: b, kpis: [k]}
  - {name: sg, kpis: [k]}
  - {name: sh, kpis: [k]}
"""
    vd = build_layout(_roots(text), LayoutConfig(style="pyramidal"))
    assert _rects(vd) == [
        ("sg", "g", None, GridRect(0, 0, 24, 8)),
        ("a", None, None, GridRect(0, 8, 6, 8)),
        ("sh", "h", None, GridRect(6, 8, 6, 8)),
        ("b", None, None, GridRect(6, 16, 1, 8)),
    ]
    assert vd.pages[0].items[0].bounds.h == 24


def test_nested_page_id_collisions():
    text = """
kpis: [{name: k, metric: m, target: {id: t}}]
visualizations:
  - {name: Overview, composing_visualizations: [x], summary_visualization: s1}
  - {name: CPU!, composing_visualizations: [y], summary_visualization: s2}
  - {name: cpu, composing_visualizations: [z], summary_visualization: s3}
  - {name: '***', composing_visualizations: [w], summary_visualization: s4}
  - {name: x, kpis: [k]}
  - {name: y, kpis: [k]}
  - {name: z, kpis: [k]}
  - {name: w, kpis: [k]}
  - {name: s1, kpis: [k]}
  - {name: s2, kpis: [k]}
  - {name: s3, kpis: [k]}
  - {name: s4, kpis: [k]}
"""
    vd = build_layout(_roots(text), LayoutConfig(style="nested"))
    assert [p.page_id for p in vd.pages] == ["overview", "overview-2", "cpu", "cpu-2", "page"]


def test_repeated_narrow_grid_runs_out_of_width():
    cfg = LayoutConfig(style="repeated", grid_columns=2, per_row=1, max_depth=5)
    with pytest.raises(LayoutError) as info:
        build_layout(_roots(CHAIN4_TEXT), cfg)
    assert info.value.kind == "WidthExhausted"


def test_pyramidal_narrow_subtree_still_has_width():
    cfg = LayoutConfig(style="pyramidal", grid_columns=12, per_row=6, max_depth=4)
    vd = build_layout(_roots(CHAIN4_TEXT), cfg)
    assert check_geometry(vd) == []
    assert [p.rect.w for p in vd.pages[0].placements()] == [12, 2, 1, 1]


# -- properties over random forests -----------------------------------------

_params = st.fixed_dictionaries({
    "grid_columns": st.sampled_from([12, 24]),
    "per_row": st.integers(1, 6),
    "max_depth": st.integers(1, 5),
    "base_panel_height": st.integers(1, 10),
    "item_gap": st.integers(0, 2),
})


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), _params)
def test_layout_properties(seed, params):
    defn = parse_definition(dump(random_definition(random.Random(seed))))
    roots = build_forest(defn)
    too_deep = max((tree_depth(r) for r in roots), default=0) > params["max_depth"]
    results = {}
    for style in ("pyramidal", "repeated", "nested"):
        cfg = LayoutConfig(style=style, **params)
        if too_deep and style != "nested":
            with pytest.raises(LayoutError) as info:
                build_layout(roots, cfg)
            assert info.value.kind == "DepthExceeded"
            assert info.value.depth >= params["max_depth"]
            continue
        vd = build_layout(roots, cfg)
        assert check_geometry(vd) == []
        assert drawn_tiles(vd) == expected_tiles(roots)
        assert serialize_ir(vd) == serialize_ir(build_layout(roots, cfg))
        results[style] = vd

    if "pyramidal" in results:
        assert containment(results["pyramidal"]) == containment(results["repeated"])
    nested = results["nested"]
    assert reachable_pages(nested) == {p.page_id for p in nested.pages}
    assert link_tree(nested) == composed_tree(roots)
    assert parents_invert_links(nested)
    rect_sizes = {(p.rect.w, p.rect.h) for page in nested.pages for p in page.placements()}
    assert len(rect_sizes) <= 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.sampled_from(["pyramidal", "repeated"]))
def test_raising_the_cap_never_breaks(seed, cap, style):
    roots = build_forest(parse_definition(dump(random_definition(random.Random(seed)))))
    try:
        build_layout(roots, LayoutConfig(style=style, max_depth=cap))
    except LayoutError:
        return
    build_layout(roots, LayoutConfig(style=style, max_depth=cap + 1))
