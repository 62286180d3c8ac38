"""Snapshot rendering of the current view as standalone SVG 1.1.

Output is deterministic: identical graph, state and geometry produce
byte-identical documents.  Everything is emitted in sorted order with a
fixed numeric format; no timestamps, no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .expressions import local_name
from .graph import ANONYMOUS, DEFINED, OntoGraph, OntoNode
from .layout import Layout, LayoutConfig, LayoutItem, Rect, compute_layout
from .owlfss import PrefixTable
from .viewstate import ViewState, derive_dashed

_PREFIXES = PrefixTable()

ISA_COLOR = "#3566b5"
SELECTED_COLOR = "#e08a2e"
RANGE_COLOR = "#7fb3d5"
DISJOINT_COLOR = "#cc2222"
GUIDE_COLOR = "#d9d9d9"
PRIMITIVE_FILL = "#ececec"
ANONYMOUS_FILL = "#f5f0fa"
DEFINED_FILL = "#ffffff"
EQUIV_BAND_FILL = "#8fd19e"
NODE_STROKE = "#808080"
BAR_BG = "#dddddd"
BAR_FILL = "#4caf50"
MARKER_FILL = "#fff3c4"
PROP_ROW_FILL = "#fffbe6"

FONT = "Helvetica, Arial, sans-serif"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


@dataclass(frozen=True)
class ViewLayout:
    """Geometry of the visible part of a graph plus its dashed edges."""
    layout: Layout
    solid_edges: list[tuple[str, str]]
    dashed_edges: list[tuple[str, str]]


def layout_view(graph: OntoGraph, state: ViewState,
                config: LayoutConfig | None = None,
                levels: dict[str, int] | None = None) -> ViewLayout:
    """Lay out the visible nodes on the bands of the full hierarchy.

    Dashed indirect connectors take part in the crossing minimization
    like ordinary edges.
    """
    from .layout import assign_levels

    if levels is None:
        levels = assign_levels(list(graph.nodes), graph.isa_edges)
    items = [LayoutItem(node_id, node.label, extra_lines=len(node.equivalents))
             for node_id, node in graph.nodes.items() if node_id in state.visible]
    solid = sorted((a, b) for a, b in graph.isa_edges
                   if a in state.visible and b in state.visible)
    dashed = sorted(derive_dashed(state, graph))
    layout = compute_layout(items, set(solid) | set(dashed), config, levels=levels)
    return ViewLayout(layout=layout, solid_edges=solid, dashed_edges=dashed)


def _node_rect(state: ViewState, layout: Layout, node_id: str) -> Rect:
    rect = layout.geometry[node_id]
    override = state.position_overrides.get(node_id)
    if override is not None:
        rect = Rect(override[0], override[1], rect.width, rect.height)
    return rect


def _edge_points(layout: Layout, rects: dict[str, Rect],
                 child: str, parent: str) -> list[tuple[float, float]]:
    start = rects[child]
    end = rects[parent]
    mids = list(reversed(layout.edge_waypoints.get((child, parent), [])))
    return [(start.x, start.cy), *mids, (end.x + end.width, end.cy)]


def _polyline(points: list[tuple[float, float]], stroke: str, dashed: bool,
              width: float = 1.2) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    dash = ' stroke-dasharray="6 4"' if dashed else ""
    return (f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"{dash}/>')


def _text(x: float, y: float, content: str, size: int = 12,
          anchor: str = "middle", style: str = "") -> str:
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="{FONT}" '
            f'font-size="{size}" text-anchor="{anchor}"{style}>'
            f'{escape(content)}</text>')


def _property_rows(node: OntoNode, graph: OntoGraph) -> list[str]:
    rows = []
    for desc in node.domain_of:
        name = local_name(desc.iri)
        targets: list[str] = []
        for dt in desc.range_datatypes:
            compacted = _PREFIXES.compact(dt)
            targets.append(local_name(dt) if compacted.startswith("<") else compacted)
        targets += [graph.nodes[t].label for t in desc.range_node_ids
                    if t in graph.nodes]
        flags = []
        if desc.characteristics.functional:
            flags.append("functional")
        if desc.characteristics.transitive:
            flags.append("transitive")
        text = name
        if targets:
            text += " : " + ", ".join(targets)
        if flags:
            text += " (" + ", ".join(flags) + ")"
        rows.append(text)
    return rows


def export_svg(state: ViewState, graph: OntoGraph, view_layout: ViewLayout) -> str:
    """Standalone SVG document for the visible part of the graph."""
    layout = view_layout.layout
    parts: list[str] = []
    visible = [node_id for node_id in graph.nodes if node_id in state.visible]
    rects = {node_id: _node_rect(state, layout, node_id) for node_id in visible}

    prop_rows = {
        node_id: _property_rows(graph.nodes[node_id], graph)
        for node_id in visible
        if state.deployed_markers.get(node_id, None)
        and state.deployed_markers[node_id].properties
    }

    width = max((r.x + r.width for r in rects.values()), default=0.0) + 24.0
    height = max((r.y + r.height for r in rects.values()), default=0.0) + 24.0
    for node_id, rows in prop_rows.items():
        if rows:
            height = max(height, rects[node_id].y + rects[node_id].height
                         + 6 + 13.0 * len(rows) + 24.0)

    # level guide lines between bands
    guides = []
    bands = sorted(layout.level_bands.items())
    for level, (bx, _bw) in bands:
        if level == 0:
            continue
        gx = bx - 32.0
        guides.append(f'<line x1="{_fmt(gx)}" y1="0" x2="{_fmt(gx)}" '
                      f'y2="{_fmt(height)}" stroke="{GUIDE_COLOR}" stroke-width="1"/>')
    parts.extend(guides)

    # connectors below nodes
    for child, parent in view_layout.solid_edges:
        color = SELECTED_COLOR if state.selection in (child, parent) else ISA_COLOR
        parts.append(_polyline(_edge_points(layout, rects, child, parent), color, False))
    for child, parent in view_layout.dashed_edges:
        color = SELECTED_COLOR if state.selection in (child, parent) else ISA_COLOR
        parts.append(_polyline(_edge_points(layout, rects, child, parent), color, True))

    # range connectors for deployed property lists
    for carrier, prop, target in sorted(graph.range_edges):
        if carrier in prop_rows and target in rects:
            a, b = rects[carrier], rects[target]
            parts.append(_polyline([(a.cx, a.y + a.height), (b.cx, b.y + b.height)],
                                   RANGE_COLOR, False))

    # red disjoint lines, two parallel strokes per pair
    drawn = set()
    for a, b in sorted(graph.disjoint_pairs):
        if a not in rects or b not in rects or (a, b) in drawn:
            continue
        deployed_a = state.deployed_markers.get(a)
        deployed_b = state.deployed_markers.get(b)
        if not ((deployed_a and deployed_a.disjoint)
                or (deployed_b and deployed_b.disjoint)):
            continue
        drawn.add((a, b))
        ra, rb = rects[a], rects[b]
        for offset in (-1.5, 1.5):
            parts.append(_polyline([(ra.cx, ra.cy + offset), (rb.cx, rb.cy + offset)],
                                   DISJOINT_COLOR, False, width=1.0))

    disjoint_partners: dict[str, bool] = {}
    for a, b in graph.disjoint_pairs:
        disjoint_partners[a] = True
        disjoint_partners[b] = True

    # nodes on top
    for node_id in visible:
        node = graph.nodes[node_id]
        rect = rects[node_id]
        if node.kind == DEFINED:
            fill = DEFINED_FILL
        elif node.kind == ANONYMOUS:
            fill = ANONYMOUS_FILL
        else:
            fill = PRIMITIVE_FILL
        border_dash = ' stroke-dasharray="3 2"' if node.kind == ANONYMOUS else ""
        parts.append(f'<rect x="{_fmt(rect.x)}" y="{_fmt(rect.y)}" '
                     f'width="{_fmt(rect.width)}" height="{_fmt(rect.height)}" '
                     f'fill="{fill}" stroke="{NODE_STROKE}"{border_dash} rx="3"/>')

        # visible-descendant ratio bar along the top edge
        total = node.total_descendants
        shown = len(graph.descendants_of(node_id) & state.visible)
        frac = shown / total if total else 1.0
        parts.append(f'<rect x="{_fmt(rect.x)}" y="{_fmt(rect.y)}" '
                     f'width="{_fmt(rect.width)}" height="3" fill="{BAR_BG}"/>')
        parts.append(f'<rect x="{_fmt(rect.x)}" y="{_fmt(rect.y)}" '
                     f'width="{_fmt(rect.width * frac)}" height="3" fill="{BAR_FILL}"/>')

        label_style = ' font-style="italic"' if node.kind == ANONYMOUS else ""
        parts.append(_text(rect.cx, rect.y + 20, node.label, style=label_style))

        if node.equivalents:
            band_y = rect.y + 26
            band_h = rect.height - 26 - 4
            parts.append(f'<rect x="{_fmt(rect.x + 3)}" y="{_fmt(band_y)}" '
                         f'width="{_fmt(rect.width - 6)}" height="{_fmt(band_h)}" '
                         f'fill="{EQUIV_BAND_FILL}"/>')
            for i, text in enumerate(node.equivalents):
                parts.append(_text(rect.cx, band_y + 11 + i * 13.0, text, size=10))

        # markers: D for disjointness, P for property domains
        marker_x = rect.x + rect.width - 11
        if disjoint_partners.get(node_id):
            parts.append(f'<rect x="{_fmt(marker_x)}" y="{_fmt(rect.y + 5)}" '
                         f'width="10" height="10" fill="{MARKER_FILL}" '
                         f'stroke="{NODE_STROKE}"/>')
            parts.append(_text(marker_x + 5, rect.y + 13, "D", size=8))
            marker_x -= 12
        if node.domain_of:
            parts.append(f'<rect x="{_fmt(marker_x)}" y="{_fmt(rect.y + 5)}" '
                         f'width="10" height="10" fill="{MARKER_FILL}" '
                         f'stroke="{NODE_STROKE}"/>')
            parts.append(_text(marker_x + 5, rect.y + 13, "P", size=8))

        rows = prop_rows.get(node_id, [])
        for i, row in enumerate(rows):
            row_y = rect.y + rect.height + 6 + i * 13.0
            parts.append(f'<rect x="{_fmt(rect.x)}" y="{_fmt(row_y)}" '
                         f'width="{_fmt(rect.width)}" height="12" '
                         f'fill="{PROP_ROW_FILL}" stroke="{NODE_STROKE}" '
                         f'stroke-width="0.5"/>')
            parts.append(_text(rect.x + 3, row_y + 10, row, size=9, anchor="start"))

    out_w = width * state.zoom
    out_h = height * state.zoom
    header = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(out_w)}" height="{_fmt(out_h)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
        'fill="#ffffff"/>\n'
    )
    return header + "\n".join(parts) + "\n</svg>\n"


def export_dot(graph: OntoGraph, state: ViewState | None = None) -> str:
    """Graphviz rendition of the (visible) hierarchy, for external tooling."""
    visible = set(graph.nodes) if state is None else state.visible
    lines = ["digraph ontology {", '  rankdir="RL";',
             '  node [shape=box, fontname="Helvetica"];']
    for node_id in graph.nodes:
        if node_id not in visible:
            continue
        label = graph.nodes[node_id].label.replace('"', r'\"')
        lines.append(f'  "{node_id}" [label="{label}"];')
    for child, parent in sorted(graph.isa_edges):
        if child in visible and parent in visible:
            lines.append(f'  "{child}" -> "{parent}";')
    if state is not None:
        for child, parent in sorted(derive_dashed(state, graph)):
            lines.append(f'  "{child}" -> "{parent}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
