"""Hierarchical layout: levels, crossing reduction, geometry.

Levels are longest-path distances from the root, so a node always sits in
a deeper band than every ancestor. Bands grow rightward; the y axis
carries within-level order, refined by barycenter sweeps that alternate
direction and never accept an ordering with more crossings than the
incumbent. Edges spanning several levels are routed through invisible
virtual nodes, one per crossed level, which take part in the ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class CycleError(ValueError):
    """The hierarchy edges contain a cycle; levels are undefined."""


@dataclass(frozen=True)
class LayoutItem:
    id: str
    label: str
    extra_lines: int = 0  # additional text rows inside the node box


@dataclass(frozen=True)
class LayoutConfig:
    sweeps: int = 4
    char_width: float = 7.5
    node_pad: float = 18.0
    node_height: float = 34.0
    line_height: float = 13.0
    min_vgap: float = 14.0
    band_gap: float = 64.0
    margin: float = 24.0


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    width: float
    height: float

    @property
    def cx(self) -> float:
        return self.x + self.width / 2

    @property
    def cy(self) -> float:
        return self.y + self.height / 2


@dataclass
class Layout:
    levels: dict[str, int]
    orders: dict[int, list[str]]
    initial_orders: dict[int, list[str]]
    geometry: dict[str, Rect]
    level_bands: dict[int, tuple[float, float]]
    edge_waypoints: dict[tuple[str, str], list[tuple[float, float]]]
    crossings_before: int
    crossings_after: int
    virtual_ids: set[str] = field(default_factory=set)


def assign_levels(node_ids: list[str], isa_edges: set[tuple[str, str]]) -> dict[str, int]:
    """Longest path from the parentless roots; child = 1 + max over parents."""
    parents: dict[str, list[str]] = {n: [] for n in node_ids}
    children: dict[str, list[str]] = {n: [] for n in node_ids}
    for child, parent in isa_edges:
        parents[child].append(parent)
        children[parent].append(child)
    pending = {n: len(parents[n]) for n in node_ids}
    queue = [n for n in node_ids if pending[n] == 0]
    level = {n: 0 for n in queue}
    seen = 0
    while queue:
        nxt: list[str] = []
        for node in queue:
            seen += 1
            for child in children[node]:
                level[child] = max(level.get(child, 0), level[node] + 1)
                pending[child] -= 1
                if pending[child] == 0:
                    nxt.append(child)
        queue = nxt
    if seen != len(node_ids):
        raise CycleError("hierarchy edges contain a cycle")
    return level


def _virtualize(levels: dict[str, int], isa_edges: set[tuple[str, str]]
                ) -> tuple[dict[str, int], list[tuple[str, str]],
                           dict[tuple[str, str], list[str]]]:
    """Break long edges into unit segments through virtual nodes.

    Returns (levels incl. virtuals, unit segments as (shallow, deep) pairs,
    per original edge the virtual chain ordered parent-side first).
    """
    out_levels = dict(levels)
    segments: list[tuple[str, str]] = []
    chains: dict[tuple[str, str], list[str]] = {}
    for child, parent in sorted(isa_edges):
        lp, lc = levels[parent], levels[child]
        hops = lc - lp
        if hops == 1:
            segments.append((parent, child))
            continue
        chain = []
        prev = parent
        for k in range(1, hops):
            vid = f"__v|{child}|{parent}|{k}"
            out_levels[vid] = lp + k
            chain.append(vid)
            segments.append((prev, vid))
            prev = vid
        segments.append((prev, child))
        chains[(child, parent)] = chain
    return out_levels, segments, chains


def _count_crossings(orders: dict[int, list[str]],
                     segments: list[tuple[str, str]],
                     levels: dict[str, int]) -> int:
    pos = {n: i for order in orders.values() for i, n in enumerate(order)}
    by_level: dict[int, list[tuple[str, str]]] = {}
    for u, w in segments:
        by_level.setdefault(levels[u], []).append((u, w))
    total = 0
    for bucket in by_level.values():
        for (u1, w1), (u2, w2) in itertools.combinations(bucket, 2):
            if (pos[u1] - pos[u2]) * (pos[w1] - pos[w2]) < 0:
                total += 1
    return total


def order_levels(levels: dict[str, int], segments: list[tuple[str, str]],
                 initial_orders: dict[int, list[str]],
                 labels: dict[str, str], sweeps: int = 4) -> tuple[dict[int, list[str]], int, int]:
    """Barycenter ordering; returns (orders, crossings before, after)."""
    up: dict[str, list[str]] = {}
    down: dict[str, list[str]] = {}
    for u, w in segments:
        down.setdefault(u, []).append(w)
        up.setdefault(w, []).append(u)

    incumbent = {lvl: list(order) for lvl, order in initial_orders.items()}
    before = _count_crossings(incumbent, segments, levels)
    best = before
    max_level = max(initial_orders) if initial_orders else 0

    def sweep(orders: dict[int, list[str]], downward: bool) -> dict[int, list[str]]:
        fresh = {lvl: list(order) for lvl, order in orders.items()}
        rng = range(1, max_level + 1) if downward else range(max_level - 1, -1, -1)
        nbrs = up if downward else down
        for lvl in rng:
            ref = {n: i for i, n in enumerate(fresh[lvl + (-1 if downward else 1)])}
            current = fresh[lvl]
            here = {n: i for i, n in enumerate(current)}

            def bary(n: str) -> float:
                linked = [ref[m] for m in nbrs.get(n, ()) if m in ref]
                return sum(linked) / len(linked) if linked else float(here[n])

            fresh[lvl] = sorted(current, key=lambda n: (bary(n), labels.get(n, ""), n))
        return fresh

    for round_no in range(sweeps):
        candidate = sweep(incumbent, downward=(round_no % 2 == 0))
        crossings = _count_crossings(candidate, segments, levels)
        if crossings <= best:
            incumbent = candidate
            best = crossings
    return incumbent, before, best


def compute_layout(items: list[LayoutItem], isa_edges: set[tuple[str, str]],
                   config: LayoutConfig | None = None,
                   levels: dict[str, int] | None = None) -> Layout:
    """Deterministic geometry for a DAG of labeled nodes.

    Items must come in a stable order; it defines the initial within-level
    arrangement whose crossing count the result never exceeds.  Pass
    `levels` to pin nodes to precomputed bands (a partial view keeps the
    bands of the full hierarchy); every edge must still point from a
    deeper child to a strictly shallower parent.
    """
    config = config or LayoutConfig()
    ids = [it.id for it in items]
    by_id = {it.id: it for it in items}
    if levels is None:
        base_levels = assign_levels(ids, isa_edges)
    else:
        base_levels = {i: levels[i] for i in ids}
        for child, parent in isa_edges:
            if base_levels[child] <= base_levels[parent]:
                raise CycleError(f"edge {child} -> {parent} does not go upward")
    levels, segments, chains = _virtualize(base_levels, isa_edges)

    initial: dict[int, list[str]] = {lvl: [] for lvl in range(max(levels.values(), default=0) + 1)}
    for it in items:
        initial[base_levels[it.id]].append(it.id)
    for vid in sorted(v for v in levels if v not in by_id):
        initial[levels[vid]].append(vid)

    labels = {it.id: it.label for it in items}
    orders, before, after = order_levels(levels, segments, initial, labels, config.sweeps)

    def width_of(node_id: str) -> float:
        item = by_id.get(node_id)
        if item is None:
            return 0.0
        return config.node_pad + config.char_width * len(item.label)

    def height_of(node_id: str) -> float:
        item = by_id.get(node_id)
        if item is None:
            return 0.0
        return config.node_height + config.line_height * item.extra_lines

    bands: dict[int, tuple[float, float]] = {}
    x = config.margin
    for lvl in sorted(orders):
        band_width = max([width_of(n) for n in orders[lvl]] or [config.node_pad])
        bands[lvl] = (x, x + band_width)
        x += band_width + config.band_gap

    up: dict[str, list[str]] = {}
    for u, w in segments:
        up.setdefault(w, []).append(u)

    geometry: dict[str, Rect] = {}
    centers: dict[str, float] = {}
    for lvl in sorted(orders):
        desired: list[float] = []
        for node in orders[lvl]:
            anchors = [centers[p] for p in up.get(node, ()) if p in centers]
            desired.append(sum(anchors) / len(anchors) if anchors else config.margin)
        floor = config.margin
        for node, want in zip(orders[lvl], desired):
            h = height_of(node) or config.min_vgap
            top = max(want - h / 2, floor)
            centers[node] = top + h / 2
            floor = top + h + config.min_vgap
            w = width_of(node)
            band_start, band_end = bands[lvl]
            node_x = band_start + ((band_end - band_start) - w) / 2
            geometry[node] = Rect(node_x, top, w, h)

    waypoints: dict[tuple[str, str], list[tuple[float, float]]] = {}
    for edge, chain in chains.items():
        waypoints[edge] = [(geometry[v].cx, geometry[v].cy) for v in chain]

    real_geometry = {n: r for n, r in geometry.items() if n in by_id}
    return Layout(
        levels=base_levels,
        orders=orders,
        initial_orders=initial,
        geometry=real_geometry,
        level_bands=bands,
        edge_waypoints=waypoints,
        crossings_before=before,
        crossings_after=after,
        virtual_ids={v for v in levels if v not in by_id},
    )
