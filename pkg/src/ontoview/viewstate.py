"""Visibility management: expand/collapse steps, sliders, dashed
connectors, counters, search, and view persistence.

All operations are pure: they take a ViewState and return a new one.
Reveal order is driven by a policy: "relevance" picks by score globally,
"general-first" fills shallower levels first, "specific-first" deeper
levels first; within a level ties break by score, then label, then id.
The step size is a percentage of a node's total descendant count, with a
floor of one node so progress is guaranteed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .axioms import LabelAnnotation, Ontology
from .expressions import Atomic, ClassExpression
from .graph import DetailWindow, OntoGraph
from .layout import assign_levels
from .owlfss import PrefixTable, parse_class_expression, serialize_expression

POLICIES = ("relevance", "general-first", "specific-first")

VIEW_FORMAT = "ontview-view"
VIEW_VERSION = 1


class ViewDocumentError(ValueError):
    """A view document cannot be applied to this graph."""


@dataclass(frozen=True)
class Markers:
    disjoint: bool = False
    properties: bool = False


@dataclass(frozen=True)
class ViewState:
    visible: frozenset[str]
    step_percent: float = 25.0
    policy: str = "relevance"
    zoom: float = 1.0
    detail_window: DetailWindow = field(default_factory=DetailWindow)
    position_overrides: dict[str, tuple[float, float]] = field(default_factory=dict)
    selection: str | None = None
    deployed_markers: dict[str, Markers] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (0 < self.step_percent <= 100):
            raise ValueError("step percent must be in (0, 100]")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.zoom <= 0:
            raise ValueError("zoom must be positive")


def initial_state(graph: OntoGraph, step_percent: float = 25.0,
                  policy: str = "relevance") -> ViewState:
    return ViewState(visible=frozenset(graph.nodes),
                     step_percent=step_percent, policy=policy)


def _step_count(step_percent: float, total: int) -> int:
    return max(1, math.ceil(step_percent * total / 100))


def policy_order(graph: OntoGraph, candidates: set[str], policy: str,
                 scores: dict[str, float] | None,
                 levels: dict[str, int] | None) -> list[str]:
    """Candidates sorted so that the first element is revealed first."""
    scores = scores or {}
    if levels is None:
        levels = assign_levels(list(graph.nodes), graph.isa_edges)

    def key(node_id: str):
        score = -scores.get(node_id, 0.0)
        label = graph.nodes[node_id].label
        if policy == "relevance":
            return (score, label, node_id)
        if policy == "general-first":
            return (levels[node_id], score, label, node_id)
        return (-levels[node_id], score, label, node_id)

    return sorted(candidates, key=key)


def _pool(graph: OntoGraph, node_id: str, direction: str) -> tuple[set[str], int]:
    """(relatives in the given direction, percentage base)."""
    if direction == "descendants":
        relatives = graph.descendants_of(node_id)
        return relatives, graph.nodes[node_id].total_descendants
    if direction == "ancestors":
        relatives = graph.ancestors_of(node_id)
        return relatives, len(relatives)
    raise ValueError(f"unknown direction {direction!r}")


def expand(state: ViewState, graph: OntoGraph, node_id: str,
           direction: str = "descendants",
           scores: dict[str, float] | None = None,
           levels: dict[str, int] | None = None) -> tuple[ViewState, tuple[str, ...]]:
    """Reveal the next step of hidden relatives; returns the revealed ids
    (empty when there was nothing left to reveal)."""
    relatives, base = _pool(graph, node_id, direction)
    hidden = relatives - state.visible
    if not hidden:
        return state, ()
    k = _step_count(state.step_percent, base)
    chosen = policy_order(graph, hidden, state.policy, scores, levels)[:k]
    return replace(state, visible=state.visible | set(chosen)), tuple(chosen)


def collapse(state: ViewState, graph: OntoGraph, node_id: str,
             direction: str = "descendants",
             scores: dict[str, float] | None = None,
             levels: dict[str, int] | None = None) -> tuple[ViewState, tuple[str, ...]]:
    """Hide one step of visible relatives, in reverse reveal order.

    In the ancestors direction a node survives while it still has a
    visible descendant outside the collapsed branch; Thing never hides.
    """
    relatives, base = _pool(graph, node_id, direction)
    candidates = (relatives & state.visible) - {graph.thing_id}
    if not candidates:
        return state, ()
    k = _step_count(state.step_percent, base)
    ordered = policy_order(graph, candidates, state.policy, scores, levels)
    working = set(state.visible)
    hidden: list[str] = []
    branch: set[str] = set()
    if direction == "ancestors":
        branch = {node_id} | graph.descendants_of(node_id)
    for candidate in reversed(ordered):
        if len(hidden) == k:
            break
        if direction == "ancestors":
            outside = (graph.descendants_of(candidate) & working) - branch
            if outside:
                continue
        working.discard(candidate)
        hidden.append(candidate)
    return replace(state, visible=frozenset(working)), tuple(hidden)


def set_slider(state: ViewState, graph: OntoGraph, node_id: str, percent: float,
               scores: dict[str, float] | None = None,
               levels: dict[str, int] | None = None) -> ViewState:
    """Make exactly the top percent of the node's descendants visible."""
    if not (0 <= percent <= 100):
        raise ValueError("slider percent must be in [0, 100]")
    descendants = graph.descendants_of(node_id)
    total = graph.nodes[node_id].total_descendants
    k = int(percent * total / 100 + 0.5)
    chosen = policy_order(graph, descendants, state.policy, scores, levels)[:k]
    visible = (state.visible - descendants) | set(chosen) | {graph.thing_id}
    return replace(state, visible=frozenset(visible))


def derive_dashed(state: ViewState, graph: OntoGraph) -> set[tuple[str, str]]:
    """Indirect connectors: (descendant, ancestor) pairs where every
    connecting path is currently broken and no closer visible ancestor
    conveys the relationship already."""
    ancestors: dict[str, set[str]] = {
        node_id: graph.ancestors_of(node_id) for node_id in state.visible}
    dashed: set[tuple[str, str]] = set()
    for node_id in state.visible:
        visible_up = ancestors[node_id] & state.visible
        for upper in visible_up:
            if (node_id, upper) in graph.isa_edges:
                continue
            if any(upper in ancestors[mid]
                   for mid in visible_up if mid != upper):
                continue
            dashed.add((node_id, upper))
    return dashed


def visible_ratio(state: ViewState, graph: OntoGraph, node_id: str) -> tuple[int, int]:
    descendants = graph.descendants_of(node_id)
    return len(descendants & state.visible), graph.nodes[node_id].total_descendants


def annotation_labels(graph: OntoGraph, ontology: Ontology) -> dict[str, list[str]]:
    """rdfs:label strings per node id, for search."""
    out: dict[str, list[str]] = {}
    for ax in ontology.axioms:
        if isinstance(ax, LabelAnnotation):
            node = graph.node_for(Atomic(ax.subject))
            if node is not None:
                out.setdefault(node.id, []).append(ax.label)
    return out


def search(graph: OntoGraph, query: str,
           extra_labels: dict[str, list[str]] | None = None) -> list[str]:
    """Case-insensitive substring search over labels, annotation labels
    and rendered expressions, ordered by match position then label."""
    q = query.strip().lower()
    if not q:
        return []
    hits: list[tuple[int, str, str]] = []
    for node_id, node in graph.nodes.items():
        haystacks = [node.label, *node.equivalents]
        if extra_labels:
            haystacks.extend(extra_labels.get(node_id, ()))
        positions = [s.lower().find(q) for s in haystacks]
        matched = [p for p in positions if p >= 0]
        if matched:
            hits.append((min(matched), node.label, node_id))
    return [node_id for _, _, node_id in sorted(hits)]


# ---------------------------------------------------------------------------
# Persistence

def _expression_text(ce: ClassExpression) -> str:
    return serialize_expression(ce, PrefixTable())


def save_view(state: ViewState) -> str:
    doc = {
        "format": VIEW_FORMAT,
        "version": VIEW_VERSION,
        "visible": sorted(state.visible),
        "stepPercent": state.step_percent,
        "policy": state.policy,
        "zoom": state.zoom,
        "detailWindow": {
            "upper": _expression_text(state.detail_window.upper),
            "lower": _expression_text(state.detail_window.lower),
        },
        "positionOverrides": {
            node_id: [x, y]
            for node_id, (x, y) in sorted(state.position_overrides.items())
        },
        "selection": state.selection,
        "deployedMarkers": {
            node_id: {"d": m.disjoint, "p": m.properties}
            for node_id, m in sorted(state.deployed_markers.items())
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_view(text: str, graph: OntoGraph) -> ViewState:
    """Parse and validate a saved view against the current graph.

    Unknown node ids are collected and reported together, never dropped.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ViewDocumentError(f"not a valid view document: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != VIEW_FORMAT:
        raise ViewDocumentError("not a view document (missing format marker)")
    if doc.get("version") != VIEW_VERSION:
        raise ViewDocumentError(
            f"unsupported view document version {doc.get('version')!r}; "
            f"expected {VIEW_VERSION}")

    referenced = set(doc.get("visible", []))
    referenced.update(doc.get("positionOverrides", {}))
    referenced.update(doc.get("deployedMarkers", {}))
    if doc.get("selection"):
        referenced.add(doc["selection"])
    unknown = sorted(r for r in referenced if r not in graph.nodes)
    if unknown:
        raise ViewDocumentError("unknown node ids: " + ", ".join(unknown))

    window = DetailWindow(
        upper=parse_class_expression(doc["detailWindow"]["upper"]),
        lower=parse_class_expression(doc["detailWindow"]["lower"]),
    )
    return ViewState(
        visible=frozenset(doc["visible"]),
        step_percent=doc["stepPercent"],
        policy=doc["policy"],
        zoom=doc["zoom"],
        detail_window=window,
        position_overrides={
            node_id: (float(x), float(y))
            for node_id, (x, y) in doc.get("positionOverrides", {}).items()
        },
        selection=doc.get("selection"),
        deployed_markers={
            node_id: Markers(disjoint=bool(m.get("d")), properties=bool(m.get("p")))
            for node_id, m in doc.get("deployedMarkers", {}).items()
        },
    )
