"""Concept graph construction.

Two steps: a scaffold of named-class equivalence groups mirroring the
taxonomy, then placement of every anonymous expression harvested from
axiom-level positions. Placement keeps the isA edge set transitively
reduced after each insertion by removing edges that became implied
through the new node, so insertion order never shows in the result
(expressions are additionally processed in a canonical order).

A detail window (lower, upper) restricts which anonymous expressions are
placed; named classes are never filtered.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import (
    FUNCTIONAL,
    INVERSE_OF,
    TRANSITIVE,
    ClassAssertion,
    DisjointClasses,
    EquivalentClasses,
    Ontology,
    PropertyCharacteristic,
    PropertyDomain,
    PropertyRange,
    SubClassOf,
    SubPropertyOf,
)
from .expressions import (
    NOTHING,
    OWL_NOTHING,
    OWL_THING,
    THING,
    Atomic,
    ClassExpression,
    canonical,
    expression_id,
    is_atomic_like,
    local_name,
    render,
    structural_key,
)
from .reasoner import Reasoner, Taxonomy

PRIMITIVE = "primitive"
DEFINED = "defined"
ANONYMOUS = "anonymous"


class WindowError(ValueError):
    """Detail window bounds rejected: lower is not subsumed by upper."""


@dataclass(frozen=True)
class DetailWindow:
    upper: ClassExpression = THING
    lower: ClassExpression = NOTHING

    @property
    def is_default(self) -> bool:
        return self.upper == THING and self.lower == NOTHING


@dataclass(frozen=True)
class PropertyCharacteristics:
    functional: bool = False
    transitive: bool = False
    inverse_of: tuple[str, ...] = ()


@dataclass
class PropertyDescriptor:
    iri: str
    is_data: bool
    range_node_ids: tuple[str, ...] = ()
    range_datatypes: tuple[str, ...] = ()
    characteristics: PropertyCharacteristics = PropertyCharacteristics()
    super_properties: tuple[str, ...] = ()
    approximate: bool = False  # true when re-homed after window filtering


@dataclass
class OntoNode:
    id: str
    kind: str
    label: str
    expression: ClassExpression
    members: tuple[str, ...] = ()
    equivalents: tuple[str, ...] = ()
    parents: tuple[str, ...] = ()
    children: tuple[str, ...] = ()
    disjoint_with: tuple[str, ...] = ()
    domain_of: tuple[PropertyDescriptor, ...] = ()
    instances: tuple[str, ...] = ()
    total_descendants: int = 0


@dataclass
class OntoGraph:
    nodes: dict[str, OntoNode] = field(default_factory=dict)
    isa_edges: set[tuple[str, str]] = field(default_factory=set)  # (child, parent)
    range_edges: set[tuple[str, str, str]] = field(default_factory=set)
    sub_property_edges: set[tuple[str, str]] = field(default_factory=set)
    disjoint_pairs: set[tuple[str, str]] = field(default_factory=set)
    # canonical structural key of every carried expression -> node id
    expr_index: dict[str, str] = field(default_factory=dict)

    def node_for(self, ce: ClassExpression) -> OntoNode | None:
        node_id = self.expr_index.get(structural_key(canonical(ce)))
        return self.nodes.get(node_id) if node_id else None

    @property
    def thing_id(self) -> str:
        return expression_id(THING)

    def parents_of(self, node_id: str) -> set[str]:
        return {p for (c, p) in self.isa_edges if c == node_id}

    def children_of(self, node_id: str) -> set[str]:
        return {c for (c, p) in self.isa_edges if p == node_id}

    def descendants_of(self, node_id: str) -> set[str]:
        out: set[str] = set()
        stack = [node_id]
        down: dict[str, list[str]] = {}
        for c, p in self.isa_edges:
            down.setdefault(p, []).append(c)
        while stack:
            for child in down.get(stack.pop(), ()):
                if child not in out:
                    out.add(child)
                    stack.append(child)
        return out

    def ancestors_of(self, node_id: str) -> set[str]:
        out: set[str] = set()
        stack = [node_id]
        up: dict[str, list[str]] = {}
        for c, p in self.isa_edges:
            up.setdefault(c, []).append(p)
        while stack:
            for parent in up.get(stack.pop(), ()):
                if parent not in out:
                    out.add(parent)
                    stack.append(parent)
        return out


def _named_node(rep: str, members: tuple[str, ...], label: str | None = None) -> OntoNode:
    expr = THING if rep == OWL_THING else NOTHING if rep == OWL_NOTHING else Atomic(rep)
    others = tuple(sorted(local_name(m) for m in members if m != rep))
    return OntoNode(
        id=expression_id(expr),
        kind=PRIMITIVE,
        label=label if label is not None else local_name(rep),
        expression=expr,
        members=members,
        equivalents=others,
    )


def build_scaffold(taxonomy: Taxonomy) -> OntoGraph:
    """Named-class groups plus Thing; Nothing only when it has members."""
    graph = OntoGraph()
    present: set[str] = set()
    for group in taxonomy.groups:
        if group.representative == OWL_NOTHING and not group.members:
            continue
        node = _named_node(group.representative, group.members)
        graph.nodes[node.id] = node
        present.add(group.representative)
        for member in group.members:
            graph.expr_index[structural_key(Atomic(member))] = node.id
        graph.expr_index[structural_key(node.expression)] = node.id
    for rep, parents in taxonomy.parents.items():
        if rep not in present:
            continue
        child_id = expression_id(THING if rep == OWL_THING
                                 else NOTHING if rep == OWL_NOTHING else Atomic(rep))
        for parent in parents:
            if parent not in present:
                continue
            parent_id = expression_id(THING if parent == OWL_THING else Atomic(parent))
            graph.isa_edges.add((child_id, parent_id))
    return graph


def harvest_expressions(ontology: Ontology) -> set[ClassExpression]:
    """Non-atomic expressions in axiom-level positions, canonicalized.

    Positions: SubClassOf sides, EquivalentClasses and DisjointClasses
    members, property domains, object-property ranges, ClassAssertion
    types. Subexpressions are not harvested on their own.
    """
    found: dict[str, ClassExpression] = {}

    def consider(ce: ClassExpression) -> None:
        ce = canonical(ce)
        if not is_atomic_like(ce):
            found.setdefault(structural_key(ce), ce)

    for ax in ontology.axioms:
        if isinstance(ax, SubClassOf):
            consider(ax.sub)
            consider(ax.sup)
        elif isinstance(ax, (EquivalentClasses, DisjointClasses)):
            for m in ax.members:
                consider(m)
        elif isinstance(ax, PropertyDomain):
            consider(ax.domain)
        elif isinstance(ax, PropertyRange) and not ax.is_data:
            consider(ax.range)
        elif isinstance(ax, ClassAssertion):
            consider(ax.type)
    return set(found.values())


def _window_admits(reasoner: Reasoner, window: DetailWindow, ce: ClassExpression) -> bool:
    return (reasoner.is_subsumed(window.lower, ce)
            and reasoner.is_subsumed(ce, window.upper))


def _strictly_below(reasoner: Reasoner, a: ClassExpression, b: ClassExpression) -> bool:
    return reasoner.is_subsumed(a, b) and not reasoner.is_subsumed(b, a)


def place_expressions(graph: OntoGraph, exprs: set[ClassExpression],
                      window: DetailWindow, reasoner: Reasoner) -> OntoGraph:
    """Insert each admitted expression at its inferred position.

    Expressions equivalent to an existing node merge into it (the node
    becomes defined); new nodes connect to their direct neighbors and the
    edges they made redundant are dropped.
    """
    for ce in sorted(exprs, key=structural_key):
        if not _window_admits(reasoner, window, ce):
            continue
        _place_one(graph, ce, reasoner)
    return graph


def _place_one(graph: OntoGraph, ce: ClassExpression, reasoner: Reasoner) -> str:
    key = structural_key(ce)
    hit = graph.expr_index.get(key)
    if hit:
        return hit

    # unsatisfiable expressions belong to the Nothing node, created on demand
    if ce != NOTHING and reasoner.is_subsumed(ce, NOTHING) \
            and expression_id(NOTHING) not in graph.nodes:
        bottom = _named_node(OWL_NOTHING, ())
        _insert_with_neighbors(graph, bottom, reasoner)
        graph.expr_index[structural_key(NOTHING)] = bottom.id

    for node in graph.nodes.values():
        if reasoner.is_subsumed(ce, node.expression) \
                and reasoner.is_subsumed(node.expression, ce):
            rendered = render(ce)
            if rendered not in node.equivalents and rendered != node.label:
                node.equivalents = tuple(sorted(node.equivalents + (rendered,)))
            if node.kind != ANONYMOUS:
                node.kind = DEFINED
            graph.expr_index[key] = node.id
            return node.id

    node = OntoNode(id=expression_id(ce), kind=ANONYMOUS, label=render(ce), expression=ce)
    _insert_with_neighbors(graph, node, reasoner)
    graph.expr_index[key] = node.id
    return node.id


def _insert_with_neighbors(graph: OntoGraph, node: OntoNode, reasoner: Reasoner) -> None:
    """Wire a new node to its direct neighbors, dropping implied edges."""
    ce = node.expression
    above = [n for n in graph.nodes.values()
             if _strictly_below(reasoner, ce, n.expression)]
    below = [n for n in graph.nodes.values()
             if _strictly_below(reasoner, n.expression, ce)]
    supers = [n for n in above
              if not any(m is not n and _strictly_below(reasoner, m.expression, n.expression)
                         for m in above)]
    subs = [n for n in below
            if not any(m is not n and _strictly_below(reasoner, n.expression, m.expression)
                       for m in below)]

    graph.nodes[node.id] = node
    for sup in supers:
        graph.isa_edges.add((node.id, sup.id))
    for sub in subs:
        graph.isa_edges.add((sub.id, node.id))
        for sup in supers:
            graph.isa_edges.discard((sub.id, sup.id))


def _minimal_ancestor_nodes(graph: OntoGraph, ce: ClassExpression,
                            reasoner: Reasoner) -> list[OntoNode]:
    above = [n for n in graph.nodes.values()
             if _strictly_below(reasoner, ce, n.expression)]
    return [n for n in above
            if not any(m is not n and _strictly_below(reasoner, m.expression, n.expression)
                       for m in above)]


def attach_annotations(graph: OntoGraph, ontology: Ontology,
                       reasoner: Reasoner) -> OntoGraph:
    """Resolve properties, ranges, disjointness and instances onto nodes."""
    domains: dict[tuple[str, bool], list[ClassExpression]] = {}
    obj_ranges: dict[str, list[ClassExpression]] = {}
    data_ranges: dict[str, list[str]] = {}
    functional: set[str] = set()
    transitive: set[str] = set()
    inverses: dict[str, set[str]] = {}
    super_props: dict[str, set[str]] = {}

    for ax in ontology.axioms:
        if isinstance(ax, PropertyDomain):
            domains.setdefault((ax.prop, ax.is_data), []).append(canonical(ax.domain))
        elif isinstance(ax, PropertyRange):
            if ax.is_data:
                data_ranges.setdefault(ax.prop, []).append(
                    ax.range if isinstance(ax.range, str) else render(ax.range))
            else:
                obj_ranges.setdefault(ax.prop, []).append(canonical(ax.range))
        elif isinstance(ax, PropertyCharacteristic):
            if ax.kind == FUNCTIONAL:
                functional.add(ax.prop)
            elif ax.kind == TRANSITIVE:
                transitive.add(ax.prop)
            elif ax.kind == INVERSE_OF and ax.other:
                inverses.setdefault(ax.prop, set()).add(ax.other)
                inverses.setdefault(ax.other, set()).add(ax.prop)
        elif isinstance(ax, SubPropertyOf):
            super_props.setdefault(ax.sub, set()).add(ax.sup)
            graph.sub_property_edges.add((ax.sub, ax.sup))

    # property descriptors, grouped per carrying node
    per_node: dict[str, dict[tuple[str, bool], PropertyDescriptor]] = {}
    for (prop, is_data), domain_exprs in sorted(
            domains.items(), key=lambda item: (item[0][0], item[0][1])):
        range_ids = []
        for r in sorted(obj_ranges.get(prop, ()), key=structural_key):
            target = graph.node_for(r)
            if target is not None:
                range_ids.append(target.id)
        descriptor = PropertyDescriptor(
            iri=prop,
            is_data=is_data,
            range_node_ids=tuple(dict.fromkeys(range_ids)),
            range_datatypes=tuple(sorted(set(data_ranges.get(prop, ())))),
            characteristics=PropertyCharacteristics(
                functional=prop in functional,
                transitive=prop in transitive,
                inverse_of=tuple(sorted(inverses.get(prop, ()))),
            ),
            super_properties=tuple(sorted(super_props.get(prop, ()))),
        )
        for dom in sorted(set(domain_exprs), key=structural_key):
            carrier = graph.node_for(dom)
            if carrier is not None:
                targets = [(carrier, False)]
            else:
                # window-filtered domain: nearest nodes still visible above it
                targets = [(n, True) for n in _minimal_ancestor_nodes(graph, dom, reasoner)]
            for node, approx in targets:
                existing = per_node.setdefault(node.id, {})
                slot = existing.get((prop, is_data))
                if slot is None or (slot.approximate and not approx):
                    existing[(prop, is_data)] = PropertyDescriptor(
                        **{**descriptor.__dict__, "approximate": approx})

    for node_id, slots in per_node.items():
        node = graph.nodes[node_id]
        descriptors = tuple(slots[k] for k in sorted(slots))
        node.domain_of = descriptors
        for d in descriptors:
            for target in d.range_node_ids:
                graph.range_edges.add((node_id, d.iri, target))

    # disjointness: asserted pairs (any member shape) plus derived named pairs
    pair_nodes: set[tuple[str, str]] = set()

    def add_pair(a: OntoNode | None, b: OntoNode | None) -> None:
        if a is None or b is None or a.id == b.id:
            return
        pair_nodes.add((min(a.id, b.id), max(a.id, b.id)))

    for ax in ontology.axioms:
        if isinstance(ax, DisjointClasses):
            carried = [graph.node_for(m) for m in ax.members]
            for i in range(len(carried)):
                for j in range(i + 1, len(carried)):
                    add_pair(carried[i], carried[j])
    for a_iri, b_iri in reasoner.inferred_disjoint_pairs():
        add_pair(graph.node_for(Atomic(a_iri)), graph.node_for(Atomic(b_iri)))
    graph.disjoint_pairs = pair_nodes
    partners: dict[str, set[str]] = {}
    for a, b in pair_nodes:
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    for node_id, others in partners.items():
        graph.nodes[node_id].disjoint_with = tuple(sorted(others))

    # instances: atomic or placed anonymous types only
    instances: dict[str, set[str]] = {}
    for ax in ontology.axioms:
        if isinstance(ax, ClassAssertion):
            node = graph.node_for(ax.type)
            if node is not None:
                instances.setdefault(node.id, set()).add(ax.individual)
    for node_id, inds in instances.items():
        graph.nodes[node_id].instances = tuple(sorted(inds))

    _finalize(graph)
    return graph


def _finalize(graph: OntoGraph) -> None:
    """Fill parent/child lists and descendant counters from the edge set."""
    order = {node_id: i for i, node_id in enumerate(graph.nodes)}
    ups: dict[str, list[str]] = {n: [] for n in graph.nodes}
    downs: dict[str, list[str]] = {n: [] for n in graph.nodes}
    for child, parent in graph.isa_edges:
        ups[child].append(parent)
        downs[parent].append(child)
    for node_id, node in graph.nodes.items():
        node.parents = tuple(sorted(ups[node_id], key=order.get))
        node.children = tuple(sorted(downs[node_id], key=order.get))
    for node_id, node in graph.nodes.items():
        node.total_descendants = len(graph.descendants_of(node_id))


def validate_window(window: DetailWindow, reasoner: Reasoner) -> None:
    if not reasoner.is_subsumed(window.lower, window.upper):
        raise WindowError(
            f"window lower bound {render(window.lower)!r} is not subsumed "
            f"by upper bound {render(window.upper)!r}")


def build_graph(ontology: Ontology, reasoner: Reasoner, taxonomy: Taxonomy,
                window: DetailWindow | None = None) -> OntoGraph:
    """Full pipeline: scaffold, harvest, place, annotate, count."""
    window = window or DetailWindow()
    validate_window(window, reasoner)
    graph = build_scaffold(taxonomy)
    exprs = harvest_expressions(ontology)
    for ce in exprs:  # register everything before the placement queries
        reasoner.register(ce)
    place_expressions(graph, exprs, window, reasoner)
    attach_annotations(graph, ontology, reasoner)
    return graph
