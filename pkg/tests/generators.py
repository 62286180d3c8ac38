"""Seeded random inputs for property and acceptance tests."""

from __future__ import annotations

import random

from ontoview.axioms import (
    DisjointClasses,
    EquivalentClasses,
    Ontology,
    PropertyDomain,
    SubClassOf,
    SubPropertyOf,
    canonical_axiom,
)
from ontoview.expressions import (
    NOTHING,
    THING,
    And,
    Atomic,
    ClassExpression,
    Exists,
)

NS = "http://example.org/gen#"


def class_iri(i: int) -> str:
    return f"{NS}C{i}"


def role_iri(i: int) -> str:
    return f"{NS}r{i}"


def random_el_expression(rng: random.Random, n_classes: int, n_roles: int,
                         depth: int = 2, allow_extremes: bool = True) -> ClassExpression:
    roll = rng.random()
    if depth <= 0 or roll < 0.55:
        if allow_extremes and rng.random() < 0.05:
            return THING if rng.random() < 0.6 else NOTHING
        return Atomic(class_iri(rng.randrange(n_classes)))
    if roll < 0.80:
        k = rng.choice((2, 2, 3))
        ops = tuple(random_el_expression(rng, n_classes, n_roles, depth - 1, allow_extremes)
                    for _ in range(k))
        return And(ops)
    return Exists(role_iri(rng.randrange(n_roles)),
                  random_el_expression(rng, n_classes, n_roles, depth - 1, allow_extremes))


def random_el_ontology(seed: int, max_classes: int = 30, max_axioms: int = 60,
                       max_anonymous: int | None = None,
                       allow_extremes: bool = True) -> Ontology:
    """Random ontology in the polynomial fragment: atoms, intersections,
    existentials, plus disjointness, domains and a role hierarchy.
    """
    rng = random.Random(seed)
    n_classes = rng.randint(4, max_classes)
    n_roles = rng.randint(1, 4)
    n_axioms = rng.randint(n_classes // 2, max_axioms)
    onto = Ontology(iri=f"http://example.org/gen/{seed}")
    onto.prefixes = {"": NS}
    for i in range(n_classes):
        onto.signature.classes.add(class_iri(i))

    anon_budget = max_anonymous if max_anonymous is not None else 10 ** 9

    def expr(depth: int = 2) -> ClassExpression:
        nonlocal anon_budget
        if anon_budget <= 0:
            return Atomic(class_iri(rng.randrange(n_classes)))
        ce = random_el_expression(rng, n_classes, n_roles, depth, allow_extremes)
        if not isinstance(ce, Atomic) and ce not in (THING, NOTHING):
            anon_budget -= 1
        return ce

    for _ in range(n_axioms):
        roll = rng.random()
        if roll < 0.60:
            onto.add(canonical_axiom(SubClassOf(expr(), expr(1))))
        elif roll < 0.75:
            onto.add(canonical_axiom(EquivalentClasses(
                (Atomic(class_iri(rng.randrange(n_classes))), expr()))))
        elif roll < 0.85:
            a = Atomic(class_iri(rng.randrange(n_classes)))
            b = Atomic(class_iri(rng.randrange(n_classes)))
            onto.add(canonical_axiom(DisjointClasses((a, b))))
        elif roll < 0.95:
            onto.add(canonical_axiom(PropertyDomain(
                role_iri(rng.randrange(n_roles)), False, expr(1))))
        else:
            onto.add(SubPropertyOf(role_iri(rng.randrange(n_roles)),
                                   role_iri(rng.randrange(n_roles))))
    return onto


def random_rooted_dag(seed: int, max_nodes: int = 40,
                      extra_edge_prob: float = 0.15) -> tuple[str, list[str], set[tuple[str, str]]]:
    """(root, nodes, child->parent edges); every node reaches the root."""
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    nodes = [f"n{i}" for i in range(n)]
    edges: set[tuple[str, str]] = set()
    for i in range(1, n):
        parent = rng.randrange(i)
        edges.add((nodes[i], nodes[parent]))
        for j in range(i):
            if rng.random() < extra_edge_prob / (i or 1):
                edges.add((nodes[i], nodes[j]))
    return nodes[0], nodes, edges


def random_layered_dag(seed: int, max_nodes: int = 200
                       ) -> tuple[dict[str, int], list[tuple[str, str]]]:
    """Levels plus parent->child edges spanning exactly one level."""
    rng = random.Random(seed)
    n_levels = rng.randint(2, 8)
    levels: dict[str, int] = {}
    per_level: list[list[str]] = []
    remaining = rng.randint(n_levels, max_nodes)
    for lvl in range(n_levels):
        width = max(1, min(remaining - (n_levels - lvl - 1),
                           rng.randint(1, max(1, remaining // max(1, n_levels - lvl)))))
        remaining -= width
        layer = [f"v{lvl}_{i}" for i in range(width)]
        per_level.append(layer)
        for v in layer:
            levels[v] = lvl
    edges: list[tuple[str, str]] = []
    for lvl in range(n_levels - 1):
        for child in per_level[lvl + 1]:
            parents = rng.sample(per_level[lvl],
                                 k=min(len(per_level[lvl]), rng.randint(1, 3)))
            for p in parents:
                edges.append((p, child))
    return levels, edges


_ROOTS = (
    "Agent", "Place", "Work", "Event", "Species", "Device", "Activity",
    "TopicalConcept", "TimePeriod", "MeanOfTransportation", "Food",
    "ChemicalSubstance",
)

_PREFIXES = (
    "Sports", "Music", "Art", "Science", "Historic", "Political", "Religious",
    "Military", "Natural", "Urban", "Rural", "Ancient", "Modern", "Digital",
    "Public", "Private", "Royal", "National", "Regional", "Coastal",
)

_BASES = (
    "Team", "League", "Player", "Venue", "Festival", "Award", "Genre",
    "Monument", "District", "Settlement", "River", "Mountain", "Island",
    "Company", "School", "University", "Museum", "Library", "Station",
    "Airport", "Bridge", "Vehicle", "Aircraft", "Vessel", "Instrument",
    "Dish", "Beverage", "Compound", "Element", "Mineral", "Organism",
    "Mammal", "Bird", "Fish", "Insect", "Plant", "Tree", "Writer", "Artist",
    "Singer", "Actor", "Politician", "Scientist", "Engineer", "Athlete",
    "Coach", "Judge", "Castle", "Garden", "Harbor",
)

_OBJECT_PROPS = (
    "hasPart", "locatedIn", "memberOf", "foundedBy", "ownedBy", "bornIn",
    "playsFor", "composedBy", "directedBy", "writtenBy", "influencedBy",
    "successorOf", "partnerOf", "operatedBy", "servedBy", "connectedTo",
    "producedBy", "derivedFrom", "namedAfter", "participatesIn",
    "governedBy", "adjacentTo", "tributaryOf", "educatedAt", "employedBy",
    "awardedTo", "performedAt", "exhibitedAt", "builtBy", "usesDevice",
)

_DATA_PROPS = (
    "populationTotal", "areaKm", "elevation", "foundingYear", "lengthKm",
    "capacity", "budget", "runtimeMinutes",
)


def dbpedia_scale_ontology(seed: int = 20, n_classes: int = 500,
                           n_anonymous: int = 50) -> "Ontology":
    """Synthetic ontology shaped like a large general-domain taxonomy:
    a few hundred named classes in a bushy DAG, a modest sprinkling of
    defined classes and general inclusions, property box, labels."""
    from ontoview.axioms import (ClassAssertion, Declaration, LabelAnnotation,
                                 PropertyCharacteristic, PropertyRange,
                                 FUNCTIONAL, TRANSITIVE, INVERSE_OF)

    rng = random.Random(seed)
    ns = "http://example.org/core#"
    names: list[str] = list(_ROOTS)
    seen = set(names)
    while len(names) < n_classes:
        name = rng.choice(_PREFIXES) + rng.choice(_BASES)
        if name in seen:
            name = f"{name}{rng.randrange(2, 99)}"
        if name not in seen:
            seen.add(name)
            names.append(name)

    def cls(i: int) -> Atomic:
        return Atomic(ns + names[i])

    onto = Ontology(iri="http://example.org/core")
    onto.prefixes = {"": ns}
    for i, name in enumerate(names):
        onto.add(Declaration("Class", ns + name))
        if i < len(_ROOTS):
            onto.add(SubClassOf(cls(i), THING))
        else:
            parent = int(i * rng.random() ** 1.6)
            onto.add(SubClassOf(cls(i), cls(parent)))
            if rng.random() < 0.04:
                second = int(i * rng.random() ** 1.6)
                if second != parent:
                    onto.add(SubClassOf(cls(i), cls(second)))

    props = [ns + p for p in _OBJECT_PROPS]
    for iri in props:
        onto.add(Declaration("ObjectProperty", iri))
        onto.add(PropertyDomain(iri, False, cls(rng.randrange(n_classes))))
        onto.add(PropertyRange(iri, False, cls(rng.randrange(n_classes))))
    for sub, sup in rng.sample([(a, b) for a in props for b in props if a != b], 10):
        onto.add(SubPropertyOf(sub, sup))
    for iri in rng.sample(props, 3):
        onto.add(PropertyCharacteristic(iri, TRANSITIVE))
    for iri in rng.sample(props, 4):
        onto.add(PropertyCharacteristic(iri, FUNCTIONAL))
    for a, b in zip(rng.sample(props, 3), rng.sample(props, 3)):
        if a != b:
            onto.add(PropertyCharacteristic(a, INVERSE_OF, b))
    for name in _DATA_PROPS:
        onto.add(Declaration("DataProperty", ns + name))
        onto.add(PropertyDomain(ns + name, True, cls(rng.randrange(n_classes))))
        onto.add(PropertyRange(ns + name, True,
                               "http://www.w3.org/2001/XMLSchema#integer"))

    # anonymous expressions: defined classes, general inclusions, told supers
    quota = n_anonymous
    defined = rng.sample(range(len(_ROOTS), n_classes), 20)
    for i in defined[:quota]:
        prop = rng.choice(props)
        onto.add(EquivalentClasses((cls(i), And((cls(rng.randrange(n_classes)),
                                                 Exists(prop, cls(rng.randrange(n_classes))))))))
        quota -= 1
    for _ in range(min(10, quota)):
        onto.add(SubClassOf(Exists(rng.choice(props), cls(rng.randrange(n_classes))),
                            cls(rng.randrange(n_classes))))
        quota -= 1
    while quota > 0:
        onto.add(SubClassOf(cls(rng.randrange(n_classes)),
                            Exists(rng.choice(props), cls(rng.randrange(n_classes)))))
        quota -= 1

    # sibling disjointness on primitive classes
    children_of: dict[str, list[int]] = {}
    for ax in onto.axioms:
        if isinstance(ax, SubClassOf) and isinstance(ax.sub, Atomic) \
                and isinstance(ax.sup, Atomic):
            children_of.setdefault(ax.sup.iri, []).append(names.index(ax.sub.iri[len(ns):]))
    sibling_sets = [kids for kids in children_of.values() if len(kids) >= 2]
    defined_set = set(defined)
    added = 0
    for kids in sibling_sets:
        usable = [k for k in kids if k not in defined_set]
        if len(usable) >= 2 and added < 15:
            a, b = usable[0], usable[1]
            onto.add(DisjointClasses((cls(a), cls(b))))
            added += 1

    for i in rng.sample(range(n_classes), 100):
        words = " ".join(p for p in [rng.choice(_PREFIXES).lower(),
                                     rng.choice(_BASES).lower()])
        onto.add(LabelAnnotation(ns + names[i], f"{words} {i}"))
    for k in range(30):
        onto.add(Declaration("NamedIndividual", f"{ns}entity{k}"))
        onto.add(ClassAssertion(f"{ns}entity{k}", cls(rng.randrange(n_classes))))
    return onto


def dbpedia_scale_document(seed: int = 20, n_classes: int = 500,
                           n_anonymous: int = 50) -> str:
    from ontoview.owlfss import serialize_document
    return serialize_document(dbpedia_scale_ontology(seed, n_classes, n_anonymous))
