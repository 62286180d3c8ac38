"""Axioms and the ontology container.

Axioms are immutable; an Ontology is the parsed axiom list plus its
signature. A SubClassOf whose left side is non-atomic is a GCI and is kept
as-is through every later stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .expressions import (
    Atomic,
    ClassExpression,
    canonical,
    is_atomic_like,
    referenced_iris,
)

FUNCTIONAL = "functional"
TRANSITIVE = "transitive"
INVERSE_OF = "inverse-of"


@dataclass(frozen=True)
class Declaration:
    kind: str  # Class | ObjectProperty | DataProperty | NamedIndividual | Datatype | AnnotationProperty
    iri: str


@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression

    @property
    def is_gci(self) -> bool:
        return not isinstance(self.sub, Atomic) and not is_atomic_like(self.sub)


@dataclass(frozen=True)
class EquivalentClasses:
    members: tuple[ClassExpression, ...]


@dataclass(frozen=True)
class DisjointClasses:
    members: tuple[ClassExpression, ...]


@dataclass(frozen=True)
class PropertyDomain:
    prop: str
    is_data: bool
    domain: ClassExpression


@dataclass(frozen=True)
class PropertyRange:
    prop: str
    is_data: bool
    range: Union[ClassExpression, str]  # datatype name for data properties


@dataclass(frozen=True)
class SubPropertyOf:
    sub: str
    sup: str


@dataclass(frozen=True)
class ClassAssertion:
    individual: str
    type: ClassExpression


@dataclass(frozen=True)
class PropertyAssertion:
    subject: str
    prop: str
    target: str


@dataclass(frozen=True)
class PropertyCharacteristic:
    prop: str
    kind: str  # FUNCTIONAL | TRANSITIVE | INVERSE_OF
    other: str | None = None  # partner property for INVERSE_OF


@dataclass(frozen=True)
class LabelAnnotation:
    subject: str
    label: str


Axiom = Union[
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    PropertyDomain,
    PropertyRange,
    SubPropertyOf,
    ClassAssertion,
    PropertyAssertion,
    PropertyCharacteristic,
    LabelAnnotation,
]


@dataclass
class Signature:
    classes: set[str] = field(default_factory=set)
    object_properties: set[str] = field(default_factory=set)
    data_properties: set[str] = field(default_factory=set)
    individuals: set[str] = field(default_factory=set)


@dataclass
class Ontology:
    iri: str | None = None
    axioms: list[Axiom] = field(default_factory=list)
    signature: Signature = field(default_factory=Signature)
    prefixes: dict[str, str] = field(default_factory=dict)
    # Recognized-but-unsupported axioms, kept verbatim so nothing is lost.
    opaque_axioms: list[str] = field(default_factory=list)

    def add(self, axiom: Axiom) -> None:
        self.axioms.append(axiom)
        self._index_signature(axiom)

    def _index_signature(self, axiom: Axiom) -> None:
        def take_expr(ce: ClassExpression) -> None:
            classes, roles = referenced_iris(ce)
            self.signature.classes.update(classes)
            self.signature.object_properties.update(roles)

        if isinstance(axiom, Declaration):
            if axiom.kind == "Class":
                self.signature.classes.add(axiom.iri)
            elif axiom.kind == "ObjectProperty":
                self.signature.object_properties.add(axiom.iri)
            elif axiom.kind == "DataProperty":
                self.signature.data_properties.add(axiom.iri)
            elif axiom.kind == "NamedIndividual":
                self.signature.individuals.add(axiom.iri)
        elif isinstance(axiom, SubClassOf):
            take_expr(axiom.sub)
            take_expr(axiom.sup)
        elif isinstance(axiom, (EquivalentClasses, DisjointClasses)):
            for m in axiom.members:
                take_expr(m)
        elif isinstance(axiom, PropertyDomain):
            take_expr(axiom.domain)
            target = self.signature.data_properties if axiom.is_data else self.signature.object_properties
            target.add(axiom.prop)
        elif isinstance(axiom, PropertyRange):
            target = self.signature.data_properties if axiom.is_data else self.signature.object_properties
            target.add(axiom.prop)
            if not isinstance(axiom.range, str):
                take_expr(axiom.range)
        elif isinstance(axiom, SubPropertyOf):
            self.signature.object_properties.update((axiom.sub, axiom.sup))
        elif isinstance(axiom, ClassAssertion):
            self.signature.individuals.add(axiom.individual)
            take_expr(axiom.type)
        elif isinstance(axiom, PropertyAssertion):
            self.signature.individuals.update((axiom.subject, axiom.target))
            self.signature.object_properties.add(axiom.prop)
        elif isinstance(axiom, PropertyCharacteristic):
            self.signature.object_properties.add(axiom.prop)
            if axiom.other:
                self.signature.object_properties.add(axiom.other)

    def named_classes(self) -> list[str]:
        return sorted(self.signature.classes)

    def gcis(self) -> list[SubClassOf]:
        return [a for a in self.axioms if isinstance(a, SubClassOf) and a.is_gci]

    def labels_of(self, iri: str) -> list[str]:
        return [a.label for a in self.axioms if isinstance(a, LabelAnnotation) and a.subject == iri]


def canonical_axiom(axiom: Axiom) -> Axiom:
    """Axiom with every class expression in canonical form; member lists sorted."""
    from .expressions import structural_key

    if isinstance(axiom, SubClassOf):
        return SubClassOf(canonical(axiom.sub), canonical(axiom.sup))
    if isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        members = sorted((canonical(m) for m in axiom.members), key=structural_key)
        return type(axiom)(tuple(members))
    if isinstance(axiom, PropertyDomain):
        return PropertyDomain(axiom.prop, axiom.is_data, canonical(axiom.domain))
    if isinstance(axiom, PropertyRange):
        if isinstance(axiom.range, str):
            return axiom
        return PropertyRange(axiom.prop, axiom.is_data, canonical(axiom.range))
    if isinstance(axiom, ClassAssertion):
        return ClassAssertion(axiom.individual, canonical(axiom.type))
    return axiom
