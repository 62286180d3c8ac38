"""Classification against the naive fixpoint oracle plus targeted cases."""

import pytest

from ontoview.axioms import (
    DisjointClasses,
    EquivalentClasses,
    Ontology,
    SubClassOf,
    SubPropertyOf,
)
from ontoview.expressions import (
    And,
    Atomic,
    Exists,
    NOTHING,
    OWL_NOTHING,
    OWL_THING,
    THING,
)
from ontoview.owlfss import parse_document
from ontoview.reasoner import InconsistentOntologyError, Reasoner

from generators import random_el_ontology
from oracles import naive_subsumptions, naive_unsatisfiable, transitive_reduction

NS = "http://example.org/gen#"
PIZZA = "http://ontoview.example/pizza#"


def C(name: str) -> Atomic:
    return Atomic(NS + name)


def build(*axioms) -> Ontology:
    onto = Ontology(iri="http://example.org/gen")
    for ax in axioms:
        onto.add(ax)
    return onto


def named_pairs(reasoner: Reasoner) -> set[tuple[str, str]]:
    named = sorted(reasoner.ontology.signature.classes)
    return {(a, b) for a in named for b in named
            if reasoner.is_subsumed(Atomic(a), Atomic(b))}


# -- single-rule behaviors

def test_told_subsumption_is_transitive():
    r = Reasoner(build(SubClassOf(C("A"), C("B")), SubClassOf(C("B"), C("C"))))
    assert r.is_subsumed(C("A"), C("C"))
    assert not r.is_subsumed(C("C"), C("A"))


def test_conjunction_rule():
    r = Reasoner(build(
        SubClassOf(C("X"), C("A")), SubClassOf(C("X"), C("B")),
        SubClassOf(And((C("A"), C("B"))), C("Y"))))
    assert r.is_subsumed(C("X"), C("Y"))


def test_existential_propagation():
    # A ⊑ ∃r.B, B ⊑ C, ∃r.C ⊑ D entails A ⊑ D
    r = Reasoner(build(
        SubClassOf(C("A"), Exists(NS + "r", C("B"))),
        SubClassOf(C("B"), C("C")),
        SubClassOf(Exists(NS + "r", C("C")), C("D"))))
    assert r.is_subsumed(C("A"), C("D"))


def test_role_hierarchy_feeds_existentials():
    r = Reasoner(build(
        SubClassOf(C("A"), Exists(NS + "r", C("B"))),
        SubPropertyOf(NS + "r", NS + "s"),
        SubClassOf(Exists(NS + "s", C("B")), C("D"))))
    assert r.is_subsumed(C("A"), C("D"))


def test_disjointness_makes_common_subclass_unsatisfiable():
    r = Reasoner(build(
        DisjointClasses((C("A"), C("B"))),
        SubClassOf(C("X"), C("A")), SubClassOf(C("X"), C("B"))))
    assert r.unsatisfiable_classes() == {NS + "X"}
    assert r.is_subsumed(C("X"), NOTHING)
    assert r.is_subsumed(C("X"), C("Y"))  # ex falso
    assert r.is_consistent()


def test_inconsistency_detected_and_classify_raises():
    r = Reasoner(build(
        SubClassOf(THING, C("A")), SubClassOf(C("A"), NOTHING)))
    assert not r.is_consistent()
    with pytest.raises(InconsistentOntologyError):
        r.classify()


def test_is_disjoint_query():
    r = Reasoner(build(
        DisjointClasses((C("A"), C("B"))),
        SubClassOf(C("A1"), C("A")), SubClassOf(C("B1"), C("B"))))
    assert r.is_disjoint(C("A1"), C("B1"))
    assert not r.is_disjoint(C("A1"), C("A"))


def test_inferred_disjoint_pairs_cover_asserted_and_derived():
    r = Reasoner(build(
        DisjointClasses((C("A"), C("B"))),
        SubClassOf(C("A1"), C("A"))))
    r.register(And((C("A1"), C("B"))))
    pairs = r.inferred_disjoint_pairs()
    assert (NS + "A", NS + "B") in pairs
    assert (NS + "A1", NS + "B") in pairs


# -- taxonomy structure

def test_equivalence_group_members_and_representative():
    r = Reasoner(build(
        EquivalentClasses((C("Beta"), C("Alpha"))),
        SubClassOf(C("Gamma"), C("Alpha"))))
    tax = r.classify()
    group = tax.group_of(tax.rep_of[NS + "Beta"])
    assert set(group.members) == {NS + "Alpha", NS + "Beta"}
    assert group.representative == NS + "Alpha"  # min by local name


def test_taxonomy_parents_are_transitive_reduction():
    r = Reasoner(build(
        SubClassOf(C("A"), C("B")), SubClassOf(C("B"), C("C")),
        SubClassOf(C("A"), C("C"))))  # redundant edge
    tax = r.classify()
    assert tax.parents[NS + "A"] == {NS + "B"}
    assert tax.parents[NS + "B"] == {NS + "C"}


def test_unsatisfiable_classes_live_in_nothing_group():
    r = Reasoner(build(
        DisjointClasses((C("A"), C("B"))),
        SubClassOf(C("X"), And((C("A"), C("B"))))))
    tax = r.classify()
    assert tax.unsatisfiable == frozenset({NS + "X"})
    nothing_rep = tax.rep_of[NS + "X"]
    assert NS + "X" in tax.group_of(nothing_rep).members


def test_orphan_named_class_sits_under_thing():
    onto = build(SubClassOf(C("A"), C("B")))
    onto.signature.classes.add(NS + "Loner")
    tax = Reasoner(onto).classify()
    assert tax.parents[NS + "Loner"] == {OWL_THING}


# -- oracle sweeps

@pytest.mark.parametrize("seed", range(40))
def test_matches_naive_classifier(seed):
    onto = random_el_ontology(seed, max_classes=18, max_axioms=36)
    consistent, expected = naive_subsumptions(onto)
    r = Reasoner(onto)
    assert r.is_consistent() == consistent
    if consistent:
        assert named_pairs(r) == expected
        assert r.unsatisfiable_classes() == naive_unsatisfiable(onto)


@pytest.mark.parametrize("seed", range(0, 40, 7))
def test_taxonomy_edges_match_oracle_reduction(seed):
    onto = random_el_ontology(seed, max_classes=14, max_axioms=28)
    r = Reasoner(onto)
    if not r.is_consistent():
        pytest.skip("inconsistent draw")
    tax = r.classify()
    reps = sorted({tax.rep_of[c] for c in onto.signature.classes}
                  | {OWL_THING, OWL_NOTHING})
    expected = transitive_reduction(
        reps, lambda a, b: r.is_subsumed(Atomic(a), Atomic(b)))
    actual = {(child, parent)
              for child, ps in tax.parents.items() for parent in ps}
    assert actual == expected


# -- fixture spot checks

def test_pizza_inferences(pizza_bundle):
    r = pizza_bundle.reasoner
    hot = Atomic(PIZZA + "AmericanHot")
    assert r.is_subsumed(hot, Atomic(PIZZA + "SpicyPizza"))
    assert r.is_subsumed(Atomic(PIZZA + "Margherita"), Atomic(PIZZA + "CheesyPizza"))
    assert not r.is_subsumed(Atomic(PIZZA + "Margherita"), Atomic(PIZZA + "SpicyPizza"))
    assert r.unsatisfiable_classes() == set()


def test_pizza_gci_subsumption(pizza_bundle):
    r = pizza_bundle.reasoner
    spicy_exists = Exists(PIZZA + "hasTopping", Atomic(PIZZA + "Spicy"))
    assert r.is_subsumed(spicy_exists, Atomic(PIZZA + "SpicyPizza"))


def test_register_after_classify_is_allowed(pizza_bundle):
    # detail windows register fresh expressions against a warm reasoner
    r = Reasoner(parse_document(
        "Prefix(:=<%s>)\nOntology(<http://x>\n"
        "SubClassOf(:A :B)\nSubClassOf(ObjectSomeValuesFrom(:r :B) :C)\n)" % NS
    ).ontology)
    r.classify()
    assert r.is_subsumed(Exists(NS + "r", Atomic(NS + "A")), Atomic(NS + "C"))
