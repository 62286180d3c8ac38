"""Graph assembly: placement, windows, annotation attachment."""

import random

import pytest

from ontoview.axioms import Ontology, SubClassOf
from ontoview.expressions import Atomic, Exists, local_name
from ontoview.graph import DetailWindow, WindowError, build_graph, validate_window
from ontoview.owlfss import parse_document
from ontoview.reasoner import Reasoner

from generators import random_el_ontology
from oracles import transitive_reduction

PIZZA = "http://ontoview.example/pizza#"


def pipeline(onto: Ontology, window: DetailWindow | None = None):
    r = Reasoner(onto)
    tax = r.classify()
    return build_graph(onto, r, tax, window=window), r, tax


def make_graph(seed: int, **kw):
    onto = random_el_ontology(seed, **kw)
    if not Reasoner(onto).is_consistent():
        pytest.skip("inconsistent draw")
    return pipeline(onto)


# -- structural invariants over random draws

@pytest.mark.parametrize("seed", range(25))
def test_direct_edges_are_transitive_reduction(seed):
    graph, r, _ = make_graph(seed, max_classes=12, max_axioms=24,
                             max_anonymous=8)
    ids = sorted(graph.nodes)
    expected = transitive_reduction(
        ids,
        lambda a, b: r.is_subsumed(graph.nodes[a].expression,
                                   graph.nodes[b].expression))
    assert graph.isa_edges == expected


@pytest.mark.parametrize("seed", (1, 4, 9))
def test_axiom_order_does_not_change_graph(seed):
    onto = random_el_ontology(seed, max_classes=12, max_axioms=24,
                              max_anonymous=8)
    if not Reasoner(onto).is_consistent():
        pytest.skip("inconsistent draw")
    baseline, _, _ = pipeline(onto)
    axioms = list(onto.axioms)
    for shuffle_seed in range(5):
        random.Random(shuffle_seed).shuffle(axioms)
        clone = Ontology(iri=onto.iri)
        clone.prefixes = dict(onto.prefixes)
        clone.signature.classes |= onto.signature.classes
        for ax in axioms:
            clone.add(ax)
        got, _, _ = pipeline(clone)
        assert set(got.nodes) == set(baseline.nodes)
        assert got.isa_edges == baseline.isa_edges
        for nid in baseline.nodes:
            assert got.nodes[nid].kind == baseline.nodes[nid].kind
            assert got.nodes[nid].equivalents == baseline.nodes[nid].equivalents


def test_every_node_reaches_thing(pizza_bundle):
    graph = pizza_bundle.graph
    for nid in graph.nodes:
        if nid != graph.thing_id:
            assert graph.thing_id in graph.ancestors_of(nid), graph.nodes[nid].label


def test_total_descendant_counters_exact(pizza_bundle):
    graph = pizza_bundle.graph
    for nid, node in graph.nodes.items():
        assert node.total_descendants == len(graph.descendants_of(nid))


# -- node kinds and labels

def test_node_kinds(pizza_bundle):
    graph = pizza_bundle.graph
    by_label = {n.label: n for n in graph.nodes.values()}
    assert by_label["Margherita"].kind == "primitive"
    assert by_label["CheesyPizza"].kind == "defined"
    assert by_label["CheesyPizza"].equivalents == (
        "Pizza and (hasTopping some CheeseTopping)",)
    anon = [n for n in graph.nodes.values() if n.kind == "anonymous"]
    assert anon and all(n.members == () for n in anon)


def test_gci_left_side_becomes_anonymous_node(pizza_bundle):
    graph = pizza_bundle.graph
    node = graph.node_for(Exists(PIZZA + "hasTopping", Atomic(PIZZA + "Spicy")))
    assert node is not None and node.kind == "anonymous"
    spicy_pizza = graph.node_for(Atomic(PIZZA + "SpicyPizza"))
    assert (node.id, spicy_pizza.id) in graph.isa_edges


def test_unsatisfiable_expression_lands_on_nothing():
    text = ("Prefix(:=<http://x#>)\nOntology(<http://x>\n"
            "DisjointClasses(:A :B)\n"
            "SubClassOf(:C ObjectIntersectionOf(:A :B))\n)")
    onto = parse_document(text).ontology
    graph, _, _ = pipeline(onto)
    unsat = graph.node_for(Atomic("http://x#C"))
    assert unsat is not None
    assert unsat.label == "Nothing"
    assert "C" in {local_name(m) for m in unsat.members}
    assert graph.children_of(unsat.id) == set()


# -- detail windows

def test_window_restricts_harvested_expressions(pizza_text):
    onto = parse_document(pizza_text).ontology
    window = DetailWindow(upper=Atomic(PIZZA + "Pizza"))
    graph, r, _ = pipeline(onto, window)
    full, _, _ = pipeline(onto)
    anon_windowed = {n.id for n in graph.nodes.values() if n.kind == "anonymous"}
    anon_full = {n.id for n in full.nodes.values() if n.kind == "anonymous"}
    assert anon_windowed < anon_full
    pizza = Atomic(PIZZA + "Pizza")
    for nid in anon_windowed:
        assert r.is_subsumed(graph.nodes[nid].expression, pizza)


def test_window_keeps_named_classes(pizza_text):
    onto = parse_document(pizza_text).ontology
    window = DetailWindow(upper=Atomic(PIZZA + "PizzaTopping"))
    graph, _, _ = pipeline(onto, window)
    assert graph.node_for(Atomic(PIZZA + "Margherita")) is not None


def test_invalid_window_rejected(pizza_bundle):
    r = pizza_bundle.reasoner
    inverted = DetailWindow(upper=Atomic(PIZZA + "NamedPizza"),
                            lower=Atomic(PIZZA + "Pizza"))
    with pytest.raises(WindowError):
        validate_window(inverted, r)
    validate_window(DetailWindow(upper=Atomic(PIZZA + "Pizza")), r)


# -- annotation attachment

def test_domain_descriptors(pizza_bundle):
    graph = pizza_bundle.graph
    pizza = graph.node_for(Atomic(PIZZA + "Pizza"))
    props = {local_name(d.iri): d for d in pizza.domain_of}
    assert "hasTopping" in props and "hasBase" in props
    assert props["hasBase"].characteristics.functional
    assert not props["hasTopping"].is_data
    topping_node = graph.node_for(Atomic(PIZZA + "PizzaTopping"))
    assert topping_node.id in props["hasTopping"].range_node_ids


def test_data_property_descriptor(pizza_bundle):
    graph = pizza_bundle.graph
    pizza = graph.node_for(Atomic(PIZZA + "Pizza"))
    props = {local_name(d.iri): d for d in pizza.domain_of}
    assert props["calories"].is_data
    assert any(dt.endswith("integer") for dt in props["calories"].range_datatypes)


def test_inverse_and_super_property_characteristics(pizza_bundle):
    graph = pizza_bundle.graph
    descs = [d for n in graph.nodes.values() for d in n.domain_of]
    by_name = {local_name(d.iri): d for d in descs}
    assert "isToppingOf" in [local_name(i) for i
                             in by_name["hasTopping"].characteristics.inverse_of]
    assert "hasIngredient" in [local_name(s) for s
                               in by_name["hasTopping"].super_properties]


def test_transitive_characteristic_flagged():
    text = ("Prefix(:=<http://x#>)\nOntology(<http://x>\n"
            "TransitiveObjectProperty(:part)\n"
            "ObjectPropertyDomain(:part :Whole)\n)")
    onto = parse_document(text).ontology
    graph, _, _ = pipeline(onto)
    whole = graph.node_for(Atomic("http://x#Whole"))
    (desc,) = whole.domain_of
    assert desc.characteristics.transitive and not desc.characteristics.functional


def test_subproperty_edges(pizza_bundle):
    graph = pizza_bundle.graph
    names = {(local_name(a), local_name(b)) for a, b in graph.sub_property_edges}
    assert ("hasTopping", "hasIngredient") in names
    assert ("hasBase", "hasIngredient") in names


def test_disjoint_pairs_between_nodes(pizza_bundle):
    graph = pizza_bundle.graph
    pizza = graph.node_for(Atomic(PIZZA + "Pizza")).id
    topping = graph.node_for(Atomic(PIZZA + "PizzaTopping")).id
    assert (min(pizza, topping), max(pizza, topping)) in graph.disjoint_pairs
    assert pizza in graph.nodes[topping].disjoint_with


def test_instances_attached(pizza_bundle):
    graph = pizza_bundle.graph
    margherita = graph.node_for(Atomic(PIZZA + "Margherita"))
    assert any(local_name(i) == "myMargherita" for i in margherita.instances)
