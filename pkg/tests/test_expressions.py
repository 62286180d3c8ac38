"""Class expression structure: canonical form, rendering, identity."""

import pytest
from hypothesis import given, strategies as st

from ontoview.expressions import (
    NOTHING,
    OWL_THING,
    THING,
    And,
    Atomic,
    Exists,
    ForAll,
    MinCard,
    Not,
    Or,
    canonical,
    expression_id,
    local_name,
    render,
    structural_key,
    subexpressions,
    referenced_iris,
)

NS = "http://example.org/t#"


def C(name):
    return Atomic(NS + name)


def test_local_name_strips_fragment_and_path():
    assert local_name(NS + "Pizza") == "Pizza"
    assert local_name("http://example.org/path/Leaf") == "Leaf"
    assert local_name(OWL_THING) == "Thing"


def test_canonical_flattens_and_sorts_intersections():
    nested = And((C("B"), And((C("A"), C("B")))))
    flat = canonical(nested)
    assert flat == And((C("A"), C("B")))


def test_canonical_collapses_singleton_operand():
    assert canonical(And((C("A"),))) == C("A")
    assert canonical(Or((C("A"),))) == C("A")


def test_canonical_is_idempotent():
    ce = And((Exists(NS + "r", And((C("B"), C("A")))), C("Z"), C("A")))
    assert canonical(canonical(ce)) == canonical(ce)


def test_canonical_keeps_thing_and_nothing_operands():
    # extremes are not absorbed; the reasoner handles them, not the syntax
    ce = canonical(And((THING, C("A"))))
    assert isinstance(ce, And) and THING in ce.operands


def test_render_manchester_nesting():
    ce = And((C("Pizza"), Exists(NS + "hasTopping", C("Cheese"))))
    assert render(ce) == "Pizza and (hasTopping some Cheese)"
    assert render(Or((C("A"), C("B")))) == "A or B"
    assert render(Not(C("A"))) == "not A"
    assert render(ForAll(NS + "r", C("A"))) == "r only A"
    assert render(MinCard(2, NS + "r", C("A"))) == "r min 2 A"
    assert render(THING) == "Thing"
    assert render(NOTHING) == "Nothing"


def test_expression_id_stable_and_order_insensitive():
    a = And((C("A"), C("B")))
    b = And((C("B"), C("A")))
    assert expression_id(canonical(a)) == expression_id(canonical(b))
    assert len(expression_id(a)) == 16


def test_structural_key_distinguishes_constructors():
    keys = {structural_key(ce) for ce in (
        And((C("A"), C("B"))), Or((C("A"), C("B"))),
        Exists(NS + "r", C("A")), ForAll(NS + "r", C("A")), Not(C("A")))}
    assert len(keys) == 5


def test_subexpressions_covers_nested_parts():
    ce = And((C("A"), Exists(NS + "r", Or((C("B"), C("C"))))))
    subs = set(subexpressions(ce))
    assert C("B") in subs and Or((C("B"), C("C"))) in subs and ce in subs


def test_referenced_iris_split_by_kind():
    ce = Exists(NS + "r", And((C("A"), C("B"))))
    class_iris, role_iris = referenced_iris(ce)
    assert NS + "A" in class_iris and NS + "B" in class_iris
    assert role_iris == {NS + "r"}


atoms = st.sampled_from([C("A"), C("B"), C("C"), THING, NOTHING])


def exprs(depth=2):
    if depth == 0:
        return atoms
    sub = exprs(depth - 1)
    return st.one_of(
        atoms,
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
        sub.map(lambda x: Exists(NS + "r", x)),
    )


@given(exprs())
def test_canonical_idempotent_property(ce):
    assert canonical(canonical(ce)) == canonical(ce)


@given(exprs())
def test_equal_canonical_means_equal_id(ce):
    flipped = canonical(ce)
    assert expression_id(flipped) == expression_id(canonical(flipped))
    assert structural_key(flipped) == structural_key(canonical(flipped))
