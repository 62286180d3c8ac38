"""Class expression terms: construction, canonical form, and display rendering.

Expressions are immutable dataclasses. ``canonical()`` flattens and sorts
n-ary operands so that structurally identical expressions compare equal,
and is idempotent. Everything downstream (reasoning, graph building, node
identity) works on canonical expressions only.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Union

OWL_THING = "http://www.w3.org/2002/07/owl#Thing"
OWL_NOTHING = "http://www.w3.org/2002/07/owl#Nothing"


@dataclass(frozen=True)
class Thing:
    def __repr__(self) -> str:
        return "Thing"


@dataclass(frozen=True)
class Nothing:
    def __repr__(self) -> str:
        return "Nothing"


@dataclass(frozen=True)
class Atomic:
    iri: str


@dataclass(frozen=True)
class And:
    operands: tuple["ClassExpression", ...]


@dataclass(frozen=True)
class Or:
    operands: tuple["ClassExpression", ...]


@dataclass(frozen=True)
class Not:
    operand: "ClassExpression"


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "ClassExpression"


@dataclass(frozen=True)
class ForAll:
    role: str
    filler: "ClassExpression"


@dataclass(frozen=True)
class MinCard:
    n: int
    role: str
    filler: "ClassExpression"


@dataclass(frozen=True)
class MaxCard:
    n: int
    role: str
    filler: "ClassExpression"


@dataclass(frozen=True)
class ExactCard:
    n: int
    role: str
    filler: "ClassExpression"


ClassExpression = Union[
    Thing, Nothing, Atomic, And, Or, Not, Exists, ForAll, MinCard, MaxCard, ExactCard
]

THING = Thing()
NOTHING = Nothing()

_CARDS = (MinCard, MaxCard, ExactCard)


def local_name(iri: str) -> str:
    """Display name of an IRI: the fragment, or the last path segment."""
    if "#" in iri:
        return iri.rsplit("#", 1)[1] or iri
    return iri.rstrip("/").rsplit("/", 1)[-1] or iri


def structural_key(ce: ClassExpression) -> str:
    """Deterministic full-IRI structural string; total order for sorting.

    Also the input to node-id hashing, so it must stay stable across
    releases for saved views to rebind.
    """
    if isinstance(ce, Thing):
        return "T()"
    if isinstance(ce, Nothing):
        return "N()"
    if isinstance(ce, Atomic):
        return f"a({ce.iri})"
    if isinstance(ce, And):
        return "i(" + ",".join(structural_key(o) for o in ce.operands) + ")"
    if isinstance(ce, Or):
        return "u(" + ",".join(structural_key(o) for o in ce.operands) + ")"
    if isinstance(ce, Not):
        return f"c({structural_key(ce.operand)})"
    if isinstance(ce, Exists):
        return f"e({ce.role},{structural_key(ce.filler)})"
    if isinstance(ce, ForAll):
        return f"f({ce.role},{structural_key(ce.filler)})"
    if isinstance(ce, MinCard):
        return f"mn({ce.n},{ce.role},{structural_key(ce.filler)})"
    if isinstance(ce, MaxCard):
        return f"mx({ce.n},{ce.role},{structural_key(ce.filler)})"
    if isinstance(ce, ExactCard):
        return f"xc({ce.n},{ce.role},{structural_key(ce.filler)})"
    raise TypeError(f"not a class expression: {ce!r}")


def expression_id(ce: ClassExpression) -> str:
    """Stable opaque identifier: hash of the canonical structural string."""
    key = structural_key(canonical(ce))
    return hashlib.sha1(key.encode("utf-8")).hexdigest()[:16]


def canonical(ce: ClassExpression) -> ClassExpression:
    """Canonical form: And/Or flattened, deduplicated, sorted; idempotent.

    A same-constructor nested operand is folded into its parent, and an
    n-ary operator left with a single distinct operand collapses to it.
    """
    if isinstance(ce, (Thing, Nothing)):
        return ce
    if isinstance(ce, Atomic):
        if ce.iri == OWL_THING:
            return THING
        if ce.iri == OWL_NOTHING:
            return NOTHING
        return ce
    if isinstance(ce, (And, Or)):
        ctor = type(ce)
        flat: list[ClassExpression] = []
        for op in ce.operands:
            c = canonical(op)
            if isinstance(c, ctor):
                flat.extend(c.operands)
            else:
                flat.append(c)
        seen: dict[str, ClassExpression] = {}
        for op in flat:
            seen.setdefault(structural_key(op), op)
        ops = tuple(seen[k] for k in sorted(seen))
        if len(ops) == 1:
            return ops[0]
        return ctor(ops)
    if isinstance(ce, Not):
        return Not(canonical(ce.operand))
    if isinstance(ce, Exists):
        return Exists(ce.role, canonical(ce.filler))
    if isinstance(ce, ForAll):
        return ForAll(ce.role, canonical(ce.filler))
    if isinstance(ce, _CARDS):
        return type(ce)(ce.n, ce.role, canonical(ce.filler))
    raise TypeError(f"not a class expression: {ce!r}")


def is_atomic_like(ce: ClassExpression) -> bool:
    """True for expressions that already name a taxonomy member."""
    return isinstance(ce, (Thing, Nothing, Atomic))


def render(ce: ClassExpression) -> str:
    """Human-readable string using some/only/and/or/not keywords.

    Non-atomic subterms are always parenthesized, which is exactly the
    bracketing needed to re-read any nesting unambiguously.
    """

    def wrap(sub: ClassExpression) -> str:
        text = render(sub)
        return text if is_atomic_like(sub) else f"({text})"

    if isinstance(ce, Thing):
        return "Thing"
    if isinstance(ce, Nothing):
        return "Nothing"
    if isinstance(ce, Atomic):
        return local_name(ce.iri)
    if isinstance(ce, And):
        return " and ".join(wrap(o) for o in ce.operands)
    if isinstance(ce, Or):
        return " or ".join(wrap(o) for o in ce.operands)
    if isinstance(ce, Not):
        return f"not {wrap(ce.operand)}"
    if isinstance(ce, Exists):
        return f"{local_name(ce.role)} some {wrap(ce.filler)}"
    if isinstance(ce, ForAll):
        return f"{local_name(ce.role)} only {wrap(ce.filler)}"
    if isinstance(ce, MinCard):
        return f"{local_name(ce.role)} min {ce.n} {wrap(ce.filler)}"
    if isinstance(ce, MaxCard):
        return f"{local_name(ce.role)} max {ce.n} {wrap(ce.filler)}"
    if isinstance(ce, ExactCard):
        return f"{local_name(ce.role)} exactly {ce.n} {wrap(ce.filler)}"
    raise TypeError(f"not a class expression: {ce!r}")


def subexpressions(ce: ClassExpression):
    """Yield ce and every nested subexpression (pre-order)."""
    yield ce
    if isinstance(ce, (And, Or)):
        for op in ce.operands:
            yield from subexpressions(op)
    elif isinstance(ce, Not):
        yield from subexpressions(ce.operand)
    elif isinstance(ce, (Exists, ForAll, *_CARDS)):
        yield from subexpressions(ce.filler)


def referenced_iris(ce: ClassExpression) -> tuple[set[str], set[str]]:
    """(class IRIs, role IRIs) mentioned anywhere in the expression."""
    classes: set[str] = set()
    roles: set[str] = set()
    for sub in subexpressions(ce):
        if isinstance(sub, Atomic):
            classes.add(sub.iri)
        elif isinstance(sub, (Exists, ForAll, *_CARDS)):
            roles.add(sub.role)
    return classes, roles
