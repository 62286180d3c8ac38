"""OWL 2 Functional-Style Syntax: tokenizer, parser, serializer.

Supported subset (everything else is kept verbatim and logged as a skip
record, never dropped silently):

  axioms       SubClassOf, EquivalentClasses, DisjointClasses, Declaration,
               ObjectPropertyDomain/Range, DataPropertyDomain/Range,
               SubObjectPropertyOf, ClassAssertion, ObjectPropertyAssertion,
               FunctionalObjectProperty, TransitiveObjectProperty,
               InverseObjectProperties, AnnotationAssertion (rdfs:label)
  expressions  ObjectIntersectionOf, ObjectUnionOf, ObjectComplementOf,
               ObjectSomeValuesFrom, ObjectAllValuesFrom,
               ObjectMin/Max/ExactCardinality, owl:Thing, owl:Nothing

The parser recovers at axiom boundaries and reports every error with a
1-based line/column, not just the first. ``#`` comments outside strings
and IRIs are accepted as a convenience extension.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .axioms import (
    FUNCTIONAL,
    INVERSE_OF,
    TRANSITIVE,
    ClassAssertion,
    Declaration,
    DisjointClasses,
    EquivalentClasses,
    LabelAnnotation,
    Ontology,
    PropertyAssertion,
    PropertyCharacteristic,
    PropertyDomain,
    PropertyRange,
    SubClassOf,
    SubPropertyOf,
)
from .axioms import canonical_axiom
from .expressions import (
    NOTHING,
    OWL_NOTHING,
    OWL_THING,
    THING,
    And,
    Atomic,
    ClassExpression,
    ExactCard,
    Exists,
    ForAll,
    MaxCard,
    MinCard,
    Not,
    Or,
    canonical,
)

log = logging.getLogger(__name__)
skip_log = logging.getLogger("ontoview.owlfss.skips")

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

STANDARD_PREFIXES = {
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

# Axiom keywords we recognize but do not model; each occurrence becomes a
# skip record plus a verbatim opaque copy on the ontology.
UNSUPPORTED_AXIOMS = {
    "Import",
    "SubDataPropertyOf",
    "EquivalentObjectProperties",
    "EquivalentDataProperties",
    "DisjointObjectProperties",
    "DisjointDataProperties",
    "DisjointUnion",
    "InverseFunctionalObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "FunctionalDataProperty",
    "SameIndividual",
    "DifferentIndividuals",
    "DataPropertyAssertion",
    "NegativeObjectPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "HasKey",
    "DatatypeDefinition",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
}

UNSUPPORTED_CONSTRUCTORS = {
    "ObjectOneOf",
    "ObjectHasValue",
    "ObjectHasSelf",
    "ObjectInverseOf",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
    "DataHasValue",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
}


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    token: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message} (at {self.token!r})"


@dataclass(frozen=True)
class SkipRecord:
    kind: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"SKIP {self.kind} {self.line}:{self.column}"


class PrefixTable:
    """Prefix-name to namespace mapping with deterministic expansion.

    Standard prefixes (owl, rdf, rdfs, xsd) are predeclared; a document may
    override them. Declaring the same prefix twice is an error.
    """

    def __init__(self) -> None:
        self.mappings: dict[str, str] = dict(STANDARD_PREFIXES)
        self._declared: set[str] = set()

    def declare(self, prefix: str, namespace: str) -> bool:
        if prefix in self._declared:
            return False
        self._declared.add(prefix)
        self.mappings[prefix] = namespace
        return True

    def expand(self, prefix: str, local: str) -> str | None:
        ns = self.mappings.get(prefix)
        if ns is None:
            return None
        return ns + local

    def compact(self, iri: str) -> str:
        """Longest-namespace prefixed form, or the <...> form."""
        best: tuple[str, str] | None = None
        for prefix, ns in self.mappings.items():
            if iri.startswith(ns) and (best is None or len(ns) > len(best[1])):
                best = (prefix, ns)
        if best is not None:
            local = iri[len(best[1]):]
            if re.fullmatch(r"(?:[\w][\w.\-]*)?", local):
                return f"{best[0]}:{local}"
        return f"<{iri}>"


@dataclass
class ParseResult:
    ontology: Ontology
    errors: list[ParseError] = field(default_factory=list)
    skips: list[SkipRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<COMMENT>\#[^\n]*)
  | (?P<IRI><[^<>"{}|^`\\\s]*>)
  | (?P<STRING>"(?:\\.|[^"\\])*")
  | (?P<DCARET>\^\^)
  | (?P<LANGTAG>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<PNAME>(?:[A-Za-z_][\w.\-]*)?:(?:[\w][\w.\-]*)?)
  | (?P<NAME>[A-Za-z_][\w.\-]*)
  | (?P<INT>\d+)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<EQUALS>=)
""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    line: int
    column: int
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.value)


def tokenize(text: str) -> tuple[list[Token], list[ParseError]]:
    tokens: list[Token] = []
    errors: list[ParseError] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = text[pos]
            errors.append(ParseError(line, pos - line_start + 1, "unexpected character", bad))
            pos += 1
            continue
        kind = m.lastgroup or ""
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, pos - line_start + 1, pos))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1, pos))
    return tokens, errors


# ---------------------------------------------------------------------------
# Parser

class _SyntaxError(Exception):
    def __init__(self, token: Token, message: str):
        super().__init__(message)
        self.token = token
        self.message = message


class _UnsupportedAxiom(Exception):
    """Raised inside an axiom when a recognized-but-unmodeled form appears."""


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens, lex_errors = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.prefixes = PrefixTable()
        self.errors: list[ParseError] = list(lex_errors)
        self.skips: list[SkipRecord] = []
        self.ontology = Ontology()

    # -- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        if tok.type == "LPAREN":
            self.depth += 1
        elif tok.type == "RPAREN":
            self.depth -= 1
        return tok

    def expect(self, ttype: str, what: str) -> Token:
        tok = self.peek()
        if tok.type != ttype:
            raise _SyntaxError(tok, f"expected {what}")
        return self.next()

    def error(self, tok: Token, message: str) -> None:
        self.errors.append(ParseError(tok.line, tok.column, message, tok.value or "<eof>"))

    def recover_to_depth(self, depth: int) -> Token:
        """Panic-mode recovery: consume until paren depth drops to `depth`."""
        last = self.peek()
        while self.depth > depth and self.peek().type != "EOF":
            last = self.next()
        return last

    # -- entry points

    def parse_document(self) -> ParseResult:
        saw_ontology = False
        while self.peek().type != "EOF":
            tok = self.peek()
            if tok.type == "NAME" and tok.value == "Prefix":
                self.parse_prefix_decl()
            elif tok.type == "NAME" and tok.value == "Ontology":
                if saw_ontology:
                    self.error(tok, "duplicate Ontology header")
                    self.next()
                    self.recover_to_depth(0)
                else:
                    saw_ontology = True
                    self.parse_ontology()
            else:
                self.error(tok, "expected Prefix or Ontology")
                self.next()
                self.recover_to_depth(0)
        if not saw_ontology:
            self.error(self.peek(), "missing Ontology header")
        self.ontology.prefixes = dict(self.prefixes.mappings)
        return ParseResult(self.ontology, self.errors, self.skips)

    def parse_prefix_decl(self) -> None:
        start_depth = self.depth
        try:
            self.next()  # Prefix
            self.expect("LPAREN", "'('")
            pn = self.expect("PNAME", "prefix name ending in ':'")
            prefix, _, local = pn.value.partition(":")
            if local:
                raise _SyntaxError(pn, "prefix declaration must not carry a local part")
            self.expect("EQUALS", "'='")
            iri = self.expect("IRI", "namespace IRI in <...>")
            self.expect("RPAREN", "')'")
            if not self.prefixes.declare(prefix, iri.value[1:-1]):
                self.error(pn, f"duplicate prefix declaration {prefix!r}")
        except _SyntaxError as exc:
            self.error(exc.token, exc.message)
            self.recover_to_depth(start_depth)

    def parse_ontology(self) -> None:
        self.next()  # Ontology
        try:
            self.expect("LPAREN", "'('")
        except _SyntaxError as exc:
            self.error(exc.token, exc.message)
            return
        if self.peek().type == "IRI":
            self.ontology.iri = self.next().value[1:-1]
            if self.peek().type == "IRI":
                self.next()  # version IRI, not modeled
        while True:
            tok = self.peek()
            if tok.type == "RPAREN":
                self.next()
                return
            if tok.type == "EOF":
                self.error(tok, "expected axiom or ')' before end of input")
                return
            self.parse_axiom()

    # -- axioms

    def parse_axiom(self) -> None:
        tok = self.peek()
        if tok.type != "NAME":
            self.error(tok, "expected axiom keyword")
            self.next()
            self.recover_to_depth(1)
            return
        kind = tok.value
        start = self.next()
        if kind in UNSUPPORTED_AXIOMS:
            self.skip_axiom(kind, start)
            return
        handler = getattr(self, f"_ax_{kind}", None)
        if handler is None:
            self.error(start, f"unknown axiom kind {kind!r}")
            if self.peek().type == "LPAREN":
                self.next()
                self.recover_to_depth(1)
            return
        try:
            self.expect("LPAREN", "'('")
            self._consume_embedded_annotations()
            axiom = handler()
            self.expect("RPAREN", "')'")
            if axiom is not None:
                self.ontology.add(canonical_axiom(axiom))
        except _UnsupportedAxiom:
            self.recover_to_depth(1)
            self._record_skip(kind, start)
        except _SyntaxError as exc:
            self.error(exc.token, exc.message)
            self.recover_to_depth(1)

    def skip_axiom(self, kind: str, start: Token) -> None:
        try:
            self.expect("LPAREN", "'('")
        except _SyntaxError as exc:
            self.error(exc.token, exc.message)
            return
        end = self.recover_to_depth(1)
        self._record_skip(kind, start, end)

    def _record_skip(self, kind: str, start: Token, end: Token | None = None) -> None:
        rec = SkipRecord(kind, start.line, start.column)
        self.skips.append(rec)
        skip_log.info("%s", rec)
        end_tok = end or self.tokens[max(self.pos - 1, 0)]
        self.ontology.opaque_axioms.append(self.text[start.offset:end_tok.end])

    def _consume_embedded_annotations(self) -> None:
        # Axiom annotations are accepted and ignored (logged at debug level);
        # they are not axioms, so they do not produce skip records.
        while self.peek().type == "NAME" and self.peek().value == "Annotation" \
                and self.peek(1).type == "LPAREN":
            tok = self.next()
            self.next()  # (
            self.recover_to_depth(self.depth - 1)
            log.debug("ignored axiom annotation at %d:%d", tok.line, tok.column)

    def _ax_Declaration(self):
        kw = self.expect("NAME", "entity kind")
        if kw.value not in ("Class", "ObjectProperty", "DataProperty",
                            "NamedIndividual", "Datatype", "AnnotationProperty"):
            raise _SyntaxError(kw, f"unknown entity kind {kw.value!r}")
        self.expect("LPAREN", "'('")
        iri = self.parse_iri("entity IRI")
        self.expect("RPAREN", "')'")
        return Declaration(kw.value, iri)

    def _ax_SubClassOf(self):
        sub = self.parse_class_expression()
        sup = self.parse_class_expression()
        return SubClassOf(sub, sup)

    def _ax_EquivalentClasses(self):
        return EquivalentClasses(tuple(self.parse_expression_list(2)))

    def _ax_DisjointClasses(self):
        return DisjointClasses(tuple(self.parse_expression_list(2)))

    def _ax_ObjectPropertyDomain(self):
        prop = self.parse_iri("object property")
        ce = self.parse_class_expression()
        return PropertyDomain(prop, False, ce)

    def _ax_ObjectPropertyRange(self):
        prop = self.parse_iri("object property")
        ce = self.parse_class_expression()
        return PropertyRange(prop, False, ce)

    def _ax_DataPropertyDomain(self):
        prop = self.parse_iri("data property")
        ce = self.parse_class_expression()
        return PropertyDomain(prop, True, ce)

    def _ax_DataPropertyRange(self):
        prop = self.parse_iri("data property")
        dt = self.parse_iri("datatype")
        return PropertyRange(prop, True, dt)

    def _ax_SubObjectPropertyOf(self):
        tok = self.peek()
        if tok.type == "NAME" and tok.value == "ObjectPropertyChain":
            raise _UnsupportedAxiom()
        sub = self.parse_iri("object property")
        sup = self.parse_iri("object property")
        return SubPropertyOf(sub, sup)

    def _ax_ClassAssertion(self):
        ce = self.parse_class_expression()
        ind = self.parse_iri("individual")
        return ClassAssertion(ind, ce)

    def _ax_ObjectPropertyAssertion(self):
        prop = self.parse_iri("object property")
        subj = self.parse_iri("individual")
        obj = self.parse_iri("individual")
        return PropertyAssertion(subj, prop, obj)

    def _ax_FunctionalObjectProperty(self):
        return PropertyCharacteristic(self.parse_iri("object property"), FUNCTIONAL)

    def _ax_TransitiveObjectProperty(self):
        return PropertyCharacteristic(self.parse_iri("object property"), TRANSITIVE)

    def _ax_InverseObjectProperties(self):
        first = self.parse_iri("object property")
        second = self.parse_iri("object property")
        return PropertyCharacteristic(first, INVERSE_OF, second)

    def _ax_AnnotationAssertion(self):
        prop = self.parse_iri("annotation property")
        if prop != RDFS_LABEL:
            raise _UnsupportedAxiom()
        subject = self.parse_iri("annotation subject")
        lit = self.expect("STRING", "label literal")
        label = _unescape(lit.value[1:-1])
        if self.peek().type == "LANGTAG":
            self.next()
        elif self.peek().type == "DCARET":
            self.next()
            self.parse_iri("datatype")
        return LabelAnnotation(subject, label)

    # -- shared pieces

    def parse_expression_list(self, minimum: int) -> list[ClassExpression]:
        exprs: list[ClassExpression] = []
        while self.peek().type in ("IRI", "PNAME") or (
            self.peek().type == "NAME"
            and (self.peek().value.startswith("Object")
                 or self.peek().value in UNSUPPORTED_CONSTRUCTORS)
        ):
            exprs.append(self.parse_class_expression())
        if len(exprs) < minimum:
            raise _SyntaxError(self.peek(), f"expected at least {minimum} class expressions")
        return exprs

    def parse_iri(self, what: str) -> str:
        tok = self.peek()
        if tok.type == "IRI":
            self.next()
            return tok.value[1:-1]
        if tok.type == "PNAME":
            self.next()
            prefix, _, local = tok.value.partition(":")
            iri = self.prefixes.expand(prefix, local)
            if iri is None:
                raise _SyntaxError(tok, f"unresolvable prefix {prefix + ':'!r}")
            return iri
        raise _SyntaxError(tok, f"expected {what}")

    def parse_class_expression(self) -> ClassExpression:
        tok = self.peek()
        if tok.type in ("IRI", "PNAME"):
            iri = self.parse_iri("class IRI")
            if iri == OWL_THING:
                return THING
            if iri == OWL_NOTHING:
                return NOTHING
            return Atomic(iri)
        if tok.type != "NAME":
            raise _SyntaxError(tok, "expected class expression")
        ctor = tok.value
        if ctor in UNSUPPORTED_CONSTRUCTORS:
            raise _UnsupportedAxiom()
        self.next()
        self.expect("LPAREN", "'('")
        expr = self._parse_constructor_body(ctor, tok)
        self.expect("RPAREN", "')'")
        return canonical(expr)

    def _parse_constructor_body(self, ctor: str, tok: Token) -> ClassExpression:
        if ctor == "ObjectIntersectionOf":
            return And(tuple(self.parse_expression_list(2)))
        if ctor == "ObjectUnionOf":
            return Or(tuple(self.parse_expression_list(2)))
        if ctor == "ObjectComplementOf":
            return Not(self.parse_class_expression())
        if ctor == "ObjectSomeValuesFrom":
            role = self.parse_iri("object property")
            return Exists(role, self.parse_class_expression())
        if ctor == "ObjectAllValuesFrom":
            role = self.parse_iri("object property")
            return ForAll(role, self.parse_class_expression())
        if ctor in ("ObjectMinCardinality", "ObjectMaxCardinality", "ObjectExactCardinality"):
            n_tok = self.expect("INT", "cardinality")
            role = self.parse_iri("object property")
            if self.peek().type == "RPAREN":
                filler: ClassExpression = THING
            else:
                filler = self.parse_class_expression()
            cls = {"ObjectMinCardinality": MinCard,
                   "ObjectMaxCardinality": MaxCard,
                   "ObjectExactCardinality": ExactCard}[ctor]
            return cls(int(n_tok.value), role, filler)
        raise _SyntaxError(tok, f"unknown class expression constructor {ctor!r}")


def _unescape(raw: str) -> str:
    return raw.replace('\\"', '"').replace("\\\\", "\\")


def _escape(raw: str) -> str:
    return raw.replace("\\", "\\\\").replace('"', '\\"')


def parse_document(text: str) -> ParseResult:
    """Parse a functional-syntax document; collects all errors and skips."""
    return Parser(text).parse_document()


def parse_class_expression(text: str, prefixes: dict[str, str] | None = None) -> ClassExpression:
    """Parse a single class expression, e.g. for detail-window bounds.

    Raises ValueError with position info on any syntax problem.
    """
    parser = Parser(text)
    if prefixes:
        for prefix, ns in prefixes.items():
            parser.prefixes.declare(prefix, ns)
    try:
        ce = parser.parse_class_expression()
    except (_SyntaxError, _UnsupportedAxiom) as exc:
        if isinstance(exc, _UnsupportedAxiom):
            raise ValueError(f"unsupported constructor in {text!r}") from None
        raise ValueError(f"{exc.token.line}:{exc.token.column}: {exc.message}") from None
    if parser.errors:
        raise ValueError(str(parser.errors[0]))
    tail = parser.peek()
    if tail.type != "EOF":
        raise ValueError(f"{tail.line}:{tail.column}: trailing input after expression")
    return ce


# ---------------------------------------------------------------------------
# Serializer

def serialize_expression(ce: ClassExpression, prefixes: PrefixTable) -> str:
    c = prefixes.compact
    if isinstance(ce, Atomic):
        return c(ce.iri)
    if ce == THING:
        return "owl:Thing"
    if ce == NOTHING:
        return "owl:Nothing"
    if isinstance(ce, And):
        inner = " ".join(serialize_expression(o, prefixes) for o in ce.operands)
        return f"ObjectIntersectionOf({inner})"
    if isinstance(ce, Or):
        inner = " ".join(serialize_expression(o, prefixes) for o in ce.operands)
        return f"ObjectUnionOf({inner})"
    if isinstance(ce, Not):
        return f"ObjectComplementOf({serialize_expression(ce.operand, prefixes)})"
    if isinstance(ce, Exists):
        return f"ObjectSomeValuesFrom({c(ce.role)} {serialize_expression(ce.filler, prefixes)})"
    if isinstance(ce, ForAll):
        return f"ObjectAllValuesFrom({c(ce.role)} {serialize_expression(ce.filler, prefixes)})"
    if isinstance(ce, MinCard):
        return f"ObjectMinCardinality({ce.n} {c(ce.role)} {serialize_expression(ce.filler, prefixes)})"
    if isinstance(ce, MaxCard):
        return f"ObjectMaxCardinality({ce.n} {c(ce.role)} {serialize_expression(ce.filler, prefixes)})"
    if isinstance(ce, ExactCard):
        return f"ObjectExactCardinality({ce.n} {c(ce.role)} {serialize_expression(ce.filler, prefixes)})"
    raise TypeError(f"cannot serialize {ce!r}")


def serialize_axiom(axiom, prefixes: PrefixTable) -> str:
    c = prefixes.compact
    e = lambda ce: serialize_expression(ce, prefixes)  # noqa: E731
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.kind}({c(axiom.iri)}))"
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({e(axiom.sub)} {e(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return f"EquivalentClasses({' '.join(e(m) for m in axiom.members)})"
    if isinstance(axiom, DisjointClasses):
        return f"DisjointClasses({' '.join(e(m) for m in axiom.members)})"
    if isinstance(axiom, PropertyDomain):
        kw = "DataPropertyDomain" if axiom.is_data else "ObjectPropertyDomain"
        return f"{kw}({c(axiom.prop)} {e(axiom.domain)})"
    if isinstance(axiom, PropertyRange):
        if axiom.is_data:
            return f"DataPropertyRange({c(axiom.prop)} {c(axiom.range)})"
        return f"ObjectPropertyRange({c(axiom.prop)} {e(axiom.range)})"
    if isinstance(axiom, SubPropertyOf):
        return f"SubObjectPropertyOf({c(axiom.sub)} {c(axiom.sup)})"
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({e(axiom.type)} {c(axiom.individual)})"
    if isinstance(axiom, PropertyAssertion):
        return f"ObjectPropertyAssertion({c(axiom.prop)} {c(axiom.subject)} {c(axiom.target)})"
    if isinstance(axiom, PropertyCharacteristic):
        if axiom.kind == FUNCTIONAL:
            return f"FunctionalObjectProperty({c(axiom.prop)})"
        if axiom.kind == TRANSITIVE:
            return f"TransitiveObjectProperty({c(axiom.prop)})"
        return f"InverseObjectProperties({c(axiom.prop)} {c(axiom.other)})"
    if isinstance(axiom, LabelAnnotation):
        return f'AnnotationAssertion(rdfs:label {c(axiom.subject)} "{_escape(axiom.label)}")'
    raise TypeError(f"cannot serialize {axiom!r}")


def serialize_document(ontology: Ontology) -> str:
    """Emit a functional-syntax document that reparses to the same axiom set."""
    prefixes = PrefixTable()
    for prefix, ns in ontology.prefixes.items():
        if STANDARD_PREFIXES.get(prefix) != ns:
            prefixes.declare(prefix, ns)
    lines = [f"Prefix({p}:=<{ns}>)" for p, ns in sorted(prefixes.mappings.items())]
    header = f"Ontology(<{ontology.iri}>" if ontology.iri else "Ontology("
    lines.append(header)
    for axiom in ontology.axioms:
        lines.append("  " + serialize_axiom(axiom, prefixes))
    for raw in ontology.opaque_axioms:
        lines.append("  " + raw)
    lines.append(")")
    return "\n".join(lines) + "\n"
