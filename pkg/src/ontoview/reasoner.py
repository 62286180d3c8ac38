"""Polynomial-fragment classification with conservative fallbacks.

Atoms, intersections and existential restrictions are handled completely
by a completion-rule saturation. Every other constructor is mapped to a
placeholder atom (shared by canonical structure, invertible back to the
expression): unions additionally get one told rule per operand, the rest
carry no rules. Queries about such expressions answer from asserted
structure only, which keeps every reported subsumption sound.

Axioms are compiled to four normal forms over atom ids:

    nf1  A ⊑ B
    nf2  A1 ⊓ ... ⊓ Ak ⊑ B
    nf3  A ⊑ ∃r.B
    nf4  ∃r.A ⊑ B

Saturation derives S(C), the subsumer set of each atom, and R(r), the
derived role links, with a worklist and per-rule indexes. Property range
axioms and role transitivity deliberately contribute nothing here: both
would require machinery whose absence never produces a wrong subsumption,
only a missed one, and they stay visible as annotations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .axioms import (
    DisjointClasses,
    EquivalentClasses,
    Ontology,
    PropertyDomain,
    SubClassOf,
    SubPropertyOf,
)
from .expressions import (
    NOTHING,
    OWL_NOTHING,
    OWL_THING,
    THING,
    And,
    Atomic,
    ClassExpression,
    Exists,
    Nothing,
    Or,
    Thing,
    canonical,
    local_name,
    structural_key,
)

TOP = 0
BOT = 1


class InconsistentOntologyError(Exception):
    """The ontology admits no model: owl:Thing is subsumed by owl:Nothing."""


@dataclass(frozen=True)
class TaxonomyGroup:
    """One equivalence class of named classes."""
    representative: str
    members: tuple[str, ...]


@dataclass
class Taxonomy:
    """Named-class hierarchy: equivalence groups plus the transitive
    reduction of strict subsumption between their representatives.

    The owl:Thing group is always present; the owl:Nothing group exists as
    well, its members being the unsatisfiable classes (possibly none).
    """
    groups: list[TaxonomyGroup]
    rep_of: dict[str, str]
    parents: dict[str, set[str]]
    children: dict[str, set[str]]
    unsatisfiable: frozenset[str]

    def group_of(self, rep: str) -> TaxonomyGroup:
        return self._by_rep[rep]

    def __post_init__(self) -> None:
        self._by_rep = {g.representative: g for g in self.groups}


def _pick_representative(members: set[str]) -> str:
    return min(members, key=lambda iri: (local_name(iri), iri))


class Reasoner:
    def __init__(self, ontology: Ontology):
        self.ontology = ontology
        self._atom_expr: list[ClassExpression] = [THING, NOTHING]
        self._atom_by_key: dict[str, int] = {
            structural_key(THING): TOP,
            structural_key(NOTHING): BOT,
        }
        self._named_atom: dict[str, int] = {}
        # rule indexes over atom ids
        self._nf1: dict[int, list[int]] = {}
        self._nf2_by_member: dict[int, list[tuple[frozenset[int], int]]] = {}
        self._nf3: dict[int, list[tuple[str, int]]] = {}
        self._nf4_by_role: dict[str, list[tuple[int, int]]] = {}
        self._nf4_by_filler: dict[int, list[tuple[str, int]]] = {}
        self._subrole_pairs: set[tuple[str, str]] = set()
        self._superroles: dict[str, set[str]] = {}
        self._registered_ands: list[int] = []
        # saturation state
        self._s: list[set[int]] = []
        self._r_fwd: dict[str, dict[int, set[int]]] = {}
        self._r_bwd: dict[str, dict[int, set[int]]] = {}
        self._dirty = True
        self._load()

    # -- registration ------------------------------------------------------

    def _fresh_atom(self, ce: ClassExpression, key: str) -> int:
        atom = len(self._atom_expr)
        self._atom_expr.append(ce)
        self._atom_by_key[key] = atom
        return atom

    def register(self, ce: ClassExpression) -> int:
        """Atom id for the expression, creating rules on first sight."""
        ce = canonical(ce)
        key = structural_key(ce)
        found = self._atom_by_key.get(key)
        if found is not None:
            return found
        self._dirty = True
        if isinstance(ce, Atomic):
            atom = self._fresh_atom(ce, key)
            self._named_atom[ce.iri] = atom
            return atom
        atom = self._fresh_atom(ce, key)
        if isinstance(ce, And):
            parts = {self.register(op) for op in ce.operands}
            for p in parts:
                self._nf1.setdefault(atom, []).append(p)
            if len(parts) == 1:
                p = next(iter(parts))
                self._nf1.setdefault(p, []).append(atom)
            else:
                premise = frozenset(parts)
                for p in parts:
                    self._nf2_by_member.setdefault(p, []).append((premise, atom))
            self._registered_ands.append(atom)
        elif isinstance(ce, Exists):
            filler = self.register(ce.filler)
            self._nf3.setdefault(atom, []).append((ce.role, filler))
            self._nf4_by_role.setdefault(ce.role, []).append((filler, atom))
            self._nf4_by_filler.setdefault(filler, []).append((ce.role, atom))
        elif isinstance(ce, Or):
            for op in ce.operands:
                self._nf1.setdefault(self.register(op), []).append(atom)
        # Not / ForAll / cardinalities: placeholder atom without rules
        return atom

    def expression_of(self, atom: int) -> ClassExpression:
        return self._atom_expr[atom]

    def _load(self) -> None:
        for iri in sorted(self.ontology.signature.classes):
            self.register(Atomic(iri))
        for ax in self.ontology.axioms:
            if isinstance(ax, SubClassOf):
                self._nf1.setdefault(self.register(ax.sub), []).append(self.register(ax.sup))
            elif isinstance(ax, EquivalentClasses):
                atoms = [self.register(m) for m in ax.members]
                for i in range(len(atoms) - 1):
                    self._nf1.setdefault(atoms[i], []).append(atoms[i + 1])
                    self._nf1.setdefault(atoms[i + 1], []).append(atoms[i])
            elif isinstance(ax, DisjointClasses):
                atoms = [self.register(m) for m in ax.members]
                for i in range(len(atoms)):
                    for j in range(i + 1, len(atoms)):
                        if atoms[i] == atoms[j]:
                            self._nf1.setdefault(atoms[i], []).append(BOT)
                        else:
                            premise = frozenset({atoms[i], atoms[j]})
                            for p in premise:
                                self._nf2_by_member.setdefault(p, []).append((premise, BOT))
            elif isinstance(ax, PropertyDomain) and not ax.is_data:
                dom = self.register(ax.domain)
                self._nf4_by_role.setdefault(ax.prop, []).append((TOP, dom))
                self._nf4_by_filler.setdefault(TOP, []).append((ax.prop, dom))
            elif isinstance(ax, SubPropertyOf):
                self._subrole_pairs.add((ax.sub, ax.sup))

    # -- saturation --------------------------------------------------------

    def _close_roles(self) -> None:
        roles = set(self._nf4_by_role)
        for rules in self._nf3.values():
            roles.update(r for r, _ in rules)
        roles.update(r for pair in self._subrole_pairs for r in pair)
        supers = {r: {r} for r in roles}
        changed = True
        while changed:
            changed = False
            for sub, sup in self._subrole_pairs:
                merged = supers[sub] | supers[sup]
                if merged != supers[sub]:
                    supers[sub] = merged
                    changed = True
        self._superroles = supers

    def _saturate(self) -> None:
        self._close_roles()
        n = len(self._atom_expr)
        s: list[set[int]] = [set() for _ in range(n)]
        r_fwd: dict[str, dict[int, set[int]]] = {}
        r_bwd: dict[str, dict[int, set[int]]] = {}
        queue: deque = deque()

        def add_s(c: int, x: int) -> None:
            if x not in s[c]:
                s[c].add(x)
                queue.append((True, c, x, ""))

        def add_r(role: str, c: int, d: int) -> None:
            for sup in self._superroles.get(role, (role,)):
                fwd = r_fwd.setdefault(sup, {}).setdefault(c, set())
                if d not in fwd:
                    fwd.add(d)
                    r_bwd.setdefault(sup, {}).setdefault(d, set()).add(c)
                    queue.append((False, c, d, sup))

        for c in range(n):
            add_s(c, c)
            add_s(c, TOP)

        while queue:
            is_s, c, x, role = queue.popleft()
            if is_s:
                for b in self._nf1.get(x, ()):
                    add_s(c, b)
                for premise, b in self._nf2_by_member.get(x, ()):
                    if premise <= s[c]:
                        add_s(c, b)
                for r, b in self._nf3.get(x, ()):
                    add_r(r, c, b)
                # c gained x; c may be the target of role links
                for r, b in self._nf4_by_filler.get(x, ()):
                    for origin in r_bwd.get(r, {}).get(c, ()):
                        add_s(origin, b)
                if x == BOT:
                    for bwd in r_bwd.values():
                        for origin in bwd.get(c, ()):
                            add_s(origin, BOT)
            else:
                d = x
                for filler, b in self._nf4_by_role.get(role, ()):
                    if filler in s[d]:
                        add_s(c, b)
                if BOT in s[d]:
                    add_s(c, BOT)

        self._s = s
        self._r_fwd = r_fwd
        self._r_bwd = r_bwd
        self._dirty = False

    def _ensure(self) -> None:
        if self._dirty:
            self._saturate()

    # -- queries -----------------------------------------------------------

    def is_consistent(self) -> bool:
        self._ensure()
        return BOT not in self._s[TOP]

    def is_subsumed(self, sub: ClassExpression, sup: ClassExpression) -> bool:
        """sub ⊑ sup under the completion semantics; sound, and complete
        for the atoms/intersections/existentials fragment."""
        a = self.register(sub)
        b = self.register(sup)
        self._ensure()
        if BOT in self._s[TOP]:
            return True
        return b in self._s[a] or BOT in self._s[a]

    def is_equivalent(self, a: ClassExpression, b: ClassExpression) -> bool:
        return self.is_subsumed(a, b) and self.is_subsumed(b, a)

    def is_disjoint(self, a: ClassExpression, b: ClassExpression) -> bool:
        """True when a ⊓ b is derivably unsatisfiable."""
        conj = canonical(And((a, b)))
        atom = self.register(conj)
        self._ensure()
        return BOT in self._s[TOP] or BOT in self._s[atom]

    def unsatisfiable_classes(self) -> set[str]:
        self._ensure()
        if BOT in self._s[TOP]:
            return set(self.ontology.signature.classes)
        return {iri for iri, atom in self._named_atom.items()
                if BOT in self._s[atom] and iri in self.ontology.signature.classes}

    def named_subsumers(self, iri: str) -> set[str]:
        """Named classes subsuming the named class, itself included."""
        self._ensure()
        atom = self._named_atom.get(iri)
        if atom is None:
            return set()
        named = self.ontology.signature.classes
        return {self._atom_expr[x].iri for x in self._s[atom]
                if isinstance(self._atom_expr[x], Atomic)
                and self._atom_expr[x].iri in named}

    def inferred_disjoint_pairs(self) -> set[tuple[str, str]]:
        """Unordered named pairs (a, b), a < b, whose two-way intersection
        is known unsatisfiable. Covers asserted disjointness of named pairs
        and any derived one whose conjunction was materialized; pairs that
        were never conjoined anywhere are not searched for."""
        self._ensure()
        pairs: set[tuple[str, str]] = set()
        for ax in self.ontology.axioms:
            if isinstance(ax, DisjointClasses):
                atomics = sorted(m.iri for m in ax.members if isinstance(m, Atomic))
                for i in range(len(atomics)):
                    for j in range(i + 1, len(atomics)):
                        if atomics[i] != atomics[j]:
                            pairs.add((atomics[i], atomics[j]))
        for atom in self._registered_ands:
            if BOT not in self._s[atom]:
                continue
            ce = self._atom_expr[atom]
            if isinstance(ce, And) and len(ce.operands) == 2 \
                    and all(isinstance(o, Atomic) for o in ce.operands):
                a, b = sorted(o.iri for o in ce.operands)
                pairs.add((a, b))
        return pairs

    # -- classification ----------------------------------------------------

    def classify(self) -> Taxonomy:
        """Group named classes by mutual subsumption and reduce the strict
        order between groups to its direct edges.

        Raises InconsistentOntologyError when no model exists.
        """
        self._ensure()
        if BOT in self._s[TOP]:
            raise InconsistentOntologyError(
                "owl:Thing is unsatisfiable; every class is equivalent to owl:Nothing")
        named = sorted(self.ontology.signature.classes)
        named_set = set(named)
        atom_of = self._named_atom

        unsat = {iri for iri in named if BOT in self._s[atom_of[iri]]}
        thing_like = {iri for iri in named if atom_of[iri] in self._s[TOP]} - unsat

        # strict named subsumers for the satisfiable rest
        sat = [iri for iri in named if iri not in unsat and iri not in thing_like]
        supers: dict[str, set[str]] = {}
        for iri in sat:
            subsumers = {self._atom_expr[x].iri for x in self._s[atom_of[iri]]
                         if isinstance(self._atom_expr[x], Atomic)
                         and self._atom_expr[x].iri in named_set}
            supers[iri] = subsumers - {iri}

        rep_of: dict[str, str] = {}
        groups: list[TaxonomyGroup] = []
        seen: set[str] = set()
        for iri in sat:
            if iri in seen:
                continue
            equiv = {other for other in supers[iri]
                     if other in supers and iri in supers[other]} | {iri}
            seen |= equiv
            rep = _pick_representative(equiv)
            for member in equiv:
                rep_of[member] = rep
            groups.append(TaxonomyGroup(rep, tuple(sorted(equiv, key=lambda i: (local_name(i), i)))))

        thing_group = TaxonomyGroup(OWL_THING, tuple(sorted(thing_like, key=lambda i: (local_name(i), i))))
        nothing_group = TaxonomyGroup(OWL_NOTHING, tuple(sorted(unsat, key=lambda i: (local_name(i), i))))
        for member in thing_like:
            rep_of[member] = OWL_THING
        for member in unsat:
            rep_of[member] = OWL_NOTHING

        reps = [g.representative for g in groups]
        strict_rep_supers: dict[str, set[str]] = {}
        for g in groups:
            rep = g.representative
            up = {rep_of[s] for s in supers[rep] if rep_of.get(s) not in (None, rep)}
            up.discard(OWL_THING)
            strict_rep_supers[rep] = up | {OWL_THING}
        strict_rep_supers[OWL_THING] = set()
        strict_rep_supers[OWL_NOTHING] = set(reps) | {OWL_THING}

        parents: dict[str, set[str]] = {}
        for rep, up in strict_rep_supers.items():
            indirect: set[str] = set()
            for mid in up:
                indirect |= strict_rep_supers.get(mid, set())
            parents[rep] = up - indirect

        children: dict[str, set[str]] = {rep: set() for rep in parents}
        for rep, ups in parents.items():
            for up in ups:
                children.setdefault(up, set()).add(rep)

        all_groups = [thing_group] + groups + [nothing_group]
        return Taxonomy(all_groups, rep_of, parents, children, frozenset(unsat))
