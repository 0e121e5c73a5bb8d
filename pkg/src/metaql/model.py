"""Shared abstract syntax.

Entities, class/property expressions and axioms mirror the restricted
ontology language; terms, atoms, rules and conjunctive queries mirror the
Datalog side.  All values are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ArityMismatch, UnknownPrefix, UnsafeQuery, UnsafeRule

# ==============================================================================
# Entities
# ==============================================================================

OWL_NS = "http://www.w3.org/2002/07/owl#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

# Reserved top/bottom names live in a tool namespace; input files spell them
# owl:Thing etc. and intern() maps those spellings onto the reserved entities.
_RESERVED_NS = "urn:metaql:"


@dataclass(frozen=True, slots=True)
class Entity:
    """An IRI-denoted name; under punning one entity may act as class,
    property and individual at the same time."""

    iri: str

    def __post_init__(self):
        if not self.iri or any(ch.isspace() for ch in self.iri):
            raise ValueError(f"bad entity IRI {self.iri!r}")

    def __str__(self) -> str:
        return self.iri


TOP_CLASS = Entity(_RESERVED_NS + "topClass")
BOTTOM_CLASS = Entity(_RESERVED_NS + "botClass")
TOP_PROPERTY = Entity(_RESERVED_NS + "topProperty")
BOTTOM_PROPERTY = Entity(_RESERVED_NS + "botProperty")

OWL_TO_RESERVED = {
    OWL_NS + "Thing": TOP_CLASS,
    OWL_NS + "Nothing": BOTTOM_CLASS,
    OWL_NS + "topObjectProperty": TOP_PROPERTY,
    OWL_NS + "bottomObjectProperty": BOTTOM_PROPERTY,
}
RESERVED_TO_OWL = {e.iri: iri for iri, e in OWL_TO_RESERVED.items()}


def intern(name: str, prefixes: dict[str, str]) -> Entity:
    """Resolve a token to an Entity with a fully expanded IRI.

    Accepts ``<full-iri>`` or ``prefix:local`` (the empty prefix is
    spelled ``:local``).  Idempotent: interning the same token twice
    yields equal entities.
    """
    if name.startswith("<") and name.endswith(">"):
        iri = name[1:-1]
    else:
        prefix, sep, local = name.partition(":")
        if not sep:
            raise UnknownPrefix(name)
        if prefix not in prefixes:
            raise UnknownPrefix(prefix)
        iri = prefixes[prefix] + local
    reserved = OWL_TO_RESERVED.get(iri)
    return reserved if reserved is not None else Entity(iri)


def display_iri(iri: str) -> str:
    """Spell reserved entities with their OWL names for output."""
    return RESERVED_TO_OWL.get(iri, iri)


# ==============================================================================
# Class and property expressions
# ==============================================================================


@dataclass(frozen=True, slots=True)
class PropExpr:
    """An object property or its inverse.  Double inverses cannot be
    represented; parsers fold them away by flipping the flag."""

    prop: Entity
    inverse: bool = False

    def flipped(self) -> "PropExpr":
        return PropExpr(self.prop, not self.inverse)

    def __str__(self) -> str:
        return f"{self.prop}^-" if self.inverse else str(self.prop)


@dataclass(frozen=True, slots=True)
class Atomic:
    """A named class."""

    cls: Entity

    def __str__(self) -> str:
        return str(self.cls)


@dataclass(frozen=True, slots=True)
class Some:
    """Existential restriction with an atomic filler.  ``filler == TOP_CLASS``
    plays the role of the unqualified domain/range concept."""

    prop: PropExpr
    filler: Entity

    def __str__(self) -> str:
        return f"some({self.prop}, {self.filler})"


ClassExpr = Union[Atomic, Some]


def is_basic(ce: ClassExpr) -> bool:
    """Basic concepts: a named class, or an unqualified existential."""
    return isinstance(ce, Atomic) or ce.filler == TOP_CLASS


# ==============================================================================
# Axioms
# ==============================================================================


@dataclass(frozen=True, slots=True)
class ClassInclusion:
    sub: ClassExpr
    sup: ClassExpr

    def __post_init__(self):
        if not is_basic(self.sub):
            raise ValueError(f"inclusion left side must be basic: {self.sub}")


@dataclass(frozen=True, slots=True)
class PropInclusion:
    # The left side is always direct; r^- <= s is stored as r <= s^-.
    sub: PropExpr
    sup: PropExpr

    def __post_init__(self):
        if self.sub.inverse:
            raise ValueError("property inclusion left side must be direct")


@dataclass(frozen=True, slots=True)
class ClassDisjoint:
    # Two basic concepts with an empty intersection; the second field is
    # the negated operand as written.
    left: ClassExpr
    right: ClassExpr

    def __post_init__(self):
        if not (is_basic(self.left) and is_basic(self.right)):
            raise ValueError("disjointness operands must be basic concepts")


@dataclass(frozen=True, slots=True)
class PropDisjoint:
    left: PropExpr
    right: PropExpr

    def __post_init__(self):
        if self.left.inverse:
            raise ValueError("property disjointness left side must be direct")


@dataclass(frozen=True, slots=True)
class Reflexive:
    prop: Entity


@dataclass(frozen=True, slots=True)
class Irreflexive:
    prop: Entity


@dataclass(frozen=True, slots=True)
class ClassAssertion:
    cls: Entity
    individual: Entity


@dataclass(frozen=True, slots=True)
class PropAssertion:
    prop: Entity
    subject: Entity
    object: Entity


@dataclass(frozen=True, slots=True)
class DifferentIndividuals:
    a: Entity
    b: Entity


Axiom = Union[
    ClassInclusion,
    PropInclusion,
    ClassDisjoint,
    PropDisjoint,
    Reflexive,
    Irreflexive,
    ClassAssertion,
    PropAssertion,
    DifferentIndividuals,
]

TBOX_KINDS = (ClassInclusion, PropInclusion, ClassDisjoint, PropDisjoint, Reflexive, Irreflexive)
ABOX_KINDS = (ClassAssertion, PropAssertion, DifferentIndividuals)


# ==============================================================================
# The fixed Datalog signature
# ==============================================================================

# Predicate name -> arity.  isac*/isar* encode positive inclusions, disj*
# negative ones, instc/instr/diff the assertions.
SIGNATURE: dict[str, int] = {
    "isacCC": 2,
    "isacCI": 3,
    "isacRR": 3,
    "isacIC": 2,
    "isacIR": 3,
    "isacII": 3,
    "isarRR": 2,
    "isarRI": 2,
    "isacCR": 3,
    "isacRC": 2,
    "isacRI": 3,
    "refl": 1,
    "disjrRR": 2,
    "disjcCC": 2,
    "disjcCI": 2,
    "disjcRC": 2,
    "disjcRR": 2,
    "disjcRI": 2,
    "disjcIC": 2,
    "disjcIR": 2,
    "disjcII": 2,
    "disjrRI": 2,
    "irrefl": 1,
    "instc": 2,
    "instr": 3,
    "diff": 2,
}

# Auxiliary predicates used by the rule base but never produced by the
# axiom translation.
AUX_ARITY = {"named": 1, "violation": 0}

KNOWN_ARITY = {**SIGNATURE, **AUX_ARITY}


# ==============================================================================
# Terms, atoms, rules, queries
# ==============================================================================


@dataclass(frozen=True, slots=True)
class Const:
    value: Entity

    def __str__(self) -> str:
        return f'"{self.value.iri}"'


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Const, Var]


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple[Term, ...]

    def __post_init__(self):
        expected = KNOWN_ARITY.get(self.pred)
        if expected is not None and expected != len(self.args):
            raise ArityMismatch(
                f"{self.pred} expects {expected} argument(s), got {len(self.args)}"
            )

    def is_ground(self) -> bool:
        return all(isinstance(t, Const) for t in self.args)

    def variables(self) -> set[Var]:
        return {t for t in self.args if isinstance(t, Var)}

    def to_dl(self) -> str:
        return f"{self.pred}({', '.join(str(a) for a in self.args)})"

    def __str__(self) -> str:
        return self.to_dl()


def atom(pred: str, *args) -> Atom:
    """Build an Atom, wrapping Entities as constants and strings as variables."""
    terms = []
    for a in args:
        if isinstance(a, Entity):
            terms.append(Const(a))
        elif isinstance(a, str):
            terms.append(Var(a))
        else:
            terms.append(a)
    return Atom(pred, tuple(terms))


@dataclass(frozen=True, slots=True)
class Rule:
    head: Atom
    body: tuple[Atom, ...] = ()

    def __post_init__(self):
        body_vars = set().union(*(a.variables() for a in self.body)) if self.body else set()
        missing = self.head.variables() - body_vars
        if missing:
            raise UnsafeRule(f"unsafe rule, {sorted(v.name for v in missing)} not in body: {self}")

    def is_fact(self) -> bool:
        return not self.body

    def to_dl(self) -> str:
        if not self.body:
            return f"{self.head.to_dl()}."
        return f"{self.head.to_dl()} :- {', '.join(a.to_dl() for a in self.body)}."

    def __str__(self) -> str:
        return self.to_dl()


@dataclass(frozen=True, slots=True)
class ConjunctiveQuery:
    """Datalog-level conjunctive query: distinguished variables plus a
    non-empty conjunction of body atoms."""

    answer_vars: tuple[Var, ...]
    body: tuple[Atom, ...]

    def __post_init__(self):
        if not self.body:
            raise UnsafeQuery("query body must be non-empty")
        body_vars = set().union(*(a.variables() for a in self.body))
        missing = set(self.answer_vars) - body_vars
        if missing:
            raise UnsafeQuery(
                f"answer variable(s) {sorted(v.name for v in missing)} do not occur in the body"
            )

    def variables(self) -> set[Var]:
        return set().union(*(a.variables() for a in self.body))


def alpha_equivalent(r1: Rule, r2: Rule) -> bool:
    """Rule equality up to a consistent renaming of variables."""

    def canon(rule: Rule):
        mapping: dict[str, str] = {}
        out = []
        for a in (rule.head, *rule.body):
            args = []
            for t in a.args:
                if isinstance(t, Var):
                    args.append(mapping.setdefault(t.name, f"V{len(mapping)}"))
                else:
                    args.append(t)
            out.append((a.pred, tuple(args)))
        return out

    return canon(r1) == canon(r2)
