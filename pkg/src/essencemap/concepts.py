"""Concept model and the relational operations over matched attribute sets.

A semantic context is a named knowledge domain holding concepts; a concept
carries attribute statements (its intension), object instances (its
extension) and opaque references to related concepts.  Internal relations
are the full cross product of objects and attributes, so they are derived
on demand rather than stored.

The relational predicates (:func:`related`, :func:`similarity`, ...) never
look at raw attribute text: two attributes count as shared only when they
appear as a pair in a :class:`~essencemap.matching.MatchSet`, which is how
the natural-language intersection is made computable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import NoAttributesError

if TYPE_CHECKING:
    from .matching import MatchSet

ATTR_ID_PATTERN = re.compile(r"[a-z][a-z0-9]*\Z")


@dataclass(frozen=True, order=True)
class AttrRef:
    """Fully qualified attribute reference: ``context/Concept.attrId``."""

    context: str
    concept: str
    attr: str

    def __str__(self) -> str:
        return f"{self.context}/{self.concept}.{self.attr}"

    @classmethod
    def parse(cls, text: str) -> "AttrRef":
        head, sep, attr = text.rpartition(".")
        context, sep2, concept = head.partition("/")
        if not sep or not sep2 or not context or not concept or not attr:
            raise ValueError(f"malformed attribute reference: {text!r}")
        return cls(context, concept, attr)


def _clean_line_text(value: str, what: str) -> str:
    value = value.strip()
    if not value:
        raise ValueError(f"{what} must not be empty")
    if "\n" in value or "\r" in value:
        raise ValueError(f"{what} must be a single line")
    return value


@dataclass(frozen=True)
class AttributeStatement:
    """One attribute of a concept: an id plus a sentence fragment."""

    id: str
    text: str

    def __post_init__(self):
        object.__setattr__(self, "id", self.id.strip())
        object.__setattr__(self, "text", _clean_line_text(self.text, "attribute text"))
        if not ATTR_ID_PATTERN.match(self.id):
            raise ValueError(f"attribute id must match [a-z][a-z0-9]*, got {self.id!r}")


@dataclass(frozen=True)
class ObjectInstance:
    """A concrete instance extended from a concept."""

    id: str
    text: str

    def __post_init__(self):
        object.__setattr__(self, "id", self.id.strip())
        object.__setattr__(self, "text", _clean_line_text(self.text, "object text"))
        if not self.id or any(c.isspace() for c in self.id):
            raise ValueError(f"object id must be a non-empty token, got {self.id!r}")


@dataclass(frozen=True)
class Concept:
    """A named cognitive unit: attributes, objects and relation references.

    ``input_relations`` / ``output_relations`` hold ``context/Name`` strings
    verbatim; they are reported but never influence any score.
    """

    name: str
    attributes: tuple[AttributeStatement, ...] = ()
    objects: tuple[ObjectInstance, ...] = ()
    input_relations: tuple[str, ...] = ()
    output_relations: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "name", _clean_line_text(self.name, "concept name"))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "input_relations", tuple(self.input_relations))
        object.__setattr__(self, "output_relations", tuple(self.output_relations))
        seen = set()
        for attr in self.attributes:
            if attr.id in seen:
                raise ValueError(f"duplicate attribute id {attr.id!r} in concept {self.name!r}")
            seen.add(attr.id)
        seen.clear()
        for obj in self.objects:
            if obj.id in seen:
                raise ValueError(f"duplicate object id {obj.id!r} in concept {self.name!r}")
            seen.add(obj.id)
        for rel in self.input_relations + self.output_relations:
            if "/" not in rel or "\n" in rel or "\r" in rel or rel != rel.strip() or not rel:
                raise ValueError(f"relation reference must look like ctx/Name, got {rel!r}")

    def attribute(self, attr_id: str) -> AttributeStatement:
        for attr in self.attributes:
            if attr.id == attr_id:
                return attr
        raise KeyError(attr_id)

    def internal_relations(self) -> tuple[tuple[ObjectInstance, AttributeStatement], ...]:
        """Object x attribute cross product, derived rather than stored."""
        return tuple((o, a) for o in self.objects for a in self.attributes)


@dataclass(frozen=True)
class SemanticContext:
    """A knowledge domain: an identifier plus its member concepts."""

    id: str
    concepts: tuple[Concept, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))
        if not self.id or "/" in self.id or any(c.isspace() for c in self.id):
            raise ValueError(f"context id must be non-empty with no whitespace or '/', got {self.id!r}")
        names = [c.name for c in self.concepts]
        if len(names) != len(set(names)):
            dup = next(n for n in names if names.count(n) > 1)
            raise ValueError(f"duplicate concept name {dup!r} in context {self.id!r}")

    def concept(self, name: str) -> Concept:
        for c in self.concepts:
            if c.name == name:
                return c
        raise KeyError(name)


def _normalize_label(text: str) -> str:
    return " ".join(text.lower().split())


def related(c1: Concept, c2: Concept, m: "MatchSet") -> bool:
    """True when the two concepts share at least one matched attribute."""
    return len(m.pairs) > 0


def independent(c1: Concept, c2: Concept, m: "MatchSet") -> bool:
    """Negation of :func:`related`: no attribute pair survived matching."""
    return not related(c1, c2, m)


def similarity(c1: Concept, c2: Concept, m: "MatchSet") -> Fraction:
    """Shared-attribute ratio as an exact percentage in [0, 100].

    Computes ``100 * k / (|A1| + |A2| - k)`` where ``k`` is the number of
    matched pairs; each matched pair counts once in the union.  Raises
    :class:`NoAttributesError` when both attribute sets are empty, since
    0/0 has no meaningful value.
    """
    k = len(m.pairs)
    n1, n2 = len(c1.attributes), len(c2.attributes)
    if n1 == 0 and n2 == 0:
        raise NoAttributesError(
            f"no attributes to compare between {c1.name!r} and {c2.name!r}"
        )
    return Fraction(100 * k, n1 + n2 - k)


def equivalent(c1: Concept, c2: Concept, m: "MatchSet") -> bool:
    """True when attributes are fully matched and object labels coincide.

    Object labels are compared after lowercasing and whitespace collapsing;
    two empty object sets are equal.
    """
    k = len(m.pairs)
    if not (k == len(c1.attributes) == len(c2.attributes)):
        return False
    labels1 = {_normalize_label(o.text) for o in c1.objects}
    labels2 = {_normalize_label(o.text) for o in c2.objects}
    return labels1 == labels2


def sub_concept(c1: Concept, c2: Concept, m: "MatchSet") -> bool:
    """True when c1's intension strictly contains c2's.

    Every attribute of ``c2`` must be matched while ``c1`` carries strictly
    more attributes; containment is strict, so a concept is never a
    sub-concept of itself.
    """
    k = len(m.pairs)
    return k == len(c2.attributes) and len(c1.attributes) > len(c2.attributes)


def super_concept(c1: Concept, c2: Concept, m: "MatchSet") -> bool:
    """Mirror of :func:`sub_concept`: c2's intension strictly contains c1's."""
    return sub_concept(c2, c1, m.mirror())
