"""Schema layer: classes, class hierarchy, property definitions, validation.

The schema is loaded from a line-oriented declaration file (see
``parse_ontology``), indexed, and frozen.  Every triple emitted during
ingest is checked against it with :func:`check_domain_range`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple

from .namespaces import BUILTIN_PREDICATES, CLASS_NS
from .store import Iri, Literal, Triple


class OntologyError(Exception):
    """Base class for schema failures."""


class OntologyParseError(OntologyError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DanglingIriError(OntologyError):
    """A parents/domain/range reference does not resolve to a declared class."""


class HierarchyCycleError(OntologyError):
    """The subclass relation contains a cycle."""


class UndeclaredPredicateError(OntologyError):
    """check_domain_range was asked about a predicate the schema does not declare."""


class PropertyKind(str, Enum):
    DATATYPE = "datatype"
    OBJECT = "object"


class DatatypeTag(str, Enum):
    STRING = "string"
    FLOAT = "float"
    INTEGER = "integer"


#: External-mapping relations accepted on CLASS declarations.
EQUIV_RELATIONS = ("equivalentClass", "subClassOf")


@dataclass(frozen=True)
class ClassDef:
    iri: str
    label_zh: str
    label_en: str
    comment: Optional[str] = None
    parents: FrozenSet[str] = frozenset()
    external_equivalents: FrozenSet[Tuple[str, str]] = frozenset()


@dataclass(frozen=True)
class PropertyDef:
    iri: str
    kind: PropertyKind
    label_zh: str
    label_en: str
    domains: FrozenSet[str] = frozenset()
    range: str = DatatypeTag.STRING.value


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


def violation(reason: str) -> Verdict:
    return Verdict(False, reason)


@dataclass
class OntologySchema:
    classes: Dict[str, ClassDef] = field(default_factory=dict)
    properties: Dict[str, PropertyDef] = field(default_factory=dict)
    _closures: Dict[str, FrozenSet[str]] = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, OntologySchema):
            return NotImplemented
        return self.classes == other.classes and self.properties == other.properties

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def datatype_property_count(self) -> int:
        return sum(
            1 for p in self.properties.values() if p.kind is PropertyKind.DATATYPE
        )

    @property
    def object_property_count(self) -> int:
        return sum(
            1 for p in self.properties.values() if p.kind is PropertyKind.OBJECT
        )

    def subclass_closure(self, class_iri: str) -> FrozenSet[str]:
        """Reflexive-transitive closure over parents, the class included."""
        if class_iri not in self.classes:
            raise DanglingIriError(f"unknown class: {class_iri}")
        cached = self._closures.get(class_iri)
        if cached is not None:
            return cached
        seen: Set[str] = set()
        stack = [class_iri]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(self.classes[cur].parents)
        result = frozenset(seen)
        self._closures[class_iri] = result
        return result

    def hierarchy_depth(self) -> int:
        """Longest root-to-class path length; a root counts 1, empty schema 0."""
        depths: Dict[str, int] = {}

        def depth(iri: str) -> int:
            if iri in depths:
                return depths[iri]
            parents = self.classes[iri].parents
            d = 1 if not parents else 1 + max(depth(p) for p in parents)
            depths[iri] = d
            return d

        return max((depth(c) for c in self.classes), default=0)


# --- parsing -----------------------------------------------------------------


def _split_segments(rest: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for segment in rest.split("|"):
        segment = segment.strip()
        if not segment:
            continue
        if "=" not in segment:
            raise ValueError(f"malformed segment: {segment!r}")
        key, _, value = segment.partition("=")
        fields[key.strip()] = value.strip()
    return fields


def _parse_iri_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def parse_ontology(document: str) -> OntologySchema:
    """Parse the declaration format without cross-reference validation.

    One declaration per line::

        CLASS <iri> | zh=<label> | en=<label> | parents=<iri,...>
        PROP <iri> | kind=datatype|object | zh=.. | en=.. | domain=<iri,...> | range=<iri-or-datatype>

    CLASS lines additionally accept ``comment=`` and
    ``equiv=<relation>:<iri>,...`` segments.
    """
    schema = OntologySchema()
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        parts = rest.split("|", 1)
        head = parts[0].strip()
        if not (head.startswith("<") and head.endswith(">")):
            raise OntologyParseError(f"expected <iri> after {keyword}", lineno)
        iri = head[1:-1]
        try:
            fields = _split_segments(parts[1] if len(parts) > 1 else "")
        except ValueError as exc:
            raise OntologyParseError(str(exc), lineno)

        if keyword == "CLASS":
            if iri in schema.classes:
                raise OntologyParseError(f"duplicate class: {iri}", lineno)
            if not iri.startswith(CLASS_NS):
                raise OntologyParseError(
                    f"class IRI outside class namespace: {iri}", lineno
                )
            if "zh" not in fields or "en" not in fields:
                raise OntologyParseError("class labels zh= and en= required", lineno)
            parents = _parse_iri_list(fields.get("parents", ""))
            if iri in parents:
                raise OntologyParseError(f"class lists itself as parent: {iri}", lineno)
            equivalents = []
            for item in _parse_iri_list(fields.get("equiv", "")):
                relation, _, target = item.partition(":")
                if relation not in EQUIV_RELATIONS or not target:
                    raise OntologyParseError(f"malformed equiv item: {item!r}", lineno)
                equivalents.append((target, relation))
            schema.classes[iri] = ClassDef(
                iri=iri,
                label_zh=fields["zh"],
                label_en=fields["en"],
                comment=fields.get("comment") or None,
                parents=frozenset(parents),
                external_equivalents=frozenset(equivalents),
            )
        elif keyword == "PROP":
            if iri in schema.properties:
                raise OntologyParseError(f"duplicate property: {iri}", lineno)
            for required in ("kind", "zh", "en", "domain", "range"):
                if required not in fields:
                    raise OntologyParseError(f"missing {required}= segment", lineno)
            try:
                kind = PropertyKind(fields["kind"])
            except ValueError:
                raise OntologyParseError(f"bad kind: {fields['kind']!r}", lineno)
            domains = frozenset(_parse_iri_list(fields["domain"]))
            if not domains:
                raise OntologyParseError("domain= must list at least one class", lineno)
            range_value = fields["range"]
            if kind is PropertyKind.DATATYPE:
                try:
                    DatatypeTag(range_value)
                except ValueError:
                    raise OntologyParseError(
                        f"bad datatype range: {range_value!r}", lineno
                    )
            schema.properties[iri] = PropertyDef(
                iri=iri,
                kind=kind,
                label_zh=fields["zh"],
                label_en=fields["en"],
                domains=domains,
                range=range_value,
            )
        else:
            raise OntologyParseError(f"unknown declaration: {keyword!r}", lineno)
    return schema


def _check_references(schema: OntologySchema) -> None:
    for cls in schema.classes.values():
        for parent in cls.parents:
            if parent not in schema.classes:
                raise DanglingIriError(
                    f"class {cls.iri} lists unknown parent {parent}"
                )
    for prop in schema.properties.values():
        for domain in prop.domains:
            if domain not in schema.classes:
                raise DanglingIriError(
                    f"property {prop.iri} lists unknown domain {domain}"
                )
        if prop.kind is PropertyKind.OBJECT and prop.range not in schema.classes:
            raise DanglingIriError(
                f"object property {prop.iri} has unknown range {prop.range}"
            )


def _check_acyclic(schema: OntologySchema) -> None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {iri: WHITE for iri in schema.classes}

    def visit(iri: str, trail: List[str]) -> None:
        color[iri] = GREY
        trail.append(iri)
        for parent in schema.classes[iri].parents:
            if color[parent] == GREY:
                cycle = trail[trail.index(parent):] + [parent]
                raise HierarchyCycleError(
                    "hierarchy cycle: " + " -> ".join(cycle)
                )
            if color[parent] == WHITE:
                visit(parent, trail)
        trail.pop()
        color[iri] = BLACK

    for iri in schema.classes:
        if color[iri] == WHITE:
            visit(iri, [])


def load_ontology(document: str) -> OntologySchema:
    """Parse and validate an ontology document."""
    schema = parse_ontology(document)
    _check_references(schema)
    _check_acyclic(schema)
    return schema


def serialize_ontology(schema: OntologySchema) -> str:
    """Deterministic textual form; load(serialize(s)) == s."""
    lines = []
    for iri in sorted(schema.classes):
        cls = schema.classes[iri]
        parts = [f"CLASS <{iri}>", f"zh={cls.label_zh}", f"en={cls.label_en}"]
        if cls.parents:
            parts.append("parents=" + ",".join(sorted(cls.parents)))
        if cls.comment:
            parts.append(f"comment={cls.comment}")
        if cls.external_equivalents:
            items = sorted(f"{rel}:{target}" for target, rel in cls.external_equivalents)
            parts.append("equiv=" + ",".join(items))
        lines.append(" | ".join(parts))
    for iri in sorted(schema.properties):
        prop = schema.properties[iri]
        lines.append(
            " | ".join(
                [
                    f"PROP <{iri}>",
                    f"kind={prop.kind.value}",
                    f"zh={prop.label_zh}",
                    f"en={prop.label_en}",
                    "domain=" + ",".join(sorted(prop.domains)),
                    f"range={prop.range}",
                ]
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def subclass_closure(schema: OntologySchema, class_iri: str) -> FrozenSet[str]:
    return schema.subclass_closure(class_iri)


def hierarchy_depth(schema: OntologySchema) -> int:
    return schema.hierarchy_depth()


# --- triple validation -------------------------------------------------------


def _literal_matches(range_tag: str, literal: Literal) -> bool:
    if range_tag == DatatypeTag.STRING.value:
        return True
    try:
        if range_tag == DatatypeTag.FLOAT.value:
            float(literal.lexical)
        elif range_tag == DatatypeTag.INTEGER.value:
            int(literal.lexical)
        else:
            return False
    except ValueError:
        return False
    return True


def check_domain_range(
    schema: OntologySchema,
    triple: Triple,
    typing: Mapping[str, Set[str]],
) -> Verdict:
    """Validate one triple against the schema.

    ``typing`` maps IRI -> asserted class IRIs.  Domain/range classes accept
    instances of their subclasses: a type T satisfies class C when C lies in
    T's subclass closure.
    """
    predicate = triple.p.value
    if predicate in BUILTIN_PREDICATES:
        return OK
    prop = schema.properties.get(predicate)
    if prop is None:
        raise UndeclaredPredicateError(f"undeclared predicate: {predicate}")

    subject_types = typing.get(triple.s.value, set())
    if not _types_satisfy(schema, subject_types, prop.domains):
        return violation(
            f"subject {triple.s.value} types {sorted(subject_types)} "
            f"outside domain of {predicate}"
        )

    if prop.kind is PropertyKind.OBJECT:
        if not isinstance(triple.o, Iri):
            return violation(
                f"object property {predicate} requires an IRI object "
                f"of class {prop.range}"
            )
        object_types = typing.get(triple.o.value, set())
        if not _types_satisfy(schema, object_types, {prop.range}):
            return violation(
                f"object {triple.o.value} types {sorted(object_types)} "
                f"outside range {prop.range} of {predicate}"
            )
        return OK

    if not isinstance(triple.o, Literal):
        return violation(f"datatype property {predicate} requires a literal object")
    if not _literal_matches(prop.range, triple.o):
        return violation(
            f"literal {triple.o.lexical!r} does not parse as {prop.range} "
            f"for {predicate}"
        )
    return OK


def _types_satisfy(
    schema: OntologySchema, asserted: Set[str], required: Set[str]
) -> bool:
    for t in asserted:
        if t not in schema.classes:
            continue
        if schema.subclass_closure(t) & required:
            return True
    return False
