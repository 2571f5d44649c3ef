"""Indexed triple store with an N-Triples subset parser and canonical serializer.

The store keeps deduplicated (subject, predicate, object) triples and three
orderings (SPO, POS, OSP) so that any lookup pattern is answered from an
index instead of a full scan.  Stores are built during ingest and then
frozen; a frozen store is immutable and safe to share between request
handlers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Set, Union

from .namespaces import XSD_FLOAT, XSD_INTEGER


class StoreError(Exception):
    """Base class for store failures."""


class TripleParseError(StoreError):
    """Syntax error in a triple dump, with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}: {message}")


class FrozenStoreError(StoreError):
    """Raised on mutation of a frozen store."""


class LiteralTag(str, Enum):
    LANG_ZH = "lang_zh"
    LANG_EN = "lang_en"
    TYPED_FLOAT = "typed_float"
    TYPED_INTEGER = "typed_integer"
    PLAIN = "plain"


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise StoreError("IRI must be non-empty")
        if any(c.isspace() for c in self.value):
            raise StoreError(f"IRI contains whitespace: {self.value!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    tag: LiteralTag = LiteralTag.PLAIN

    def __post_init__(self):
        if self.tag is LiteralTag.TYPED_FLOAT:
            try:
                v = float(self.lexical)
            except ValueError:
                raise StoreError(f"not a float literal: {self.lexical!r}")
            if not math.isfinite(v):
                raise StoreError(f"non-finite float literal: {self.lexical!r}")
        elif self.tag is LiteralTag.TYPED_INTEGER:
            try:
                int(self.lexical)
            except ValueError:
                raise StoreError(f"not an integer literal: {self.lexical!r}")

    @property
    def numeric_value(self) -> Optional[float]:
        if self.tag in (LiteralTag.TYPED_FLOAT, LiteralTag.TYPED_INTEGER):
            return float(self.lexical)
        return None


Node = Union[Iri, Literal]


@dataclass(frozen=True)
class Triple:
    s: Iri
    p: Iri
    o: Node


def zh(text: str) -> Literal:
    return Literal(text, LiteralTag.LANG_ZH)


def en(text: str) -> Literal:
    return Literal(text, LiteralTag.LANG_EN)


def typed_float(value: float) -> Literal:
    return Literal(format(float(value), "g"), LiteralTag.TYPED_FLOAT)


def typed_integer(value: int) -> Literal:
    return Literal(str(int(value)), LiteralTag.TYPED_INTEGER)


# --- escaping ----------------------------------------------------------------

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}


def escape_lexical(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def serialize_term(term: Node) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    lex = escape_lexical(term.lexical)
    if term.tag is LiteralTag.LANG_ZH:
        return f'"{lex}"@zh'
    if term.tag is LiteralTag.LANG_EN:
        return f'"{lex}"@en'
    if term.tag is LiteralTag.TYPED_FLOAT:
        return f'"{lex}"^^<{XSD_FLOAT}>'
    if term.tag is LiteralTag.TYPED_INTEGER:
        return f'"{lex}"^^<{XSD_INTEGER}>'
    return f'"{lex}"'


def serialize_triple(t: Triple) -> str:
    return f"{serialize_term(t.s)} {serialize_term(t.p)} {serialize_term(t.o)} ."


# --- parsing -----------------------------------------------------------------


class _LineScanner:
    """Single-line scanner for the N-Triples subset."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, message: str) -> TripleParseError:
        return TripleParseError(message, self.lineno, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def read_iri(self) -> Iri:
        self.expect("<")
        end = self.text.find(">", self.pos)
        if end < 0:
            raise self.error("unterminated IRI (missing '>')")
        value = self.text[self.pos : end]
        self.pos = end + 1
        try:
            return Iri(value)
        except StoreError as exc:
            raise self.error(str(exc))

    def read_string(self) -> str:
        self.expect('"')
        out: List[str] = []
        while True:
            if self.at_end():
                raise self.error("unterminated string")
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                return "".join(out)
            if ch == "\\":
                self.pos += 1
                if self.at_end():
                    raise self.error("dangling escape at end of line")
                esc = self.text[self.pos]
                if esc in _UNESCAPES:
                    out.append(_UNESCAPES[esc])
                    self.pos += 1
                elif esc == "u":
                    hexpart = self.text[self.pos + 1 : self.pos + 5]
                    if len(hexpart) < 4:
                        raise self.error("truncated \\u escape")
                    try:
                        out.append(chr(int(hexpart, 16)))
                    except ValueError:
                        raise self.error(f"bad \\u escape: \\u{hexpart}")
                    self.pos += 5
                else:
                    raise self.error(f"unsupported escape: \\{esc}")
            else:
                out.append(ch)
                self.pos += 1

    def read_object(self) -> Node:
        if self.peek() == "<":
            return self.read_iri()
        if self.peek() != '"':
            raise self.error("expected IRI or literal object")
        lexical = self.read_string()
        if self.peek() == "@":
            self.pos += 1
            lang = ""
            while not self.at_end() and (self.peek().isalnum() or self.peek() == "-"):
                lang += self.text[self.pos]
                self.pos += 1
            if lang == "zh":
                return Literal(lexical, LiteralTag.LANG_ZH)
            if lang == "en":
                return Literal(lexical, LiteralTag.LANG_EN)
            raise self.error(f"unsupported language tag: @{lang}")
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dt = self.read_iri()
            if dt.value == XSD_FLOAT:
                tag = LiteralTag.TYPED_FLOAT
            elif dt.value == XSD_INTEGER:
                tag = LiteralTag.TYPED_INTEGER
            else:
                raise self.error(f"unsupported datatype: {dt.value}")
            try:
                return Literal(lexical, tag)
            except StoreError as exc:
                raise self.error(str(exc))
        return Literal(lexical, LiteralTag.PLAIN)


def parse_triple_line(line: str, lineno: int = 1) -> Triple:
    sc = _LineScanner(line, lineno)
    sc.skip_ws()
    s = sc.read_iri()
    sc.skip_ws()
    p = sc.read_iri()
    sc.skip_ws()
    o = sc.read_object()
    sc.skip_ws()
    if sc.peek() != ".":
        raise sc.error("expected terminating '.'")
    sc.pos += 1
    sc.skip_ws()
    if not sc.at_end():
        raise sc.error("trailing content after '.'")
    return Triple(s, p, o)


def parse_ntriples(text: str) -> List[Triple]:
    """Parse a triple dump (one triple per line, '#' comments, blank lines).

    Lines are delimited by '\\n' only; other Unicode line separators may
    occur raw inside literals.
    """
    triples = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip(" \t\r")
        if not line or line.startswith("#"):
            continue
        triples.append(parse_triple_line(line, lineno))
    return triples


def canonical_sort_key(t: Triple):
    return (
        t.s.value.encode("utf-8"),
        t.p.value.encode("utf-8"),
        serialize_term(t.o).encode("utf-8"),
    )


# --- the store ---------------------------------------------------------------


@dataclass
class TripleStore:
    _triples: Set[Triple] = field(default_factory=set)
    _spo: Dict[Iri, Dict[Iri, Set[Node]]] = field(default_factory=dict)
    _pos: Dict[Iri, Dict[Node, Set[Iri]]] = field(default_factory=dict)
    _osp: Dict[Node, Dict[Iri, Set[Iri]]] = field(default_factory=dict)
    _frozen: bool = False

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "TripleStore":
        self._frozen = True
        return self

    def insert(self, triple: Triple) -> None:
        if self._frozen:
            raise FrozenStoreError("store is frozen")
        if triple in self._triples:
            return
        self._triples.add(triple)
        self._spo.setdefault(triple.s, {}).setdefault(triple.p, set()).add(triple.o)
        self._pos.setdefault(triple.p, {}).setdefault(triple.o, set()).add(triple.s)
        self._osp.setdefault(triple.o, {}).setdefault(triple.s, set()).add(triple.p)

    def add(self, s: Iri, p: Iri, o: Node) -> None:
        self.insert(Triple(s, p, o))

    def lookup(
        self,
        s: Optional[Iri] = None,
        p: Optional[Iri] = None,
        o: Optional[Node] = None,
    ) -> Iterator[Triple]:
        """Yield the triples matching every bound position."""
        if s is not None and p is not None and o is not None:
            t = Triple(s, p, o)
            if t in self._triples:
                yield t
        elif s is not None and p is not None:
            for obj in self._spo.get(s, {}).get(p, ()):
                yield Triple(s, p, obj)
        elif s is not None and o is not None:
            for pred in self._osp.get(o, {}).get(s, ()):
                yield Triple(s, pred, o)
        elif p is not None and o is not None:
            for subj in self._pos.get(p, {}).get(o, ()):
                yield Triple(subj, p, o)
        elif s is not None:
            for pred, objs in self._spo.get(s, {}).items():
                for obj in objs:
                    yield Triple(s, pred, obj)
        elif p is not None:
            for obj, subjs in self._pos.get(p, {}).items():
                for subj in subjs:
                    yield Triple(subj, p, obj)
        elif o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
        else:
            yield from self._triples

    def count_matches(
        self,
        s: Optional[Iri] = None,
        p: Optional[Iri] = None,
        o: Optional[Node] = None,
    ) -> int:
        return sum(1 for _ in self.lookup(s, p, o))

    def dereference(self, iri: Iri) -> List[Triple]:
        """All triples with `iri` as subject; empty when unknown."""
        return list(self.lookup(s=iri))

    def subjects(self) -> Set[Iri]:
        return set(self._spo.keys())

    def export_canonical(self) -> str:
        """Serialize all triples sorted by (s, p, o) byte order."""
        ordered = sorted(self._triples, key=canonical_sort_key)
        lines = [serialize_triple(t) for t in ordered]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_triples(cls, triples) -> "TripleStore":
        store = cls()
        for t in triples:
            store.insert(t)
        return store

    @classmethod
    def from_ntriples(cls, text: str) -> "TripleStore":
        return cls.from_triples(parse_ntriples(text))
