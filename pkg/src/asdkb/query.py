"""Parser and executor for the SELECT-style graph-pattern query language.

Grammar::

    query   := SELECT ?var+ WHERE { pattern ( . pattern )* filter* } ( LIMIT n )?
    pattern := term term term
    term    := <iri> | "literal"(@zh|@en)? | ?var
    filter  := FILTER( ?var op const )      op in  = != < <= > >=
    const   := number | "string"

Execution is conjunctive join with bag semantics; join order picks the
most-bound pattern first.  Result rows are sorted by their serialized
binding tuple before LIMIT so responses are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Union

from .store import Iri, Literal, LiteralTag, Node, TripleStore, serialize_term


class QueryError(Exception):
    """Base class for query failures."""


class QueryParseError(QueryError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"at offset {position}: {message}")


class UnknownVariableError(QueryError):
    """SELECT or FILTER names a variable that occurs in no pattern."""


@dataclass(frozen=True)
class Variable:
    name: str


PatternTerm = Union[Iri, Literal, Variable]

COMPARATORS = ("=", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class TriplePattern:
    s: PatternTerm
    p: PatternTerm
    o: PatternTerm

    def variables(self) -> Set[str]:
        return {t.name for t in (self.s, self.p, self.o) if isinstance(t, Variable)}


@dataclass(frozen=True)
class FilterClause:
    var: str
    op: str
    value: Union[float, str]

    @property
    def is_numeric(self) -> bool:
        return isinstance(self.value, float)


@dataclass
class QueryAst:
    select_vars: List[str]
    patterns: List[TriplePattern]
    filters: List[FilterClause] = field(default_factory=list)
    limit: Optional[int] = None

    def pattern_variables(self) -> Set[str]:
        out: Set[str] = set()
        for p in self.patterns:
            out |= p.variables()
        return out


@dataclass
class ResultTable:
    header: List[str]
    rows: List[Dict[str, Node]]

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, var: str) -> List[Node]:
        return [row[var] for row in self.rows]

    def to_tsv(self) -> str:
        lines = ["\t".join("?" + v for v in self.header)]
        for row in self.rows:
            lines.append("\t".join(serialize_term(row[v]) for v in self.header))
        return "\n".join(lines)


# --- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<keyword>(?i:SELECT|WHERE|FILTER|LIMIT)\b)
  | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<iri><[^<>\s]+>)
  | (?P<string>"(?:[^"\\]|\\.)*"(?:@[A-Za-z-]+)?)
  | (?P<number>-?[0-9]+(?:\.[0-9]+)?)
  | (?P<op><=|>=|!=|=|<|>)
  | (?P<punct>[{}().])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QueryParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup or ""
        if kind != "ws":
            value = m.group()
            if kind == "keyword":
                value = value.upper()
            tokens.append(_Token(kind, value, pos))
        pos = m.end()
    return tokens


_STRING_ESCAPES = {"\\\\": "\\", '\\"': '"', "\\n": "\n", "\\t": "\t", "\\r": "\r"}


def _parse_string_token(token: _Token) -> Literal:
    text = token.text
    lang = None
    if not text.endswith('"'):
        body, _, lang = text.rpartition("@")
    else:
        body = text
    lexical = re.sub(
        r"\\.", lambda m: _STRING_ESCAPES.get(m.group(), m.group()[1]), body[1:-1]
    )
    if lang == "zh":
        return Literal(lexical, LiteralTag.LANG_ZH)
    if lang == "en":
        return Literal(lexical, LiteralTag.LANG_EN)
    if lang:
        raise QueryParseError(f"unsupported language tag @{lang}", token.pos)
    return Literal(lexical, LiteralTag.PLAIN)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.length = len(text)

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise QueryParseError("unexpected end of query", self.length)
        self.i += 1
        return tok

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            expected = text or kind
            raise QueryParseError(f"expected {expected}, got {tok.text!r}", tok.pos)
        return tok

    def parse(self) -> QueryAst:
        self.expect("keyword", "SELECT")
        select_vars = []
        while self.peek() and self.peek().kind == "var":
            select_vars.append(self.next().text[1:])
        if not select_vars:
            tok = self.peek()
            raise QueryParseError(
                "SELECT needs at least one ?variable", tok.pos if tok else self.length
            )
        self.expect("keyword", "WHERE")
        self.expect("punct", "{")
        patterns = [self.parse_pattern()]
        while self.peek() and self.peek().text == ".":
            self.next()
            # trailing separator before FILTER or '}' is tolerated
            if self.peek() and (self.peek().text == "FILTER" or self.peek().text == "}"):
                break
            patterns.append(self.parse_pattern())
        filters = []
        while self.peek() and self.peek().text == "FILTER":
            filters.append(self.parse_filter())
        self.expect("punct", "}")
        limit = None
        if self.peek() and self.peek().text == "LIMIT":
            self.next()
            tok = self.expect("number")
            if "." in tok.text or int(tok.text) <= 0:
                raise QueryParseError("LIMIT expects a positive integer", tok.pos)
            limit = int(tok.text)
        trailing = self.peek()
        if trailing is not None:
            raise QueryParseError(f"trailing input {trailing.text!r}", trailing.pos)
        ast = QueryAst(select_vars, patterns, filters, limit)
        _validate_variables(ast)
        return ast

    def parse_pattern(self) -> TriplePattern:
        return TriplePattern(self.parse_term(), self.parse_term(), self.parse_term())

    def parse_term(self) -> PatternTerm:
        tok = self.next()
        if tok.kind == "var":
            return Variable(tok.text[1:])
        if tok.kind == "iri":
            return Iri(tok.text[1:-1])
        if tok.kind == "string":
            return _parse_string_token(tok)
        raise QueryParseError(f"expected term, got {tok.text!r}", tok.pos)

    def parse_filter(self) -> FilterClause:
        self.expect("keyword", "FILTER")
        self.expect("punct", "(")
        var_tok = self.expect("var")
        op_tok = self.next()
        if op_tok.kind != "op":
            raise QueryParseError(f"expected comparator, got {op_tok.text!r}", op_tok.pos)
        value_tok = self.next()
        value: Union[float, str]
        if value_tok.kind == "number":
            value = float(value_tok.text)
        elif value_tok.kind == "string":
            value = _parse_string_token(value_tok).lexical
        else:
            raise QueryParseError(
                f"expected constant, got {value_tok.text!r}", value_tok.pos
            )
        self.expect("punct", ")")
        return FilterClause(var_tok.text[1:], op_tok.text, value)


def _validate_variables(ast: QueryAst) -> None:
    bound = ast.pattern_variables()
    for v in ast.select_vars:
        if v not in bound:
            raise UnknownVariableError(f"SELECT variable ?{v} occurs in no pattern")
    for f in ast.filters:
        if f.var not in bound:
            raise UnknownVariableError(f"FILTER variable ?{f.var} occurs in no pattern")


def parse_query(text: str) -> QueryAst:
    return _Parser(text).parse()


# --- execution ---------------------------------------------------------------


def _bound_positions(pattern: TriplePattern, bound_vars: Set[str]) -> int:
    n = 0
    for term in (pattern.s, pattern.p, pattern.o):
        if not isinstance(term, Variable) or term.name in bound_vars:
            n += 1
    return n


def _match_pattern(
    store: TripleStore, pattern: TriplePattern, binding: Dict[str, Node]
) -> Iterable[Dict[str, Node]]:
    def resolve(term: PatternTerm) -> Optional[Node]:
        if isinstance(term, Variable):
            return binding.get(term.name)
        return term

    s, p, o = resolve(pattern.s), resolve(pattern.p), resolve(pattern.o)
    if s is not None and not isinstance(s, Iri):
        return  # literal in subject position can never match
    if p is not None and not isinstance(p, Iri):
        return
    for triple in store.lookup(s, p, o):
        extended = dict(binding)
        consistent = True
        for term, value in ((pattern.s, triple.s), (pattern.p, triple.p), (pattern.o, triple.o)):
            if isinstance(term, Variable):
                existing = extended.get(term.name)
                if existing is None:
                    extended[term.name] = value
                elif existing != value:
                    consistent = False
                    break
        if consistent:
            yield extended


def _row_sort_key(row: Dict[str, Node], header: Sequence[str]):
    return tuple(serialize_term(row[v]).encode("utf-8") for v in header)


class _NodeKeyCache:
    """Per-query memo of serialized byte keys; terms repeat across rows."""

    __slots__ = ("cache",)

    def __init__(self):
        self.cache: Dict[Node, bytes] = {}

    def key(self, node: Node) -> bytes:
        cached = self.cache.get(node)
        if cached is None:
            cached = serialize_term(node).encode("utf-8")
            self.cache[node] = cached
        return cached


def _apply_filter(row: Dict[str, Node], clause: FilterClause) -> bool:
    value = row[clause.var]
    if not isinstance(value, Literal):
        return False
    if clause.is_numeric:
        actual = value.numeric_value
        if actual is None:
            return False
        expected = clause.value
    else:
        actual = value.lexical
        expected = clause.value
    return {
        "=": actual == expected,
        "!=": actual != expected,
        "<": actual < expected,
        "<=": actual <= expected,
        ">": actual > expected,
        ">=": actual >= expected,
    }[clause.op]


def execute(ast: QueryAst, store: TripleStore) -> ResultTable:
    """Evaluate a query: join patterns, filter, project, sort, limit."""
    remaining = list(ast.patterns)
    rows: List[Dict[str, Node]] = [{}]
    bound_vars: Set[str] = set()
    while remaining:
        remaining.sort(key=lambda p: -_bound_positions(p, bound_vars))
        pattern = remaining.pop(0)
        rows = [
            extended for binding in rows for extended in _match_pattern(store, pattern, binding)
        ]
        bound_vars |= pattern.variables()
        if not rows:
            break
    for clause in ast.filters:
        rows = [row for row in rows if _apply_filter(row, clause)]
    keys = _NodeKeyCache()
    projected = [{v: row[v] for v in ast.select_vars} for row in rows]
    projected.sort(
        key=lambda row: tuple(keys.key(row[v]) for v in ast.select_vars)
    )
    if ast.limit is not None:
        projected = projected[: ast.limit]
    return ResultTable(list(ast.select_vars), projected)


def run_query(text: str, store: TripleStore) -> ResultTable:
    return execute(parse_query(text), store)
