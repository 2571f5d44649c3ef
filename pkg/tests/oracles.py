"""Independent reference implementations used to pin expected values.

Everything here deliberately avoids the production code paths: full scans
instead of indexes, pairwise closure instead of union-find, the spherical
law of cosines instead of the haversine formula, and an explicit
comparator instead of a sort key.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from asdkb.query import FilterClause, QueryAst, TriplePattern, Variable
from asdkb.store import Iri, Literal, LiteralTag, Triple


# --- store lookup ------------------------------------------------------------


def scan_lookup(triples, s=None, p=None, o=None):
    return [
        t
        for t in triples
        if (s is None or t.s == s) and (p is None or t.p == p) and (o is None or t.o == o)
    ]


# --- nested-loop query evaluation ---------------------------------------------


def _pattern_scan(pattern: TriplePattern, triples, rows):
    """One join step: scan the full triple list for every row, no indexes.

    Constants are checked in a single linear pre-filter; per-row work only
    re-checks variable positions, so the evaluation stays naive but does
    not copy bindings for non-matching triples.
    """
    terms = (pattern.s, pattern.p, pattern.o)
    names = tuple(t.name if isinstance(t, Variable) else None for t in terms)
    candidates = [
        t
        for t in triples
        if (names[0] is not None or pattern.s == t.s)
        and (names[1] is not None or pattern.p == t.p)
        and (names[2] is not None or pattern.o == t.o)
    ]
    out = []
    for row in rows:
        bound = tuple(row.get(n) if n is not None else None for n in names)
        b0, b1, b2 = bound
        n0, n1, n2 = names
        for t in candidates:
            v0, v1, v2 = t.s, t.p, t.o
            if b0 is not None and v0 != b0:
                continue
            if b1 is not None and v1 != b1:
                continue
            if b2 is not None and v2 != b2:
                continue
            # repeated still-unbound variables inside one pattern
            if n0 is not None and b0 is None:
                if n0 == n1 and b1 is None and v0 != v1:
                    continue
                if n0 == n2 and b2 is None and v0 != v2:
                    continue
            if n1 is not None and b1 is None and n1 == n2 and b2 is None and v1 != v2:
                continue
            extended = dict(row)
            if n0 is not None:
                extended[n0] = v0
            if n1 is not None:
                extended[n1] = v1
            if n2 is not None:
                extended[n2] = v2
            out.append(extended)
    return out


def _filter_ok(row: dict, clause: FilterClause) -> bool:
    value = row[clause.var]
    if not isinstance(value, Literal):
        return False
    if isinstance(clause.value, float):
        if value.tag not in (LiteralTag.TYPED_FLOAT, LiteralTag.TYPED_INTEGER):
            return False
        left = float(value.lexical)
    else:
        left = value.lexical
    right = clause.value
    if clause.op == "=":
        return left == right
    if clause.op == "!=":
        return left != right
    if clause.op == "<":
        return left < right
    if clause.op == "<=":
        return left <= right
    if clause.op == ">":
        return left > right
    return left >= right


def intern_map(triples) -> Dict[object, int]:
    """node -> small int, for cheap multiset comparisons in tests."""
    mapping: Dict[object, int] = {}
    for t in triples:
        for node in (t.s, t.p, t.o):
            if node not in mapping:
                mapping[node] = len(mapping)
    return mapping


def nested_loop_execute(
    ast: QueryAst, triples: Sequence[Triple], interner: Optional[Dict] = None
) -> Counter:
    """Row multiset of the query evaluated naively, LIMIT ignored."""
    rows = [{}]
    for pattern in ast.patterns:
        rows = _pattern_scan(pattern, triples, rows)
        if not rows:
            break
    rows = [r for r in rows if all(_filter_ok(r, f) for f in ast.filters)]
    if interner is None:
        return Counter(tuple(r[v] for v in ast.select_vars) for r in rows)
    return Counter(
        tuple(interner[r[v]] for v in ast.select_vars) for r in rows
    )


def result_multiset(table, interner: Optional[Dict] = None) -> Counter:
    if interner is None:
        return Counter(tuple(row[v] for v in table.header) for row in table.rows)
    return Counter(
        tuple(interner[row[v]] for v in table.header) for row in table.rows
    )


# --- random store / query generation -------------------------------------------


def random_triple(rng, n_entities=40, n_preds=8) -> Triple:
    def entity():
        return Iri(f"http://w3id.org/asdkb/instance/e{rng.randrange(n_entities)}")

    obj_kind = rng.random()
    if obj_kind < 0.55:
        obj = entity()
    elif obj_kind < 0.7:
        obj = Literal(f"v{rng.randrange(8)}")
    elif obj_kind < 0.8:
        obj = Literal(f"文{rng.randrange(4)}", LiteralTag.LANG_ZH)
    elif obj_kind < 0.9:
        obj = Literal(str(rng.randrange(50)), LiteralTag.TYPED_INTEGER)
    else:
        obj = Literal(f"{rng.randrange(50)}.5", LiteralTag.TYPED_FLOAT)
    return Triple(
        entity(),
        Iri(f"http://w3id.org/asdkb/ontology/property/p{rng.randrange(n_preds)}"),
        obj,
    )


def random_store_triples(rng, size) -> List[Triple]:
    # dict, not set: insertion order keeps the result independent of
    # per-process hash randomization, so seeded runs are reproducible
    seen: Dict[Triple, None] = {}
    while len(seen) < size:
        seen.setdefault(random_triple(rng), None)
    return list(seen)


def random_query(rng, triples: Sequence[Triple], selective: bool = False) -> QueryAst:
    """A 1-3 pattern conjunctive query abstracted from actual store triples.

    ``selective`` keeps every predicate position constant, bounding the
    intermediate row counts on large stores.
    """
    n_patterns = rng.choice([1, 1, 2, 2, 3])
    var_names = iter("abcdefghi")
    patterns: List[TriplePattern] = []
    bound_values: Dict[object, Variable] = {}

    def abstract(value, keep_prob):
        if value in bound_values and rng.random() < 0.7:
            return bound_values[value]
        if rng.random() < keep_prob:
            return value
        var = Variable(next(var_names))
        bound_values.setdefault(value, var)
        return var

    for k in range(n_patterns):
        base = rng.choice(triples)
        if k > 0 and bound_values and rng.random() < 0.8:
            # bias toward a triple that can share a join value
            shared = rng.choice(list(bound_values.keys()))
            candidates = [
                t for t in triples if shared in (t.s, t.p, t.o)
            ]
            if candidates:
                base = rng.choice(candidates)
        patterns.append(
            TriplePattern(
                abstract(base.s, keep_prob=0.3),
                abstract(base.p, keep_prob=1.0 if selective else 0.85),
                abstract(base.o, keep_prob=0.4),
            )
        )
    all_vars = sorted({v for p in patterns for v in p.variables()})
    if not all_vars:
        # force at least one variable by abstracting the first subject
        first = patterns[0]
        var = Variable(next(var_names))
        patterns[0] = TriplePattern(var, first.p, first.o)
        all_vars = [var.name]
    select_vars = rng.sample(all_vars, k=rng.randint(1, len(all_vars)))
    filters = []
    if rng.random() < 0.35:
        var = rng.choice(all_vars)
        op = rng.choice(["=", "!=", "<", "<=", ">", ">="])
        if rng.random() < 0.6:
            filters.append(FilterClause(var, op, float(rng.randrange(50))))
        else:
            filters.append(FilterClause(var, op, f"v{rng.randrange(8)}"))
    return QueryAst(select_vars, patterns, filters, None)


# --- pairwise-closure record fusion -------------------------------------------


def closure_partition(ids: Sequence[str], related) -> List[List[str]]:
    """Connected components of the pairwise relation, brute force."""
    ids = list(ids)
    adjacency = {i: set() for i in ids}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if related(a, b):
                adjacency[a].add(b)
                adjacency[b].add(a)
    seen = set()
    components = []
    for start in ids:
        if start in seen:
            continue
        stack, comp = [start], []
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            comp.append(cur)
            stack.extend(adjacency[cur])
        components.append(sorted(comp))
    return sorted(components)


# --- distance -----------------------------------------------------------------


def law_of_cosines_km(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    lat1, lng1 = map(math.radians, a)
    lat2, lng2 = map(math.radians, b)
    cos_angle = math.sin(lat1) * math.sin(lat2) + math.cos(lat1) * math.cos(lat2) * math.cos(
        lng2 - lng1
    )
    return 6371.0 * math.acos(max(-1.0, min(1.0, cos_angle)))


# --- three-key physician comparator --------------------------------------------


def rank_oracle(physicians, hospitals) -> list:
    def compare(a, b):
        if a.title_rank != b.title_rank:
            return -1 if a.title_rank > b.title_rank else 1
        la = hospitals[a.work_at].level_rank
        lb = hospitals[b.work_at].level_rank
        if la != lb:
            return -1 if la > lb else 1
        na = a.thumbs_up - a.thumbs_down
        nb = b.thumbs_up - b.thumbs_down
        if na != nb:
            return -1 if na > nb else 1
        if a.name != b.name:
            return -1 if a.name.encode("utf-8") < b.name.encode("utf-8") else 1
        if a.iri != b.iri:
            return -1 if a.iri.encode("utf-8") < b.iri.encode("utf-8") else 1
        return 0

    return sorted(physicians, key=cmp_to_key(compare))
