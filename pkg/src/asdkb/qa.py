"""Template question answering: pattern registry, slot filling against the
KB label index, query execution, entity-description fallback, and keyword
screening-intent detection."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .namespaces import INSTANCE_NS, RDF_TYPE, property_iri
from .ontology import OntologySchema
from .query import QueryAst, execute, parse_query
from .store import Iri, Literal, LiteralTag, TripleStore
from .textutil import normalize


class QaError(Exception):
    pass


class UnresolvableSlotError(QaError):
    pass


class AnswerKind(str, Enum):
    ENTITY_LIST = "entity_list"
    LITERAL = "literal"
    DESCRIPTION = "description"


class Route(str, Enum):
    PATTERN = "pattern"
    FALLBACK = "fallback"
    NONE = "none"


_SLOT_RE = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")


@dataclass(frozen=True)
class QuestionPattern:
    id: str
    matcher: str
    template: str
    answer_kind: AnswerKind
    slot_types: Mapping[str, str] = field(default_factory=dict)
    example_questions: Tuple[str, ...] = ()

    def __post_init__(self):
        matcher_slots = set(_SLOT_RE.findall(self.matcher))
        template_slots = set(_SLOT_RE.findall(self.template))
        missing = template_slots - matcher_slots
        if missing:
            raise QaError(
                f"pattern {self.id}: template slots {sorted(missing)} "
                "do not appear in the matcher"
            )

    def compile(self) -> re.Pattern:
        out = []
        i = 0
        text = self.matcher
        while i < len(text):
            ch = text[i]
            if ch == "{":
                end = text.index("}", i)
                slot = text[i + 1 : end]
                if self.slot_types.get(slot) == "number":
                    out.append(rf"(?P<{slot}>[0-9]+(?:\.[0-9]+)?)")
                else:
                    out.append(rf"(?P<{slot}>.+)")
                i = end + 1
            elif ch in "()|?":
                out.append(ch)
                i += 1
            else:
                out.append(re.escape(ch))
                i += 1
        try:
            return re.compile("".join(out))
        except re.error as exc:
            raise QaError(f"pattern {self.id}: bad matcher ({exc})")


@dataclass
class QaResult:
    answered: bool
    route: Route
    answer_text: str
    entities: List[str] = field(default_factory=list)
    screening_redirect: bool = False
    pattern_id: Optional[str] = None


def load_patterns(text: str) -> List[QuestionPattern]:
    patterns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise QaError(f"patterns line {lineno}: bad JSON ({exc})")
        patterns.append(
            QuestionPattern(
                id=payload["id"],
                matcher=payload["matcher"],
                template=payload["template"],
                answer_kind=AnswerKind(payload.get("answer_kind", "entity_list")),
                slot_types=payload.get("slot_types", {}),
                example_questions=tuple(payload.get("examples", ())),
            )
        )
    return patterns


def normalize_question(question: str) -> str:
    text = normalize(question)
    return text.strip(" \t？?。．.！!，,、;；:：")


_INDEXED_PROPS = ("Label", "Synonym", "Name")
#: instance kinds excluded from the label index (their texts are long
#: sentences that would shadow real entity mentions)
_EXCLUDED_CLASS_LOCALS = ("ScreeningQuestion", "Option")


class LabelIndex:
    """Normalized label/synonym/name -> instance IRIs, with type filtering."""

    def __init__(self, store: TripleStore, schema: OntologySchema):
        self.schema = schema
        self.types: Dict[str, Set[str]] = {}
        for triple in store.lookup(p=Iri(RDF_TYPE)):
            if isinstance(triple.o, Iri):
                self.types.setdefault(triple.s.value, set()).add(triple.o.value)
        excluded = {self._class_iri(local) for local in _EXCLUDED_CLASS_LOCALS}
        self.labels: Dict[str, Set[str]] = {}
        for prop in _INDEXED_PROPS:
            for triple in store.lookup(p=Iri(property_iri(prop))):
                subject = triple.s.value
                if not subject.startswith(INSTANCE_NS):
                    continue
                if self.types.get(subject, set()) & excluded:
                    continue
                if isinstance(triple.o, Literal) and triple.o.lexical:
                    key = normalize(triple.o.lexical)
                    self.labels.setdefault(key, set()).add(subject)
        self._keys_by_length = sorted(self.labels, key=lambda k: (-len(k), k))

    @staticmethod
    def _class_iri(local: str) -> str:
        from .namespaces import class_iri

        return class_iri(local)

    def _type_ok(self, iri: str, class_local: Optional[str]) -> bool:
        if not class_local:
            return True
        wanted = self._class_iri(class_local)
        for t in self.types.get(iri, set()):
            if t in self.schema.classes and wanted in self.schema.subclass_closure(t):
                return True
        return False

    def resolve(self, label: str, class_local: Optional[str] = None) -> List[str]:
        """IRIs whose label matches exactly (after normalization)."""
        candidates = self.labels.get(normalize(label), set())
        return sorted(i for i in candidates if self._type_ok(i, class_local))

    def find_in(
        self, text: str, class_local: Optional[str] = None
    ) -> Optional[Tuple[str, List[str]]]:
        """Longest indexed label occurring inside `text` (already normalized)."""
        for key in self._keys_by_length:
            if key and key in text:
                iris = sorted(i for i in self.labels[key] if self._type_ok(i, class_local))
                if iris:
                    return key, iris
        return None


@dataclass
class SlotBinding:
    text: str
    is_number: bool = False


class QaEngine:
    def __init__(
        self,
        store: TripleStore,
        schema: OntologySchema,
        patterns: Sequence[QuestionPattern],
        intent_terms: Sequence[str],
    ):
        if not patterns:
            raise QaError("pattern registry is empty")
        self.store = store
        self.schema = schema
        self.patterns = list(patterns)
        self._compiled = [(p, p.compile()) for p in self.patterns]
        self.intent_terms = [normalize(t) for t in intent_terms if t.strip()]
        self.index = LabelIndex(store, schema)

    # -- intent ---------------------------------------------------------------

    def detect_screening_intent(self, question: str) -> bool:
        text = normalize(question)
        return any(term in text for term in self.intent_terms)

    # -- pattern matching -----------------------------------------------------

    def match_pattern(
        self, question: str
    ) -> Optional[Tuple[QuestionPattern, Dict[str, SlotBinding]]]:
        """First registry pattern matching the normalized question.

        Slot captures must resolve against the KB label index (maximal
        contained label) for the pattern to count as a match.
        """
        text = normalize_question(question)
        if not text:
            return None
        for pattern, regex in self._compiled:
            m = regex.search(text)
            if m is None:
                continue
            bindings: Dict[str, SlotBinding] = {}
            ok = True
            for slot, captured in m.groupdict().items():
                if captured is None:
                    ok = False
                    break
                slot_type = pattern.slot_types.get(slot)
                if slot_type == "number":
                    bindings[slot] = SlotBinding(captured, is_number=True)
                    continue
                resolved = self._resolve_capture(captured, slot_type)
                if resolved is None:
                    ok = False
                    break
                bindings[slot] = SlotBinding(resolved)
            if ok:
                return pattern, bindings
        return None

    def _resolve_capture(
        self, captured: str, class_local: Optional[str]
    ) -> Optional[str]:
        captured = captured.strip()
        if self.index.resolve(captured, class_local):
            return captured
        found = self.index.find_in(captured, class_local)
        if found:
            return found[0]
        return None

    # -- instantiation --------------------------------------------------------

    def instantiate(
        self, pattern: QuestionPattern, slots: Mapping[str, SlotBinding]
    ) -> QueryAst:
        """Fill the query template; each entity slot label must resolve."""

        def substitute(m: re.Match) -> str:
            slot = m.group(1)
            binding = slots.get(slot)
            if binding is None:
                raise UnresolvableSlotError(f"slot {slot} is unbound")
            if binding.is_number:
                return binding.text
            iris = self.index.resolve(binding.text, pattern.slot_types.get(slot))
            if not iris:
                raise UnresolvableSlotError(
                    f"slot {slot}: label {binding.text!r} resolves to no entity"
                )
            return f"<{iris[0]}>"

        query_text = _SLOT_RE.sub(substitute, pattern.template)
        return parse_query(query_text)

    # -- descriptions ---------------------------------------------------------

    def labels_of(self, iri: str) -> Dict[str, str]:
        out: Dict[str, str] = {}
        for prop in ("Label", "Name"):
            for triple in self.store.lookup(s=Iri(iri), p=Iri(property_iri(prop))):
                if isinstance(triple.o, Literal):
                    lang = "en" if triple.o.tag is LiteralTag.LANG_EN else "zh"
                    out.setdefault(lang, triple.o.lexical)
        return out

    def _display(self, iri: str) -> str:
        labels = self.labels_of(iri)
        zh = labels.get("zh", "")
        en = labels.get("en", "")
        if zh and en:
            return f"{zh} ({en})"
        return zh or en or iri

    def describe(self, iri: str) -> str:
        parts = [self._display(iri)]
        for triple in self.store.lookup(s=Iri(iri), p=Iri(property_iri("Introduction"))):
            if isinstance(triple.o, Literal) and triple.o.tag is not LiteralTag.LANG_EN:
                parts.append(triple.o.lexical)
                break
        return "：".join(p for p in parts if p)

    # -- answering ------------------------------------------------------------

    def answer_question(self, question: str) -> QaResult:
        redirect = self.detect_screening_intent(question)
        text = normalize_question(question)
        if not text:
            return self._none_result(redirect)
        match = self.match_pattern(question)
        if match is not None:
            pattern, bindings = match
            try:
                ast = self.instantiate(pattern, bindings)
                table = execute(ast, self.store)
            except QaError:
                return self._none_result(redirect)
            return self._format_pattern_answer(pattern, table, redirect)
        found = self.index.find_in(text)
        if found is not None:
            _, iris = found
            iri = iris[0]
            return QaResult(
                answered=True,
                route=Route.FALLBACK,
                answer_text=self.describe(iri),
                entities=[iri],
                screening_redirect=redirect,
            )
        return self._none_result(redirect)

    def _none_result(self, redirect: bool) -> QaResult:
        return QaResult(
            answered=False,
            route=Route.NONE,
            answer_text="抱歉，暂时无法回答这个问题。(Sorry, I cannot answer this question yet.)",
            screening_redirect=redirect,
        )

    def _format_pattern_answer(
        self, pattern: QuestionPattern, table, redirect: bool
    ) -> QaResult:
        primary = table.header[0]
        entities: List[str] = []
        texts: List[str] = []
        seen: Set[str] = set()
        for value in table.column(primary):
            if isinstance(value, Iri):
                if value.value not in seen:
                    seen.add(value.value)
                    entities.append(value.value)
            elif isinstance(value, Literal):
                if value.lexical not in seen:
                    seen.add(value.lexical)
                    texts.append(value.lexical)
        if pattern.answer_kind is AnswerKind.ENTITY_LIST:
            answer = "；".join(self._display(e) for e in entities)
        elif pattern.answer_kind is AnswerKind.LITERAL:
            answer = "；".join(texts) if texts else "；".join(
                self._display(e) for e in entities
            )
        else:
            answer = self.describe(entities[0]) if entities else ""
        answered = bool(entities or texts)
        return QaResult(
            answered=answered,
            route=Route.PATTERN,
            answer_text=answer,
            entities=entities,
            screening_redirect=redirect,
            pattern_id=pattern.id,
        )
