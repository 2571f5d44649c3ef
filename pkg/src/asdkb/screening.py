"""Screening-scale catalog, interactive sessions, boundary scoring, and
KB-backed explanations of questions and results."""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .namespaces import property_iri
from .store import Iri, Literal, LiteralTag, TripleStore


class ScreeningError(Exception):
    pass


class UnknownEntityError(ScreeningError):
    pass


class IncompleteSessionError(ScreeningError):
    def __init__(self, unanswered: Sequence[str]):
        self.unanswered = list(unanswered)
        super().__init__(
            "session incomplete; unanswered questions: " + ", ".join(self.unanswered)
        )


class Polarity(str, Enum):
    ASCENDING_RISK = "ascending_risk"
    DESCENDING_RISK = "descending_risk"


class Advice(str, Enum):
    SEEK_PROFESSIONAL_EVALUATION = "seek_professional_evaluation"
    NONE = "none"


@dataclass
class ScreeningTool:
    iri: str
    name: str
    introduction: str
    author: str
    user: Tuple[str, ...]
    age_min: float
    age_max: float
    time_minutes: int
    rule: str
    boundary: float
    polarity: Polarity
    language: str
    questions: List[str]

    def __post_init__(self):
        if self.age_min > self.age_max:
            raise ScreeningError(f"{self.iri}: age_min exceeds age_max")
        if not self.questions:
            raise ScreeningError(f"{self.iri}: tool has no questions")


@dataclass
class ScreeningQuestion:
    iri: str
    text: str
    options: List[str]
    corresponding_symptoms: Set[str] = field(default_factory=set)

    def __post_init__(self):
        if len(self.options) < 2 or len(set(self.options)) != len(self.options):
            raise ScreeningError(f"{self.iri}: needs >= 2 distinct options")


@dataclass
class Option:
    iri: str
    text: str
    score: float
    matched_standards: Set[str] = field(default_factory=set)


@dataclass
class ScreeningSession:
    session_id: str
    tool: str
    answers: Dict[str, str] = field(default_factory=dict)
    created_at: float = field(default_factory=time.time)


@dataclass
class ScreeningResult:
    total: float
    boundary: float
    at_risk: bool
    matched_standards: Set[str]
    advice: Advice


@dataclass
class ScreeningCatalog:
    tools: Dict[str, ScreeningTool]
    questions: Dict[str, ScreeningQuestion]
    options: Dict[str, Option]

    def __post_init__(self):
        for tool in self.tools.values():
            for q in tool.questions:
                if q not in self.questions:
                    raise ScreeningError(f"{tool.iri}: unknown question {q}")
        for question in self.questions.values():
            for o in question.options:
                if o not in self.options:
                    raise ScreeningError(f"{question.iri}: unknown option {o}")


def filter_tools(
    catalog: ScreeningCatalog,
    age: float,
    filler: str,
    language: Optional[str] = None,
) -> List[ScreeningTool]:
    """Tools applicable to the given age and filler role, ordered by name."""
    if age < 0:
        raise ScreeningError("age must be non-negative")
    selected = [
        t
        for t in catalog.tools.values()
        if t.age_min <= age <= t.age_max
        and filler in t.user
        and (language is None or t.language == language)
    ]
    selected.sort(key=lambda t: (t.name, t.iri))
    return selected


def abnormal_extreme(tool: ScreeningTool, question: ScreeningQuestion, catalog: ScreeningCatalog):
    """The option whose score marks the abnormal result for this scale."""
    options = [catalog.options[o] for o in question.options]
    key = max if tool.polarity is Polarity.ASCENDING_RISK else min
    extreme = key(o.score for o in options)
    return next(o for o in options if o.score == extreme)


def normal_extreme(tool: ScreeningTool, question: ScreeningQuestion, catalog: ScreeningCatalog):
    options = [catalog.options[o] for o in question.options]
    key = min if tool.polarity is Polarity.ASCENDING_RISK else max
    extreme = key(o.score for o in options)
    return next(o for o in options if o.score == extreme)


class SessionManager:
    """Session lifecycle with an append-only, replayable session log."""

    def __init__(
        self,
        catalog: ScreeningCatalog,
        store: Optional[TripleStore] = None,
        log_path: Optional[Path] = None,
    ):
        self.catalog = catalog
        self.store = store
        self.log_path = Path(log_path) if log_path else None
        self.sessions: Dict[str, ScreeningSession] = {}
        self._lock = threading.Lock()
        if self.log_path and self.log_path.exists():
            self._replay()

    def _replay(self) -> None:
        with self.log_path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                if event["event"] == "start":
                    self.sessions[event["session"]] = ScreeningSession(
                        session_id=event["session"],
                        tool=event["tool"],
                        created_at=event.get("ts", 0.0),
                    )
                elif event["event"] == "answer":
                    session = self.sessions.get(event["session"])
                    if session is not None:
                        session.answers[event["question"]] = event["option"]

    def _append_log(self, payload: dict) -> None:
        if self.log_path is None:
            return
        with self._lock:
            with self.log_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(payload, ensure_ascii=False) + "\n")

    def start_session(self, tool_iri: str) -> ScreeningSession:
        if tool_iri not in self.catalog.tools:
            raise UnknownEntityError(f"unknown screening tool: {tool_iri}")
        session = ScreeningSession(session_id=uuid.uuid4().hex, tool=tool_iri)
        self.sessions[session.session_id] = session
        self._append_log(
            {
                "event": "start",
                "session": session.session_id,
                "tool": tool_iri,
                "ts": session.created_at,
            }
        )
        return session

    def get(self, session_id: str) -> ScreeningSession:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownEntityError(f"unknown session: {session_id}")
        return session

    def answer(self, session_id: str, question_iri: str, option_iri: str) -> ScreeningSession:
        session = self.get(session_id)
        tool = self.catalog.tools[session.tool]
        if question_iri not in tool.questions:
            raise ScreeningError(
                f"question {question_iri} does not belong to tool {tool.iri}"
            )
        question = self.catalog.questions[question_iri]
        if option_iri not in question.options:
            raise ScreeningError(
                f"option {option_iri} does not belong to question {question_iri}"
            )
        session.answers[question_iri] = option_iri
        self._append_log(
            {
                "event": "answer",
                "session": session_id,
                "question": question_iri,
                "option": option_iri,
            }
        )
        return session

    def score(self, session_id: str) -> ScreeningResult:
        session = self.get(session_id)
        return score_session(self.catalog, session)

    def explain_question(self, question_iri: str) -> List[Dict[str, str]]:
        """Labels/descriptions of the symptoms a question investigates."""
        question = self.catalog.questions.get(question_iri)
        if question is None:
            raise UnknownEntityError(f"unknown question: {question_iri}")
        return [
            self._describe(symptom_iri)
            for symptom_iri in sorted(question.corresponding_symptoms)
        ]

    def explain_result(self, session_id: str) -> List[Dict[str, str]]:
        """(option text, standard description) pairs for the chosen options."""
        session = self.get(session_id)
        self._require_complete(session)
        pairs = []
        for question_iri in self.catalog.tools[session.tool].questions:
            option = self.catalog.options[session.answers[question_iri]]
            for standard_iri in sorted(option.matched_standards):
                description = self._describe(standard_iri)
                pairs.append(
                    {
                        "option": option.iri,
                        "option_text": option.text,
                        "standard": standard_iri,
                        "standard_text": description.get("label_zh", ""),
                    }
                )
        return pairs

    def _require_complete(self, session: ScreeningSession) -> None:
        tool = self.catalog.tools[session.tool]
        unanswered = [q for q in tool.questions if q not in session.answers]
        if unanswered:
            raise IncompleteSessionError(unanswered)

    def _describe(self, iri: str) -> Dict[str, str]:
        info = {"iri": iri}
        if self.store is None:
            return info
        label_prop = Iri(property_iri("Label"))
        intro_prop = Iri(property_iri("Introduction"))
        for triple in self.store.lookup(s=Iri(iri), p=label_prop):
            if isinstance(triple.o, Literal):
                if triple.o.tag is LiteralTag.LANG_EN:
                    info["label_en"] = triple.o.lexical
                else:
                    info["label_zh"] = triple.o.lexical
        for triple in self.store.lookup(s=Iri(iri), p=intro_prop):
            if isinstance(triple.o, Literal) and triple.o.tag is not LiteralTag.LANG_EN:
                info["introduction"] = triple.o.lexical
        return info


def score_session(catalog: ScreeningCatalog, session: ScreeningSession) -> ScreeningResult:
    """Total the chosen option scores and compare against the boundary."""
    tool = catalog.tools[session.tool]
    unanswered = [q for q in tool.questions if q not in session.answers]
    if unanswered:
        raise IncompleteSessionError(unanswered)
    total = 0.0
    matched: Set[str] = set()
    for question_iri in tool.questions:
        option = catalog.options[session.answers[question_iri]]
        total += option.score
        matched |= option.matched_standards
    if tool.polarity is Polarity.ASCENDING_RISK:
        at_risk = total >= tool.boundary
    else:
        at_risk = total <= tool.boundary
    advice = Advice.SEEK_PROFESSIONAL_EVALUATION if at_risk else Advice.NONE
    return ScreeningResult(
        total=total,
        boundary=tool.boundary,
        at_risk=at_risk,
        matched_standards=matched,
        advice=advice,
    )
