"""HTTP service binding the KB modules: query, QA, screening sessions,
expert recommendation, voting, and dereferenceable entity URIs."""

from __future__ import annotations

import html
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .ingest import IngestResult, ingest_all
from .namespaces import CLASS_NS, INSTANCE_NS, PROPERTY_NS
from .qa import QaEngine, load_patterns
from .query import QueryError, parse_query, execute
from .recommend import (
    RecommendError,
    Recommender,
    UnknownDivisionError,
    UnknownPhysicianError,
)
from .resources import fixture_dir, load_word_list, read_data_text
from .screening import (
    IncompleteSessionError,
    ScreeningError,
    SessionManager,
    UnknownEntityError,
    filter_tools,
)
from .store import Iri, canonical_sort_key, serialize_triple

TRIPLE_MEDIA_TYPES = ("application/n-triples", "text/plain")


class ServiceError(Exception):
    pass


@dataclass
class ServiceConfig:
    data_dir: Path = field(default_factory=fixture_dir)
    port: int = 8080
    host: str = "127.0.0.1"
    theta_sym: float = 0.5
    theta_std: float = 0.5
    fallback_k: int = 5
    pattern_file: Optional[Path] = None
    state_dir: Optional[Path] = None

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        if not 1 <= self.port <= 65535:
            raise ServiceError(f"port out of range: {self.port}")
        for name, value in (("theta_sym", self.theta_sym), ("theta_std", self.theta_std)):
            if not 0 <= value <= 1:
                raise ServiceError(f"{name} out of [0,1]: {value}")
        if self.fallback_k < 1:
            raise ServiceError("fallback_k must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        kwargs = {}
        if os.environ.get("ASDKB_DATA_DIR"):
            kwargs["data_dir"] = Path(os.environ["ASDKB_DATA_DIR"])
        if os.environ.get("ASDKB_PORT"):
            kwargs["port"] = int(os.environ["ASDKB_PORT"])
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


@dataclass
class AppState:
    config: ServiceConfig
    kb: IngestResult
    sessions: SessionManager
    recommender: Recommender
    qa_engine: QaEngine


def startup(config: ServiceConfig) -> AppState:
    """Ingest, validate, freeze, replay logs.  Fails fast on violations."""
    kb = ingest_all(
        config.data_dir, theta_sym=config.theta_sym, theta_std=config.theta_std
    )
    if kb.report.violations:
        summary = "; ".join(kb.report.violations[:5])
        raise ServiceError(
            f"ingest reported {len(kb.report.violations)} violation(s): {summary}"
        )
    state_dir = config.state_dir
    if state_dir is not None:
        state_dir = Path(state_dir)
        state_dir.mkdir(parents=True, exist_ok=True)
    sessions = SessionManager(
        kb.catalog,
        store=kb.store,
        log_path=(state_dir / "sessions.log") if state_dir else None,
    )
    recommender = Recommender(
        kb.divisions,
        kb.hospitals,
        kb.physicians,
        vote_log=(state_dir / "votes.log") if state_dir else None,
        fallback_k=config.fallback_k,
    )
    pattern_text = (
        Path(config.pattern_file).read_text(encoding="utf-8")
        if config.pattern_file
        else read_data_text("patterns.jsonl")
    )
    qa_engine = QaEngine(
        kb.store,
        kb.schema,
        load_patterns(pattern_text),
        sorted(load_word_list("intent_lexicon.txt")),
    )
    return AppState(
        config=config,
        kb=kb,
        sessions=sessions,
        recommender=recommender,
        qa_engine=qa_engine,
    )


class QueryRequest(BaseModel):
    query: str


class QaRequest(BaseModel):
    question: str


class SessionCreate(BaseModel):
    tool: str


class AnswerRequest(BaseModel):
    question: str
    option: str


class VoteRequest(BaseModel):
    direction: str


def _tool_json(state: AppState, tool) -> dict:
    return {
        "iri": tool.iri,
        "name": tool.name,
        "introduction": tool.introduction,
        "author": tool.author,
        "user": list(tool.user),
        "age_min": tool.age_min,
        "age_max": tool.age_max,
        "time_minutes": tool.time_minutes,
        "rule": tool.rule,
        "boundary": tool.boundary,
        "polarity": tool.polarity.value,
        "language": tool.language,
        "questions": list(tool.questions),
    }


def _question_json(state: AppState, question_iri: str) -> dict:
    question = state.kb.catalog.questions[question_iri]
    return {
        "iri": question.iri,
        "text": question.text,
        "has_explanation": bool(question.corresponding_symptoms),
        "options": [
            {
                "iri": o.iri,
                "text": o.text,
                "score": o.score,
            }
            for o in (state.kb.catalog.options[oid] for oid in question.options)
        ],
    }


def _physician_json(state: AppState, p) -> dict:
    hospital = state.kb.hospitals[p.work_at]
    return {
        "iri": p.iri,
        "name": p.name,
        "title": p.title,
        "specialty": p.specialty,
        "department": p.department,
        "thumbs_up": p.thumbs_up,
        "thumbs_down": p.thumbs_down,
        "hospital": {
            "iri": hospital.iri,
            "name": hospital.name,
            "address": hospital.address,
            "contact": hospital.contact,
            "level": hospital.level_label,
            "lat": hospital.lat,
            "lng": hospital.lng,
            "division": hospital.division_code,
        },
    }


def _local_to_iri(state: AppState, local_id: str) -> Optional[str]:
    for ns in (INSTANCE_NS, CLASS_NS, PROPERTY_NS):
        iri = ns + local_id
        if state.kb.store.dereference(Iri(iri)):
            return iri
    return None


def _entity_html(state: AppState, iri: str, triples) -> str:
    labels = state.qa_engine.labels_of(iri)
    rows = "\n".join(
        f"<tr><td>{html.escape(t.p.value)}</td>"
        f"<td>{html.escape(serialize_triple(t).split(' ', 2)[2][:-2])}</td></tr>"
        for t in triples
    )
    return f"""<!DOCTYPE html>
<html lang="zh">
<head><meta charset="utf-8"><title>{html.escape(labels.get('zh', iri))}</title></head>
<body>
<h1>{html.escape(labels.get('zh', ''))}</h1>
<p lang="en">{html.escape(labels.get('en', ''))}</p>
<p><code>{html.escape(iri)}</code></p>
<table border="1">{rows}</table>
</body>
</html>"""


def build_app(state: AppState) -> FastAPI:
    app = FastAPI(title="asdkb", version="0.1.0")
    app.state.kb_state = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(UnknownEntityError)
    async def _unknown_entity(_, exc):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(UnknownDivisionError)
    async def _unknown_division(_, exc):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(UnknownPhysicianError)
    async def _unknown_physician(_, exc):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(IncompleteSessionError)
    async def _incomplete(_, exc):
        return JSONResponse(
            status_code=409,
            content={"error": str(exc), "unanswered": exc.unanswered},
        )

    @app.exception_handler(ScreeningError)
    async def _screening_error(_, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(RecommendError)
    async def _recommend_error(_, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "triples": len(state.kb.store),
            "entities": len(state.kb.store.subjects()),
        }

    @app.post("/query")
    def run_query(body: QueryRequest):
        try:
            table = execute(parse_query(body.query), state.kb.store)
        except QueryError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        from .store import serialize_term

        return {
            "header": table.header,
            "rows": [
                [serialize_term(row[v]) for v in table.header] for row in table.rows
            ],
        }

    @app.post("/qa")
    def answer(body: QaRequest):
        result = state.qa_engine.answer_question(body.question)
        return {
            "answered": result.answered,
            "route": result.route.value,
            "answer_text": result.answer_text,
            "entities": result.entities,
            "entity_labels": {
                e: state.qa_engine.labels_of(e) for e in result.entities
            },
            "screening_redirect": result.screening_redirect,
            "pattern_id": result.pattern_id,
        }

    @app.get("/tools")
    def tools(
        age: float = Query(..., ge=0),
        filler: str = Query(...),
        lang: Optional[str] = Query(None),
    ):
        found = filter_tools(state.kb.catalog, age, filler, lang)
        return {"tools": [_tool_json(state, t) for t in found]}

    @app.get("/tools/{local_id}")
    def tool_detail(local_id: str):
        iri = INSTANCE_NS + local_id
        tool = state.kb.catalog.tools.get(iri)
        if tool is None:
            raise HTTPException(status_code=404, detail=f"unknown tool: {local_id}")
        payload = _tool_json(state, tool)
        payload["questions"] = [_question_json(state, q) for q in tool.questions]
        return payload

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        session = state.sessions.start_session(body.tool)
        return {"session_id": session.session_id, "tool": session.tool}

    @app.post("/sessions/{session_id}/answers")
    def answer_question(session_id: str, body: AnswerRequest):
        session = state.sessions.answer(session_id, body.question, body.option)
        return {"session_id": session_id, "answered": len(session.answers)}

    @app.post("/sessions/{session_id}/score")
    def score(session_id: str):
        result = state.sessions.score(session_id)
        explanations = state.sessions.explain_result(session_id)
        return {
            "total": result.total,
            "boundary": result.boundary,
            "at_risk": result.at_risk,
            "advice": result.advice.value,
            "matched_standards": sorted(result.matched_standards),
            "explanations": explanations,
        }

    @app.get("/questions/{local_id}/explanation")
    def question_explanation(local_id: str):
        iri = INSTANCE_NS + local_id
        symptoms = state.sessions.explain_question(iri)
        return {"question": iri, "symptoms": symptoms}

    @app.get("/recommend")
    def recommend(
        province: Optional[str] = None,
        city: Optional[str] = None,
        district: Optional[str] = None,
        k: Optional[int] = Query(None, ge=1),
        fallback: bool = Query(True),
    ):
        code = district or city or province
        if not code:
            raise HTTPException(
                status_code=400, detail="province, city, or district required"
            )
        if fallback:
            physicians, used_fallback = state.recommender.recommend(code, k)
        else:
            physicians = state.recommender.rank(state.recommender.candidates(code))
            used_fallback = False
        return {
            "division": code,
            "fallback": used_fallback,
            "fallback_available": bool(state.kb.hospitals),
            "physicians": [_physician_json(state, p) for p in physicians],
        }

    @app.post("/physicians/{local_id}/vote")
    def vote(local_id: str, body: VoteRequest):
        up, down = state.recommender.vote(INSTANCE_NS + local_id, body.direction)
        return {"physician": INSTANCE_NS + local_id, "thumbs_up": up, "thumbs_down": down}

    @app.get("/divisions")
    def divisions():
        return {"divisions": state.kb.divisions.tree()}

    @app.get("/entity/{local_id}")
    def entity(local_id: str, request: Request):
        iri = _local_to_iri(state, local_id)
        if iri is None:
            raise HTTPException(status_code=404, detail=f"unknown entity: {local_id}")
        triples = sorted(state.kb.store.dereference(Iri(iri)), key=canonical_sort_key)
        accept = request.headers.get("accept", "")
        if any(mt in accept for mt in TRIPLE_MEDIA_TYPES):
            text = "\n".join(serialize_triple(t) for t in triples) + "\n"
            return PlainTextResponse(text, media_type="application/n-triples")
        if "text/html" in accept:
            return HTMLResponse(_entity_html(state, iri, triples))
        return {
            "iri": iri,
            "triples": [serialize_triple(t) for t in triples],
        }

    return app


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    return build_app(startup(config))
