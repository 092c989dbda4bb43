"""HTTP face of the session engine.

JSON conventions: exact quantities (weights, Opt) travel as rational strings,
entropy as a float under `entropy_bits`.  Question payloads carry {kind,
render, ...kind fields} plus an `elements` list when the set is small.

Error mapping: BadDistribution and BadStrategy are 400, UnknownSession 404,
WrongState and InconsistentAnswers 409.  The body is always
{"error": <class name>, "detail": <message>}.
"""

from __future__ import annotations

from typing import Optional

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import Distribution, question_to_json
from .errors import (
    BadDistribution,
    BadStrategy,
    InconsistentAnswers,
    PreconditionViolated,
    QuiztreeError,
    UnknownSession,
    WrongState,
)
from .session import (
    STRATEGY_CATALOG,
    GameSession,
    SessionStore,
    session_answer,
    session_create,
)

__all__ = ["create_app"]

_STATUS_BY_ERROR = {
    BadDistribution: 400,
    BadStrategy: 400,
    PreconditionViolated: 400,
    UnknownSession: 404,
    WrongState: 409,
    InconsistentAnswers: 409,
}


def _turn_view(session: GameSession) -> dict:
    """The part of the state that changes on every answer."""
    stepper = session.stepper
    return {
        "status": session.status,
        "asked": stepper.asked,
        "question": None if stepper.done else question_to_json(stepper.question()),
        "result": stepper.result,
    }


def _session_view(session: GameSession) -> dict:
    view = {
        "id": session.id,
        "n": session.dist.n,
        "strategy": session.strategy,
        "entropy_bits": session.entropy_bits,
        "opt_cost": str(session.opt_cost),
    }
    view.update(_turn_view(session))
    return view


def _full_view(session: GameSession) -> dict:
    view = _session_view(session)
    view["distribution"] = session.dist.to_json()
    view["history"] = [
        {"question": question_to_json(entry.question), "answer": entry.answer}
        for entry in session.entries
    ]
    view["candidates"] = list(session.stepper.candidates())
    return view


def create_app(
    store: Optional[SessionStore] = None, allow_origin: Optional[str] = None
) -> FastAPI:
    """Build the service; `allow_origin` opens CORS for a UI served elsewhere."""
    app = FastAPI(title="quiztree", docs_url=None, redoc_url=None)
    sessions = store if store is not None else SessionStore()

    if allow_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[origin.strip() for origin in allow_origin.split(",")],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(QuiztreeError)
    async def _on_error(request: Request, exc: QuiztreeError) -> JSONResponse:
        return JSONResponse(
            status_code=_STATUS_BY_ERROR.get(type(exc), 400),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.post("/api/session")
    def create_session(body: dict = Body(...)) -> dict:
        dist = Distribution.from_json(body.get("distribution"))
        session = session_create(sessions, dist, body.get("strategy"))
        with session.lock:
            return _session_view(session)

    @app.post("/api/session/{session_id}/answer")
    def post_answer(session_id: str, body: dict = Body(...)) -> dict:
        answer = body.get("answer")
        if not isinstance(answer, bool):
            raise PreconditionViolated('body must be {"answer": true} or {"answer": false}')
        session = session_answer(sessions, session_id, answer)
        with session.lock:
            return _turn_view(session)

    @app.get("/api/session/{session_id}")
    def get_session(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            return _full_view(session)

    @app.get("/api/meta/strategies")
    def get_strategies() -> dict:
        return {"strategies": list(STRATEGY_CATALOG)}

    return app
