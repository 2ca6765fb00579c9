"""JSON protocol hosting for elicitation sessions.

The same five operations are exposed two ways: an HTTP app (FastAPI)
and a line-delimited JSON loop over stdio.  Sessions live in process
memory; each is stepped under its own lock so one pending query exists
at a time.
"""

import json
import logging
import sys
import threading

from .errors import CardinalScaleError
from .session import (
    AWAITING,
    COMPLETE,
    FAILED,
    Session,
    SessionConfig,
    create_session,
    current_estimate,
    next_query,
    submit_answer,
)

log = logging.getLogger("cardinal_scale.service")

_HTTP_STATUS = {
    "BadConfig": 422,
    "SchemaError": 422,
    "StaleQuery": 409,
    "SessionComplete": 409,
    "SessionFailed": 409,
    "TooEarly": 409,
}


class UnknownSession(KeyError):
    pass


class SessionStore:
    """Thread-safe registry of live sessions."""

    def __init__(self) -> None:
        self._guard = threading.Lock()
        self._items: dict[str, tuple[Session, threading.Lock]] = {}

    def add(self, session: Session) -> str:
        with self._guard:
            self._items[session.id] = (session, threading.Lock())
        return session.id

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            try:
                return self._items[session_id]
            except KeyError:
                raise UnknownSession(session_id) from None


# ---------------------------------------------------------------------------
# Protocol operations (shared by HTTP and stdio)
# ---------------------------------------------------------------------------


def _op_create(store: SessionStore, config_data: dict) -> dict:
    config = SessionConfig.from_dict(config_data or {})
    session = create_session(config)
    store.add(session)
    log.info("session %s created (budget %d)", session.id, session.query_budget)
    payload = {
        "session_id": session.id,
        "status": session.status,
        "query_budget": session.query_budget,
        "first_query": session.pending.to_dict() if session.pending else None,
    }
    if session.status == FAILED:
        payload["failure"] = session.failure
    return payload


def _op_query(store: SessionStore, session_id: str) -> dict:
    session, lock = store.get(session_id)
    with lock:
        return next_query(session).to_dict()


def _op_answer(store: SessionStore, session_id: str, query_id, answer) -> dict:
    session, lock = store.get(session_id)
    with lock:
        submit_answer(session, query_id, answer)
        payload: dict = {
            "status": session.status,
            "next_query": session.pending.to_dict() if session.pending else None,
        }
        if session.status == FAILED:
            payload["failure"] = session.failure
        log.info(
            "session %s answer to query %s -> %s",
            session_id,
            query_id,
            session.status,
        )
        return payload


def _op_utility(store: SessionStore, session_id: str) -> dict:
    session, lock = store.get(session_id)
    with lock:
        return current_estimate(session).to_json_dict()


def _op_log(store: SessionStore, session_id: str) -> dict:
    session, lock = store.get(session_id)
    with lock:
        return {
            "session_id": session.id,
            "status": session.status,
            "config": session.config.to_dict(),
            "entries": list(session.answered),
            "warnings": list(session.warnings),
            "failure": session.failure,
        }


# ---------------------------------------------------------------------------
# HTTP app
# ---------------------------------------------------------------------------


def create_app(store: SessionStore | None = None):
    from fastapi import FastAPI, Request
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse

    store = store or SessionStore()
    app = FastAPI(title="cardinal-scale elicitation service")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def error_response(exc: Exception) -> JSONResponse:
        if isinstance(exc, UnknownSession):
            return JSONResponse(
                status_code=404,
                content={"error": "UnknownSession", "detail": str(exc)},
            )
        name = type(exc).__name__
        return JSONResponse(
            status_code=_HTTP_STATUS.get(name, 400),
            content={"error": name, "detail": str(exc)},
        )

    @app.post("/sessions", status_code=201)
    async def post_sessions(request: Request):
        try:
            body = await request.json()
        except Exception:
            body = {}
        if not isinstance(body, dict):
            body = {}
        config_data = body.get("config", body)
        try:
            return _op_create(store, config_data)
        except CardinalScaleError as exc:
            return error_response(exc)

    @app.get("/sessions/{session_id}/query")
    async def get_query(session_id: str):
        try:
            return _op_query(store, session_id)
        except (CardinalScaleError, UnknownSession) as exc:
            return error_response(exc)

    @app.post("/sessions/{session_id}/answer")
    async def post_answer(session_id: str, request: Request):
        try:
            body = await request.json()
        except Exception:
            body = {}
        if not isinstance(body, dict):
            body = {}
        try:
            return _op_answer(store, session_id, body.get("query_id"), body.get("answer"))
        except (CardinalScaleError, UnknownSession) as exc:
            return error_response(exc)

    @app.get("/sessions/{session_id}/utility")
    async def get_utility(session_id: str):
        try:
            return _op_utility(store, session_id)
        except (CardinalScaleError, UnknownSession) as exc:
            return error_response(exc)

    @app.get("/sessions/{session_id}/log")
    async def get_log(session_id: str):
        try:
            return _op_log(store, session_id)
        except (CardinalScaleError, UnknownSession) as exc:
            return error_response(exc)

    return app


def run_http(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


# ---------------------------------------------------------------------------
# stdio loop
# ---------------------------------------------------------------------------


def handle_stdio_request(store: SessionStore, request: dict) -> dict:
    """Dispatch one stdio request; errors become {"ok": false, ...}."""
    try:
        op = request.get("op")
        if op == "create":
            result = _op_create(store, request.get("config") or {})
        elif op == "query":
            result = _op_query(store, request["session_id"])
        elif op == "answer":
            result = _op_answer(
                store,
                request["session_id"],
                request.get("query_id"),
                request.get("answer"),
            )
        elif op == "utility":
            result = _op_utility(store, request["session_id"])
        elif op == "log":
            result = _op_log(store, request["session_id"])
        else:
            return {"ok": False, "error": "SchemaError", "detail": f"unknown op {op!r}"}
    except UnknownSession as exc:
        return {"ok": False, "error": "UnknownSession", "detail": str(exc)}
    except KeyError as missing:
        return {"ok": False, "error": "SchemaError", "detail": f"missing field {missing}"}
    except CardinalScaleError as exc:
        return {"ok": False, "error": type(exc).__name__, "detail": str(exc)}
    return {"ok": True, "result": result}


def serve_stdio(input_stream=None, output_stream=None) -> None:
    """Serve line-delimited JSON requests until EOF."""
    input_stream = input_stream or sys.stdin
    output_stream = output_stream or sys.stdout
    store = SessionStore()
    for line in input_stream:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as bad:
            response = {"ok": False, "error": "SchemaError", "detail": f"bad JSON: {bad}"}
        else:
            if not isinstance(request, dict):
                response = {
                    "ok": False,
                    "error": "SchemaError",
                    "detail": "request must be a JSON object",
                }
            else:
                response = handle_stdio_request(store, request)
        print(json.dumps(response), file=output_stream, flush=True)
