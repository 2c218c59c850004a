"""HTTP API: one session per use-case analysis, staged like the CLI.

Stages build on each other — rules, use-case lines, extraction, types,
ontology, then queries and pattern matching. Writing to an earlier stage
invalidates everything downstream of it. Requests that skip a stage get a
409 with ``{"error": {"code": "StageError", ...}}``; all error bodies
carry ``code`` and ``message`` (plus ``line``/``column`` when the input
has a position). Sessions are held in memory and dropped after an hour
without a request.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .catalog import PatternQuery, match_patterns
from .ontology import (
    Ontology,
    OntologyError,
    Triple,
    UntypedIndividuals,
    build_ontology,
    serialize_manchester,
    to_triples,
)
from .pipeline import DEFAULT_BASE, Extraction, run_extraction, shorten_term
from .query import SparqlSyntaxError, eval_ask, eval_select, parse_query
from .rus import RusError, RusFile, parse_rus
from .typemap import ClassDecl, TypeMap, TypesError, parse_types, validate_assignment
from .usecase import Role, UseCaseLine, parse_usecase_file

SESSION_TTL_SECONDS = 3600.0


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, **extra: Any):
        super().__init__(message)
        self.status = status
        self.body = {"error": {"code": code, "message": message, **extra}}


@dataclass
class Session:
    id: str
    lock: threading.Lock = field(default_factory=threading.Lock)
    touched: float = field(default_factory=time.monotonic)
    rus_text: "str | None" = None
    rus: "RusFile | None" = None
    usecase_lines: "list[UseCaseLine] | None" = None
    line_results: "list[dict] | None" = None
    extraction: "Extraction | None" = None
    classes: "list[ClassDecl] | None" = None
    typemap: "TypeMap | None" = None
    types_report: "dict | None" = None
    base: str = DEFAULT_BASE
    ontology: "Ontology | None" = None
    graph: "frozenset[Triple] | None" = None
    manchester: "str | None" = None

    def invalidate_extraction(self) -> None:
        self.line_results = None
        self.extraction = None
        self.invalidate_ontology()

    def invalidate_ontology(self) -> None:
        self.types_report = None
        self.ontology = None
        self.graph = None
        self.manchester = None

    def stages(self) -> dict[str, bool]:
        return {
            "rus": self.rus is not None,
            "usecase": self.usecase_lines is not None,
            "extracted": self.extraction is not None,
            "typed": self.typemap is not None,
            "ontology": self.ontology is not None,
        }


class SessionStore:
    def __init__(self, ttl: float = SESSION_TTL_SECONDS):
        self.ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        session = Session(id=secrets.token_urlsafe(16))
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        now = time.monotonic()
        with self._lock:
            expired = [sid for sid, s in self._sessions.items() if now - s.touched > self.ttl]
            for sid in expired:
                del self._sessions[sid]
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(404, "UnknownSession", f"no session '{session_id}'")
            session.touched = now
            return session


async def _json_body(request: Request) -> Any:
    raw = await request.body()
    if not raw:
        return {}
    try:
        return json.loads(raw)
    except ValueError:
        raise ApiError(400, "BadRequest", "request body is not valid JSON") from None


def _field(body: Any, name: str, kind: type, required: bool = True, default: Any = None) -> Any:
    if not isinstance(body, dict):
        raise ApiError(400, "BadRequest", "request body must be a JSON object")
    if name not in body:
        if required:
            raise ApiError(400, "BadRequest", f"missing field '{name}'")
        return default
    value = body[name]
    if not isinstance(value, kind):
        raise ApiError(400, "BadRequest", f"field '{name}' must be {kind.__name__}")
    return value


def _parse_lines(body: Any) -> list[UseCaseLine]:
    """Accept either raw text (role prefixes) or a structured line list."""
    if isinstance(body, dict) and "text" in body:
        return parse_usecase_file(_field(body, "text", str))
    entries = _field(body, "lines", list)
    lines: list[UseCaseLine] = []
    for number, entry in enumerate(entries, start=1):
        if not isinstance(entry, dict):
            raise ApiError(400, "BadRequest", f"line {number} must be an object", line=number)
        text = entry.get("text")
        if not isinstance(text, str) or not text.strip():
            raise ApiError(400, "BadRequest", f"line {number} needs non-empty 'text'", line=number)
        role_name = entry.get("role", "user")
        try:
            role = Role(role_name)
        except ValueError:
            raise ApiError(400, "BadRequest", f"line {number} has unknown role '{role_name}'",
                           line=number) from None
        lines.append(UseCaseLine(text.strip(), role, number))
    return lines


def _entities_json(extraction: Extraction) -> dict:
    ent = extraction.entities
    return {
        "relations": list(ent.relations),
        "individuals": list(ent.individuals),
        "data_properties": list(ent.data_properties),
        "types": list(ent.types),
    }


def create_app(
    catalog: "list[PatternQuery] | None" = None,
    catalog_dir=None,
    ui_dir=None,
    session_ttl: float = SESSION_TTL_SECONDS,
) -> FastAPI:
    if catalog is None and catalog_dir is not None:
        from .catalog import load_catalog_dir

        catalog = load_catalog_dir(catalog_dir)

    app = FastAPI(title="ucat", docs_url=None, redoc_url=None)
    store = SessionStore(ttl=session_ttl)

    @app.exception_handler(ApiError)
    def _api_error(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(exc.body, status_code=exc.status)

    def _require(session: Session, stage: str) -> None:
        if not session.stages()[stage]:
            raise ApiError(409, "StageError", f"stage '{stage}' has not been completed")

    @app.post("/api/sessions")
    def create_session() -> dict:
        session = store.create()
        return {"id": session.id, "stages": session.stages()}

    @app.put("/api/sessions/{session_id}/rus")
    async def put_rus(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        session = store.get(session_id)
        with session.lock:
            text = _field(body, "text", str)
            session.rus_text = text
            session.invalidate_extraction()
            try:
                session.rus = parse_rus(text)
            except RusError as exc:
                session.rus = None
                return {"ok": False,
                        "errors": [{"code": type(exc).__name__, "message": exc.message,
                                    "line": exc.line}]}
            if session.usecase_lines is not None:
                session.line_results = _match_lines(session)
            return {"ok": True, "rules": len(session.rus.rules)}

    def _match_lines(session: Session) -> list[dict]:
        extraction = run_extraction(session.rus, session.usecase_lines)
        failed = {e.origin.line_number: e for e in extraction.errors}
        results = []
        for line in session.usecase_lines:
            error = failed.get(line.line_number)
            if error is None:
                results.append({"line": line.line_number, "ok": True})
            else:
                results.append({
                    "line": line.line_number,
                    "ok": False,
                    "error": {"code": error.code, "message": error.render(),
                              "line": line.line_number},
                })
        return results

    @app.put("/api/sessions/{session_id}/usecase")
    async def put_usecase(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        session = store.get(session_id)
        with session.lock:
            _require(session, "rus")
            session.usecase_lines = _parse_lines(body)
            session.invalidate_extraction()
            session.line_results = _match_lines(session)
            return {"ok": all(r["ok"] for r in session.line_results),
                    "results": session.line_results}

    @app.post("/api/sessions/{session_id}/extract")
    def extract(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            _require(session, "rus")
            _require(session, "usecase")
            extraction = run_extraction(session.rus, session.usecase_lines)
            if not extraction.ok:
                raise ApiError(
                    409, "StageError",
                    "unmatched lines: " + ", ".join(str(e.origin.line_number)
                                                    for e in extraction.errors),
                )
            session.extraction = extraction
            session.invalidate_ontology()
            return {
                "entities": _entities_json(extraction),
                "tuples": [t.render() for t in extraction.tuples],
            }

    @app.put("/api/sessions/{session_id}/types")
    async def put_types(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        session = store.get(session_id)
        with session.lock:
            _require(session, "extracted")
            try:
                classes, typemap = _parse_types_body(body)
            except TypesError as exc:
                raise ApiError(400, type(exc).__name__, exc.message, line=exc.line) from exc
            session.classes, session.typemap = classes, typemap
            session.invalidate_ontology()
            report = validate_assignment(session.extraction.entities.individuals, typemap)
            session.types_report = {
                "ok": report.ok,
                "untyped": list(report.untyped),
                "unknown": list(report.unknown),
                "warnings": list(typemap.warnings),
            }
            return session.types_report

    def _parse_types_body(body: Any) -> tuple[list[ClassDecl], TypeMap]:
        if isinstance(body, dict) and "text" in body:
            return parse_types(_field(body, "text", str))
        classes = []
        for entry in _field(body, "classes", list):
            if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
                raise ApiError(400, "BadRequest", "each class needs a 'name'")
            parents = entry.get("parents", [])
            if not isinstance(parents, list) or any(not isinstance(p, str) for p in parents):
                raise ApiError(400, "BadRequest", "'parents' must be a list of names")
            classes.append(ClassDecl(entry["name"], tuple(parents)))
        declared = {c.name for c in classes}
        for decl in classes:
            for parent in decl.parents:
                if parent not in declared:
                    raise TypesError(f"parent class '{parent}' not declared", 1)
        assignments = _field(body, "assignments", dict, required=False, default={})
        typemap = TypeMap()
        for name, assigned in assignments.items():
            if not isinstance(assigned, list) or any(not isinstance(c, str) for c in assigned):
                raise ApiError(400, "BadRequest", f"assignment for '{name}' must list classes")
            for cls in assigned:
                if cls not in declared:
                    raise TypesError(f"class '{cls}' not declared", 1)
            typemap.assignments[name] = tuple(dict.fromkeys(assigned))
        return classes, typemap

    @app.post("/api/sessions/{session_id}/ontology")
    async def make_ontology(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        session = store.get(session_id)
        with session.lock:
            _require(session, "extracted")
            _require(session, "typed")
            base = _field(body, "base", str, required=False, default=session.base)
            permissive = _field(body, "permissive", bool, required=False, default=False)
            try:
                ontology = build_ontology(
                    base, session.extraction.entities, session.extraction.tuples,
                    session.classes or [], session.typemap, permissive=permissive,
                )
            except UntypedIndividuals as exc:
                raise ApiError(409, "UntypedIndividuals", str(exc), names=exc.names) from exc
            except OntologyError as exc:
                raise ApiError(400, type(exc).__name__, str(exc)) from exc
            session.base = ontology.base
            session.ontology = ontology
            session.graph = to_triples(ontology)
            session.manchester = serialize_manchester(ontology)
            return {
                "prefix": f"ont: <{ontology.base}#>",
                "triples": len(session.graph),
                "manchester": session.manchester,
            }

    @app.post("/api/sessions/{session_id}/query")
    async def run_query(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        session = store.get(session_id)
        with session.lock:
            _require(session, "ontology")
            text = _field(body, "query", str)
            try:
                parsed = parse_query(text)
            except SparqlSyntaxError as exc:
                raise ApiError(400, type(exc).__name__, exc.message,
                               line=exc.line, column=exc.column) from exc
            if parsed.form == "ask":
                return {"form": "ask", "result": eval_ask(parsed, session.graph)}
            result = eval_select(parsed, session.graph)
            return {
                "form": "select",
                "variables": list(result.variables),
                "rows": [[shorten_term(t, session.base) for t in row] for row in result.rows],
            }

    @app.post("/api/sessions/{session_id}/match")
    def run_match(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            _require(session, "ontology")
            if catalog is None:
                raise ApiError(409, "NoCatalog", "the server was started without a catalog")
            return {
                "results": [
                    {"pattern": name, "matched": matched}
                    for name, matched in match_patterns(catalog, session.graph)
                ]
            }

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            state: dict[str, Any] = {"id": session.id, "stages": session.stages()}
            if session.rus_text is not None:
                state["rus_text"] = session.rus_text
            if session.usecase_lines is not None:
                state["lines"] = [
                    {"line": l.line_number, "role": l.role.value, "text": l.text}
                    for l in session.usecase_lines
                ]
            if session.line_results is not None:
                state["line_results"] = session.line_results
            if session.extraction is not None:
                state["entities"] = _entities_json(session.extraction)
                state["tuples"] = [t.render() for t in session.extraction.tuples]
            if session.typemap is not None:
                state["classes"] = [
                    {"name": c.name, "parents": list(c.parents)} for c in session.classes or []
                ]
                state["assignments"] = {
                    name: list(classes) for name, classes in session.typemap.assignments.items()
                }
            if session.types_report is not None:
                state["types_report"] = session.types_report
            if session.ontology is not None:
                state["base"] = session.base
                state["prefix"] = f"ont: <{session.base}#>"
                state["manchester"] = session.manchester
                state["triples"] = len(session.graph)
            return state

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
