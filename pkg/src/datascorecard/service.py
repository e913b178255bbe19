"""Stateless HTTP API over the rubric, validation, scoring, and rendering.

Routes (JSON request/response bodies unless noted):

    GET  /api/v1/rubric                 active catalog, rubric file format
    POST /api/v1/validate               findings list, always 200 on parseable bodies
    POST /api/v1/score                  full evaluation document
    POST /api/v1/scorecard?format=...   rendered scorecard (markdown|html|machine)

Error bodies are ``{"code": ..., "findings": [...]?}`` with code one of
bad_request, validation_failed, version_mismatch, internal. Handlers are pure
functions of (active catalog, request body); nothing is stored server-side.
A built UI bundle directory, when provided, is served at /.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .errors import IntakeParseError
from .intake import parse_intake, validate_intake
from .reporting import (
    FORMAT_HTML,
    FORMAT_MACHINE,
    FORMAT_MARKDOWN,
    FORMATS,
    RecommendationCatalog,
    build_scorecard,
    default_recommendations,
    render,
    scorecard_to_document,
)
from .rubric import RubricCatalog, builtin_catalog, serialize_catalog
from .scoring import evaluate, evaluation_to_document

CODE_BAD_REQUEST = "bad_request"
CODE_VALIDATION_FAILED = "validation_failed"
CODE_VERSION_MISMATCH = "version_mismatch"
CODE_INTERNAL = "internal"

_MEDIA_TYPES = {
    FORMAT_MARKDOWN: "text/markdown; charset=utf-8",
    FORMAT_HTML: "text/html; charset=utf-8",
    FORMAT_MACHINE: "application/json",
}


def _error(status: int, code: str, report=None, message: str | None = None) -> JSONResponse:
    body = {"code": code}
    if message:
        body["message"] = message
    if report is not None:
        body["findings"] = report.to_document()["findings"]
    return JSONResponse(body, status_code=status)


def _failure_code(report) -> str:
    if any(f.code == "version_mismatch" for f in report.errors()):
        return CODE_VERSION_MISMATCH
    return CODE_VALIDATION_FAILED


def create_app(catalog: RubricCatalog | None = None,
               recommendations: RecommendationCatalog | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    """Build the API app around one immutable catalog."""
    catalog = catalog or builtin_catalog()
    recommendations = recommendations or default_recommendations()
    rubric_bytes = serialize_catalog(catalog).encode("utf-8")

    app = FastAPI(title="datascorecard", docs_url=None, redoc_url=None)

    async def _parse_body(request: Request):
        """Returns (form, report, error_response); error_response set on
        syntactically broken bodies."""
        body = await request.body()
        try:
            tree = parse_intake(body.decode("utf-8"))
        except (IntakeParseError, UnicodeDecodeError) as exc:
            return None, None, _error(400, CODE_BAD_REQUEST, message=str(exc))
        form, report = validate_intake(tree, catalog)
        return form, report, None

    @app.get("/api/v1/rubric")
    def get_rubric():
        return Response(content=rubric_bytes, media_type="application/json")

    @app.post("/api/v1/validate")
    async def post_validate(request: Request):
        _, report, error = await _parse_body(request)
        if error is not None:
            return error
        return JSONResponse(report.to_document())

    @app.post("/api/v1/score")
    async def post_score(request: Request):
        form, report, error = await _parse_body(request)
        if error is not None:
            return error
        if form is None:
            return _error(422, _failure_code(report), report=report)
        return JSONResponse(evaluation_to_document(evaluate(form, catalog)))

    @app.post("/api/v1/scorecard")
    async def post_scorecard(request: Request, format: str = Query(FORMAT_MARKDOWN)):
        if format not in FORMATS:
            return _error(400, CODE_BAD_REQUEST,
                          message=f"unknown format {format!r}; expected one of {', '.join(FORMATS)}")
        form, report, error = await _parse_body(request)
        if error is not None:
            return error
        if form is None:
            return _error(422, _failure_code(report), report=report)
        card = build_scorecard(evaluate(form, catalog), recommendations, catalog)
        if format == FORMAT_MACHINE:
            return JSONResponse(scorecard_to_document(card))
        return Response(content=render(card, format), media_type=_MEDIA_TYPES[format])

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
