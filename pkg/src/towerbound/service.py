"""HTTP facade over the report layer.

Handlers do no arithmetic of their own: each parses its request, calls
the report layer, and wraps the result. The CLI calls these same handler
functions in process, so local runs and server runs agree exactly.

Error mapping: bad mathematical input (out-of-range rank, malformed
level, unknown scope) is 422; a computation whose enumeration would
exceed the guard and escapes the suite's skip handling is 503.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from .errors import InfeasibleError
from .report import (
    AssertionCounts,
    Budget,
    LevelSpec,
    Report,
    bound_report,
    emit_csv,
    emit_json,
    emit_markdown,
    hodge_report,
    run_verification_suite,
    shapes_report,
)

FORMATS = ("json", "csv", "md")


class AssertionCountsModel(BaseModel):
    passed: int
    failed: int
    skipped: int


class ReportModel(BaseModel):
    version: str
    command: str
    params: dict[str, str]
    rows: list[dict[str, str]]
    assertions: AssertionCountsModel

    @classmethod
    def from_report(cls, report: Report) -> "ReportModel":
        return cls(
            version=report.version,
            command=report.command,
            params=dict(report.params),
            rows=[dict(row) for row in report.rows],
            assertions=AssertionCountsModel(
                passed=report.assertions.passed,
                failed=report.assertions.failed,
                skipped=report.assertions.skipped,
            ),
        )

    def to_report(self) -> Report:
        return Report(
            version=self.version,
            command=self.command,
            params=dict(self.params),
            rows=[dict(row) for row in self.rows],
            assertions=AssertionCounts(
                passed=self.assertions.passed,
                failed=self.assertions.failed,
                skipped=self.assertions.skipped,
            ),
        )


class ShapesRequest(BaseModel):
    rank: int


class BoundRequest(BaseModel):
    rank: int
    degree: int
    level: str = ""


class HodgeRequest(BaseModel):
    rank: int


class VerifyRequest(BaseModel):
    scope: str
    pmax: int | None = None
    nmax: int | None = None
    guard: int | None = None
    rank_max: int | None = None
    modulus_cap: int | None = None

    def budget(self) -> Budget:
        overrides = {
            name: value
            for name in ("pmax", "nmax", "guard", "rank_max", "modulus_cap")
            if (value := getattr(self, name)) is not None
        }
        return dataclasses.replace(Budget(), **overrides)


class RenderRequest(VerifyRequest):
    scope: str = "all"
    format: str = "md"


class RenderedReport(BaseModel):
    format: str
    content: str


def render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report)
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "md":
        return emit_markdown(report)
    raise ValueError(f"unknown format {fmt!r}; pick one of {FORMATS}")


def handle_shapes(req: ShapesRequest) -> ReportModel:
    return ReportModel.from_report(shapes_report(req.rank))


def handle_bound(req: BoundRequest) -> ReportModel:
    level = LevelSpec.parse(req.level)
    return ReportModel.from_report(bound_report(req.rank, req.degree, level))


def handle_hodge(req: HodgeRequest) -> ReportModel:
    return ReportModel.from_report(hodge_report(req.rank))


def handle_verify(req: VerifyRequest, cache=None) -> ReportModel:
    report = run_verification_suite(req.scope, req.budget(), cache=cache)
    return ReportModel.from_report(report)


def handle_render(req: RenderRequest, cache=None) -> RenderedReport:
    if req.format not in FORMATS:
        raise ValueError(f"unknown format {req.format!r}; pick one of {FORMATS}")
    report = run_verification_suite(req.scope, req.budget(), cache=cache)
    return RenderedReport(format=req.format, content=render_report(report, req.format))


app = FastAPI(title="towerbound", version=__version__)


@app.exception_handler(ValueError)
async def _value_error(request: Request, err: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(err), "kind": "usage"})


@app.exception_handler(InfeasibleError)
async def _infeasible(request: Request, err: InfeasibleError) -> JSONResponse:
    return JSONResponse(
        status_code=503, content={"detail": str(err), "kind": "infeasible"}
    )


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/shapes")
def shapes_route(req: ShapesRequest) -> ReportModel:
    return handle_shapes(req)


@app.post("/bound")
def bound_route(req: BoundRequest) -> ReportModel:
    return handle_bound(req)


@app.post("/hodge")
def hodge_route(req: HodgeRequest) -> ReportModel:
    return handle_hodge(req)


@app.post("/verify")
def verify_route(req: VerifyRequest) -> ReportModel:
    return handle_verify(req)


@app.post("/report")
def report_route(req: RenderRequest) -> RenderedReport:
    return handle_render(req)
