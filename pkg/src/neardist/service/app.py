"""FastAPI wiring for the handlers."""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import BudgetError, CertificateError, InputError
from . import handlers
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    CertifyRequest,
    CertifyResponse,
    GenerateRequest,
    GenerateResponse,
    KDistanceRequest,
    KDistanceResponse,
    MdkResponse,
    MdTableResponse,
    ReproduceRequest,
    ReproduceResponse,
    SchuetteRequest,
    SchuetteResponse,
    TuranResponse,
    WeakEpsRequest,
    WeakEpsResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="neardist",
        version=__version__,
        description=(
            "Separated point sets, nearly-equal distance counts, and the "
            "extremal bounds they attain."
        ),
    )

    @app.exception_handler(InputError)
    @app.exception_handler(BudgetError)
    @app.exception_handler(CertificateError)
    async def _domain_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": {"category": type(exc).__name__, "message": str(exc)}},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/generate", response_model=GenerateResponse)
    def generate(req: GenerateRequest) -> GenerateResponse:
        return handlers.generate(req)

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        return handlers.analyze(req)

    @app.post("/verify/k-distance", response_model=KDistanceResponse)
    def verify_kdistance(req: KDistanceRequest) -> KDistanceResponse:
        return handlers.verify_kdistance(req)

    @app.post("/verify/weak-eps", response_model=WeakEpsResponse)
    def verify_weak(req: WeakEpsRequest) -> WeakEpsResponse:
        return handlers.verify_weak(req)

    @app.post("/verify/schuette", response_model=SchuetteResponse)
    def verify_schuette(req: SchuetteRequest) -> SchuetteResponse:
        return handlers.verify_schuette(req)

    @app.post("/verify/certify", response_model=CertifyResponse)
    def certify(req: CertifyRequest) -> CertifyResponse:
        return handlers.certify(req)

    @app.get("/turan", response_model=TuranResponse)
    def turan(n: int = Query(ge=0), s: int = Query(ge=2)) -> TuranResponse:
        return handlers.turan(n, s)

    @app.get("/mdk", response_model=MdkResponse)
    def mdk(d: int = Query(ge=2), k: int = Query(ge=1)) -> MdkResponse:
        return handlers.mdk(d, k)

    @app.get("/md-table", response_model=MdTableResponse)
    def md_bounds(d: int = Query(ge=1)) -> MdTableResponse:
        return handlers.md_bounds(d)

    @app.post("/reproduce", response_model=ReproduceResponse)
    def reproduce(req: ReproduceRequest) -> ReproduceResponse:
        return handlers.reproduce(req)

    return app


app = create_app()
