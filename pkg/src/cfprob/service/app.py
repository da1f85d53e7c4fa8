"""FastAPI application exposing the reasoning operations over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .. import __version__
from . import ops, schemas
from .ops import ModelStore, UnknownModelError


def create_app() -> FastAPI:
    app = FastAPI(
        title="cfprob",
        version=__version__,
        description=(
            "Possibility-ranked world models with probability weights: "
            "queries, revision, imaging, simulation, and check suites."
        ),
    )
    store = ModelStore()

    @app.exception_handler(UnknownModelError)
    async def unknown_model(request: Request, exc: UnknownModelError):
        return JSONResponse(
            status_code=404, content={"detail": f"unknown model id {exc.model_id!r}"}
        )

    @app.exception_handler(ValueError)
    async def bad_request(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/v1/models", response_model=schemas.ModelSummary)
    def store_model(req: schemas.StoreModelRequest):
        return store.put(req.text, req.name)

    @app.get("/v1/models", response_model=list[schemas.ModelSummary])
    def list_models():
        return store.list()

    @app.get("/v1/models/{model_id}", response_model=schemas.ModelSummary)
    def get_model(model_id: str):
        return ops.summarize(store.get(model_id), model_id=model_id)

    @app.delete("/v1/models/{model_id}", status_code=204)
    def delete_model(model_id: str):
        store.delete(model_id)
        return Response(status_code=204)

    @app.post("/v1/parse", response_model=schemas.ParseResponse)
    def parse(req: schemas.ParseRequest):
        return ops.parse_op(req)

    @app.post("/v1/worlds", response_model=schemas.WorldsResponse)
    def worlds(req: schemas.WorldsRequest):
        return ops.worlds_op(req, store)

    @app.post("/v1/query", response_model=schemas.QueryResponse)
    def query(req: schemas.QueryRequest):
        return ops.query_op(req, store)

    @app.post("/v1/revise", response_model=schemas.ReviseResponse)
    def revise(req: schemas.ReviseRequest):
        return ops.revise_op(req, store)

    @app.post("/v1/image", response_model=schemas.ImageResponse)
    def image(req: schemas.ImageRequest):
        return ops.image_op(req, store)

    @app.post("/v1/simulate", response_model=schemas.SimulateResponse)
    def simulate(req: schemas.SimulateRequest):
        return ops.simulate_op(req, store)

    @app.post("/v1/check", response_model=schemas.CheckResponse)
    def check(req: schemas.CheckRequest):
        return ops.check_op(req, store)

    @app.post("/v1/generate", response_model=schemas.GenerateResponse)
    def generate(req: schemas.GenerateRequest):
        return ops.generate_op(req)

    return app


app = create_app()
