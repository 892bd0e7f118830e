"""HTTP routes: /nli (single or batch), /coref, /health."""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, field_validator

from .coref_backend import CorefModel, build_coref_model
from .nli_backend import NliModel, build_nli_model


class NliItem(BaseModel):
    premise: str
    hypothesis: str

    @field_validator("premise", "hypothesis")
    @classmethod
    def nonempty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("must be nonempty")
        return value


class CorefIn(BaseModel):
    text: str

    @field_validator("text")
    @classmethod
    def nonempty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("must be nonempty")
        return value


def _triple_dict(e: float, c: float, n: float) -> dict:
    return {"entailment": e, "contradiction": c, "neutral": n}


def create_app(nli: NliModel | None = None, coref: CorefModel | None = None) -> FastAPI:
    if nli is None:
        nli = build_nli_model(
            os.environ.get("FIZZ_SHIM_NLI_MODEL", "lexical"),
            batch_size=int(os.environ.get("FIZZ_SHIM_BATCH_SIZE", "16")),
            device=os.environ.get("FIZZ_SHIM_DEVICE", "cpu"),
        )
    if coref is None:
        coref = build_coref_model(os.environ.get("FIZZ_SHIM_COREF_MODEL", "heuristic"))

    app = FastAPI(title="fizz-shim")

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors()[:3])})

    @app.post("/nli")
    async def score_nli(body: NliItem | list[NliItem]):
        items = body if isinstance(body, list) else [body]
        if not items:
            return JSONResponse(status_code=400, content={"error": "empty batch"})
        triples = nli.score_batch([(i.premise, i.hypothesis) for i in items])
        payload = [_triple_dict(*t) for t in triples]
        return payload if isinstance(body, list) else payload[0]

    @app.post("/coref")
    async def extract_clusters(body: CorefIn):
        return {"text": body.text, "clusters": coref.clusters(body.text)}

    @app.get("/health")
    async def health():
        return {
            "status": "ok",
            "models": {"nli": nli.identifier, "coref": coref.identifier},
        }

    return app
