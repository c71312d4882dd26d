"""FastAPI application exposing POST /embed and GET /healthz."""
from __future__ import annotations

import logging
import os
import threading
from contextlib import asynccontextmanager
from typing import List, Optional

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from litpipe_sidecar.encoders import (
    EMBEDDING_DIM,
    EncoderLoadError,
    HashEncoder,
    SentenceTransformerEncoder,
)

log = logging.getLogger(__name__)

DEFAULT_MODEL_ID = "all-MiniLM-L6-v2"
MAX_TEXTS = 256
BATCH_SIZE = 32


class EmbedRequest(BaseModel):
    texts: List[str]
    normalize: bool = False


def default_loader():
    """Encoder selected by environment: real model, or the hash backend."""
    model_id = os.environ.get("EMBED_MODEL_ID", DEFAULT_MODEL_ID)
    backend = os.environ.get("EMBED_BACKEND", "model")
    if backend == "hash":
        return HashEncoder(model_id=model_id)
    return SentenceTransformerEncoder(model_id)


def create_app(loader=None) -> FastAPI:
    """Build the service; ``loader`` returns an encoder (injectable for tests).

    The model loads at startup. A load failure leaves the service up but
    answering 503 everywhere rather than serving wrong vectors.
    """
    loader = loader or default_loader

    state = {"encoder": None, "error": None}
    inference_lock = threading.Lock()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        try:
            state["encoder"] = loader()
        except EncoderLoadError as exc:
            log.error("model load failed: %s", exc)
            state["error"] = str(exc)
        yield

    app = FastAPI(title="embedding-sidecar", lifespan=lifespan)

    @app.get("/healthz")
    def healthz():
        encoder = state["encoder"]
        if encoder is None:
            detail = state["error"] or "model not loaded yet"
            return JSONResponse({"status": "unavailable", "detail": detail}, status_code=503)
        return {"status": "ok", "model_id": encoder.model_id, "dim": encoder.dim}

    @app.post("/embed")
    def embed(request: EmbedRequest):
        encoder = state["encoder"]
        if encoder is None:
            detail = state["error"] or "model not loaded yet"
            return JSONResponse({"error": detail}, status_code=503)
        if not request.texts:
            return JSONResponse({"error": "texts must be non-empty"}, status_code=400)
        if any(not t for t in request.texts):
            return JSONResponse({"error": "texts must not contain empty strings"}, status_code=400)
        if len(request.texts) > MAX_TEXTS:
            return JSONResponse(
                {"error": f"at most {MAX_TEXTS} texts per request"}, status_code=413
            )
        vectors: List[List[float]] = []
        with inference_lock:
            for start in range(0, len(request.texts), BATCH_SIZE):
                vectors.extend(encoder.encode(request.texts[start : start + BATCH_SIZE]))
        if request.normalize:
            arr = np.asarray(vectors, dtype=np.float64)
            norms = np.linalg.norm(arr, axis=1, keepdims=True)
            norms[norms == 0] = 1.0
            vectors = (arr / norms).astype(np.float32).tolist()
        return {"vectors": vectors, "model_id": encoder.model_id, "dim": EMBEDDING_DIM}

    return app


def main() -> None:
    import uvicorn

    logging.basicConfig(level=logging.INFO)
    port = int(os.environ.get("PORT", "8000"))
    uvicorn.run(create_app(), host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
