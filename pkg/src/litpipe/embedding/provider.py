"""Embedding provider contract: text batches -> 384-dimensional vectors.

Two implementations: a remote sidecar client and a deterministic mock
(seeded hash-to-vector projection) for fully offline tests.
"""
from __future__ import annotations

import hashlib
import os
import re
from typing import List, Optional, Sequence

import numpy as np

from litpipe.errors import InvalidInputError, ProtocolError, TransientError

EMBEDDING_DIM = 384
DEFAULT_BATCH_SIZE = 32
DEFAULT_REMOTE_MODEL = "all-MiniLM-L6-v2"

_TOKEN = re.compile(r"[a-z0-9]+")


class MockEmbeddingProvider:
    """Seeded pseudo-random projection of token hash counts to 384 dims.

    Identical text always yields bitwise-identical vectors; the seed makes
    distinct providers produce distinct geometries.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.model_id = f"mock-hash-{seed}"
        self.calls = 0
        self._token_cache: dict = {}

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is None:
            digest = hashlib.sha256(f"{self.seed}:{token}".encode("utf-8")).digest()
            rs = np.random.RandomState(int.from_bytes(digest[:4], "little"))
            cached = rs.standard_normal(EMBEDDING_DIM)
            self._token_cache[token] = cached
        return cached

    def encode_batch(self, texts: Sequence[str]) -> List[np.ndarray]:
        self.calls += 1
        out = []
        for text in texts:
            vec = np.zeros(EMBEDDING_DIM, dtype=np.float64)
            for token in _TOKEN.findall(text.casefold()):
                vec += self._token_vector(token)
            norm = np.linalg.norm(vec)
            if norm == 0:
                vec[0] = 1.0
                norm = 1.0
            out.append((vec / norm).astype(np.float32))
        return out


class SidecarEmbeddingClient:
    """Client side of the embedding sidecar wire protocol (POST /embed)."""

    def __init__(
        self,
        endpoint: Optional[str] = None,
        model_id: str = DEFAULT_REMOTE_MODEL,
        http_client=None,
    ):
        self.endpoint = (endpoint or os.environ.get("LITPIPE_EMBED_ENDPOINT", "")).rstrip("/")
        if not self.endpoint:
            raise InvalidInputError("sidecar endpoint not configured (LITPIPE_EMBED_ENDPOINT)")
        self.model_id = model_id
        self._client = http_client

    def _http(self):
        if self._client is None:
            import httpx

            self._client = httpx.Client(timeout=60.0)
        return self._client

    def encode_batch(self, texts: Sequence[str]) -> List[np.ndarray]:
        import httpx

        try:
            resp = self._http().post(
                f"{self.endpoint}/embed",
                json={"texts": list(texts), "normalize": False},
            )
        except httpx.HTTPError as exc:
            raise TransientError(f"sidecar unreachable: {exc}") from exc
        if resp.status_code >= 500:
            raise TransientError(f"sidecar returned {resp.status_code}")
        if resp.status_code != 200:
            raise ProtocolError(f"sidecar returned {resp.status_code}: {resp.text}")
        payload = resp.json()
        if payload.get("dim") != EMBEDDING_DIM:
            raise ProtocolError(f"sidecar dim {payload.get('dim')} != {EMBEDDING_DIM}")
        self.model_id = payload.get("model_id", self.model_id)
        return [np.asarray(v, dtype=np.float32) for v in payload["vectors"]]


def embed_batch(
    texts: Sequence[str],
    provider,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> List[np.ndarray]:
    """Embed texts through the provider in fixed-size batches.

    One 384-vector per input, same order. Wrong-dimension or non-finite
    provider output raises ProtocolError.
    """
    if not texts:
        raise InvalidInputError("texts must be non-empty")
    vectors: List[np.ndarray] = []
    for start in range(0, len(texts), batch_size):
        chunk = list(texts[start : start + batch_size])
        result = provider.encode_batch(chunk)
        if len(result) != len(chunk):
            raise ProtocolError(
                f"provider returned {len(result)} vectors for {len(chunk)} texts"
            )
        for vec in result:
            arr = np.asarray(vec, dtype=np.float32)
            if arr.shape != (EMBEDDING_DIM,):
                raise ProtocolError(f"provider vector has shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ProtocolError("provider vector contains non-finite values")
            vectors.append(arr)
    return vectors
