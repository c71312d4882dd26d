"""Encoder backends for the embedding service.

The default backend wraps a sentence-transformers model. The hash backend
is a deterministic, dependency-free stand-in (seeded token-hash projection)
for offline development and tests; both produce 384-dim float vectors.
"""
from __future__ import annotations

import hashlib
import re
from typing import List, Sequence

import numpy as np

EMBEDDING_DIM = 384

_TOKEN = re.compile(r"[a-z0-9]+")


class EncoderLoadError(Exception):
    """The configured model could not be loaded or has the wrong dimension."""


class SentenceTransformerEncoder:
    """Real model inference via sentence-transformers."""

    def __init__(self, model_id: str):
        self.model_id = model_id
        try:
            from sentence_transformers import SentenceTransformer

            self._model = SentenceTransformer(model_id)
            self.dim = int(self._model.get_sentence_embedding_dimension())
        except Exception as exc:
            raise EncoderLoadError(f"cannot load model {model_id!r}: {exc}") from exc
        if self.dim != EMBEDDING_DIM:
            raise EncoderLoadError(
                f"model {model_id!r} has dim {self.dim}, expected {EMBEDDING_DIM}"
            )

    def encode(self, texts: Sequence[str]) -> List[List[float]]:
        vectors = self._model.encode(list(texts), normalize_embeddings=False)
        return np.asarray(vectors, dtype=np.float32).tolist()


class HashEncoder:
    """Deterministic token-hash projection; identical text, identical vector."""

    def __init__(self, model_id: str = "hash-384", seed: int = 0):
        self.model_id = model_id
        self.seed = seed
        self.dim = EMBEDDING_DIM
        self._token_cache: dict = {}

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is None:
            digest = hashlib.sha256(f"{self.seed}:{token}".encode("utf-8")).digest()
            rs = np.random.RandomState(int.from_bytes(digest[:4], "little"))
            cached = rs.standard_normal(EMBEDDING_DIM)
            self._token_cache[token] = cached
        return cached

    def encode(self, texts: Sequence[str]) -> List[List[float]]:
        out = []
        for text in texts:
            vec = np.zeros(EMBEDDING_DIM, dtype=np.float64)
            for token in _TOKEN.findall(text.casefold()):
                vec += self._token_vector(token)
            norm = np.linalg.norm(vec)
            if norm == 0:
                vec[0] = 1.0
                norm = 1.0
            out.append((vec / norm).astype(np.float32).tolist())
        return out
