"""Corpus embedding: paper text mapping, cache-aware batch embedding."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

import numpy as np

from litpipe.acquisition.models import Corpus, Paper
from litpipe.embedding.provider import (
    DEFAULT_BATCH_SIZE,
    EMBEDDING_DIM,
    embed_batch,
)
from litpipe.embedding.store import EmbeddingStore
from litpipe.errors import (
    AttemptsExhaustedError,
    EmbeddingIncompleteError,
    InvalidInputError,
    RetryableError,
)

NORM_TOLERANCE = 1e-6


def paper_text(paper: Paper) -> str:
    """Title, one space, abstract; title alone when the abstract is empty."""
    if not paper.abstract:
        return paper.title
    return f"{paper.title} {paper.abstract}"


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class EmbeddingMatrix:
    vectors: np.ndarray  # (n, 384) float32, aligned to corpus paper order
    model_id: str
    normalized: bool

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[1] != EMBEDDING_DIM:
            raise InvalidInputError(f"matrix must be (n, {EMBEDDING_DIM})")
        if not np.all(np.isfinite(self.vectors)):
            raise InvalidInputError("matrix contains non-finite values")
        if self.normalized:
            norms = np.linalg.norm(self.vectors.astype(np.float64), axis=1)
            if not np.all(np.abs(norms - 1.0) <= NORM_TOLERANCE):
                raise InvalidInputError("normalized matrix rows must have unit L2 norm")

    def __len__(self) -> int:
        return int(self.vectors.shape[0])


def _normalize(raw: np.ndarray) -> np.ndarray:
    vec = raw.astype(np.float64)
    norm = np.linalg.norm(vec)
    if norm == 0:
        vec = vec.copy()
        vec[0] = 1.0
        norm = 1.0
    return (vec / norm).astype(np.float32)


def embed_corpus(
    corpus: Corpus,
    provider,
    store: Optional[EmbeddingStore] = None,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> EmbeddingMatrix:
    """Embed every paper, serving cache hits from the persistent store.

    Only cache misses reach the provider; raw vectors are cached and all
    rows are L2-normalized before return. Provider failure with uncached
    papers remaining raises EmbeddingIncompleteError listing their ids.
    """
    if len(corpus) == 0:
        raise InvalidInputError("corpus must be non-empty")
    texts = [paper_text(p) for p in corpus.papers]
    hashes = [content_hash(t) for t in texts]

    raw_vectors: list = [None] * len(texts)
    miss_indices = []
    for i, digest in enumerate(hashes):
        cached = store.get(provider.model_id, digest) if store is not None else None
        if cached is not None:
            raw_vectors[i] = cached
        else:
            miss_indices.append(i)

    if miss_indices:
        miss_texts = [texts[i] for i in miss_indices]
        try:
            fresh = embed_batch(miss_texts, provider, batch_size=batch_size)
        except (RetryableError, AttemptsExhaustedError) as exc:
            missing_ids = [corpus.papers[i].id for i in miss_indices]
            raise EmbeddingIncompleteError(missing_ids) from exc
        for i, vec in zip(miss_indices, fresh):
            raw_vectors[i] = vec
            if store is not None:
                store.put(provider.model_id, hashes[i], vec)

    matrix = np.stack([_normalize(v) for v in raw_vectors])
    return EmbeddingMatrix(vectors=matrix, model_id=provider.model_id, normalized=True)
