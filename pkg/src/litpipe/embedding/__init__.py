from litpipe.embedding.provider import (
    EMBEDDING_DIM,
    DEFAULT_BATCH_SIZE,
    DEFAULT_REMOTE_MODEL,
    MockEmbeddingProvider,
    SidecarEmbeddingClient,
    embed_batch,
)
from litpipe.embedding.store import EmbeddingStore
from litpipe.embedding.pipeline import EmbeddingMatrix, embed_corpus, paper_text

__all__ = [
    "EMBEDDING_DIM",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_REMOTE_MODEL",
    "MockEmbeddingProvider",
    "SidecarEmbeddingClient",
    "embed_batch",
    "EmbeddingStore",
    "EmbeddingMatrix",
    "embed_corpus",
    "paper_text",
]
