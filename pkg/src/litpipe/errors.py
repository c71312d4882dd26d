"""Exception taxonomy shared across the pipeline."""
from __future__ import annotations


class LitPipeError(Exception):
    """Base class for all pipeline errors."""


class InvalidInputError(LitPipeError):
    """A caller violated an operation precondition."""


class RetryableError(LitPipeError):
    """Base for failures the retry machinery is allowed to retry."""


class RateLimitedError(RetryableError):
    """Upstream service signalled rate limiting (HTTP 429)."""


class TransientError(RetryableError):
    """Network-level or otherwise transient failure."""


class ParseError(LitPipeError):
    """Malformed payload; not retryable."""


class ProtocolError(LitPipeError):
    """A provider violated its wire contract (e.g. wrong vector dimension)."""


class EmbeddingIncompleteError(LitPipeError):
    """Provider failed with uncached papers remaining."""

    def __init__(self, missing_ids):
        super().__init__(f"embeddings missing for {len(missing_ids)} papers")
        self.missing_ids = list(missing_ids)


class AcquisitionFailedError(LitPipeError):
    """All sources unavailable and no usable cache."""


class AttemptsExhaustedError(LitPipeError):
    """Every retry attempt and alternative input failed."""

    def __init__(self, causes):
        super().__init__(f"all {len(causes)} attempts failed")
        self.causes = list(causes)


class OversizeValueError(LitPipeError):
    """Cache value larger than the store's total capacity."""


class CorruptCheckpointError(LitPipeError):
    """Checkpoint artifact hashes do not match the files on disk."""


class AggregationError(LitPipeError):
    """Evaluation aggregation is missing dimensions."""


class AssemblyError(LitPipeError):
    """Survey assembly is missing a required section."""


class ConsistencyError(LitPipeError):
    """Inputs that must describe the same corpus/clustering disagree."""
