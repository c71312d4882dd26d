from litpipe.infra.backoff import BackoffPolicy, next_delay, with_retry, RetryOutcome
from litpipe.infra.cache import CacheEntry, TTLLRUCache, DiskCache
from litpipe.infra.checkpoint import (
    STAGES,
    Checkpoint,
    checkpoint_save,
    checkpoint_load,
)

__all__ = [
    "BackoffPolicy",
    "next_delay",
    "with_retry",
    "RetryOutcome",
    "CacheEntry",
    "TTLLRUCache",
    "DiskCache",
    "STAGES",
    "Checkpoint",
    "checkpoint_save",
    "checkpoint_load",
]
