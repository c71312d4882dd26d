from litpipe.acquisition.models import (
    AcquisitionConfig,
    Corpus,
    CorpusStats,
    Paper,
    QuerySet,
    Topic,
)
from litpipe.acquisition.expand import expand_queries
from litpipe.acquisition.dedup import title_similarity, deduplicate
from litpipe.acquisition.filtering import filter_corpus
from litpipe.acquisition.acquire import acquire

__all__ = [
    "AcquisitionConfig",
    "Corpus",
    "CorpusStats",
    "Paper",
    "QuerySet",
    "Topic",
    "expand_queries",
    "title_similarity",
    "deduplicate",
    "filter_corpus",
    "acquire",
]
