from __future__ import annotations

import itertools

import pytest

from litpipe.acquisition.models import (
    AcquisitionConfig,
    Corpus,
    CorpusStats,
    Paper,
    Topic,
)

FIXED_NOW = 1735689600.0  # 2025-01-01T00:00:00Z

_counter = itertools.count()


def make_paper(
    title: str = None,
    year: int = 2022,
    citations: int = 10,
    abstract: str = None,
    source: str = "semantic-scholar",
    authors: tuple = ("Alex Chen", "Bo Wang"),
    source_id: str = None,
) -> Paper:
    n = next(_counter)
    title = title if title is not None else f"Benchmarking Retrieval Systems: Study {n}"
    abstract = (
        abstract
        if abstract is not None
        else ("We analyze retrieval quality across several benchmark suites. " * 5)
    )
    source_id = source_id or f"{source[:2]}-{n:05d}"
    return Paper(
        id=f"{source}:{source_id}",
        title=title,
        authors=authors,
        year=year,
        abstract=abstract,
        citation_count=citations,
        source=source,
        source_id=source_id,
    )


def make_corpus(papers, topic_text="retrieval systems", degraded=False) -> Corpus:
    papers = tuple(papers)
    n = len(papers)
    return Corpus(
        topic=Topic(topic_text, AcquisitionConfig()),
        papers=papers,
        stats=CorpusStats(fetched=n, deduplicated=n, filtered=n, final=n),
        created_at=FIXED_NOW,
        degraded=degraded,
    )


@pytest.fixture
def paper_factory():
    return make_paper


@pytest.fixture
def corpus_factory():
    return make_corpus


@pytest.fixture
def fixed_now():
    return FIXED_NOW
