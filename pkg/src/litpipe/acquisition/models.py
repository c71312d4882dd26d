"""Bibliographic domain types and the corpus JSON schema (version 1)."""
from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from litpipe.errors import InvalidInputError

SOURCE_SEMANTIC_SCHOLAR = "semantic-scholar"
SOURCE_ARXIV = "arxiv"
SOURCES = (SOURCE_SEMANTIC_SCHOLAR, SOURCE_ARXIV)

# Dedup tie-break: earlier source wins.
SOURCE_PRIORITY = {SOURCE_SEMANTIC_SCHOLAR: 0, SOURCE_ARXIV: 1}

YEAR_MIN_VALID = 1900


@dataclass(frozen=True)
class AcquisitionConfig:
    year_min: int = 2020
    year_max: int = 2025
    # None selects the adaptive default: 0 for papers <= 18 months old, else 1.
    min_citations: Optional[int] = None
    title_similarity_threshold: float = 0.90
    target_paper_count: int = 150
    min_abstract_chars: int = 200
    records_per_query: int = 100
    per_source_concurrency: int = 4

    def __post_init__(self):
        if self.year_min > self.year_max:
            raise InvalidInputError("year_min must not exceed year_max")
        if not 0.0 <= self.title_similarity_threshold <= 1.0:
            raise InvalidInputError("title_similarity_threshold must be in [0,1]")
        if self.min_citations is not None and self.min_citations < 0:
            raise InvalidInputError("min_citations must be non-negative")


@dataclass(frozen=True)
class Topic:
    text: str
    config: AcquisitionConfig = field(default_factory=AcquisitionConfig)

    def __post_init__(self):
        if not self.text or not self.text.strip():
            raise InvalidInputError("topic text must be non-empty")
        object.__setattr__(self, "text", self.text.strip())


@dataclass(frozen=True)
class QuerySet:
    queries: tuple
    provenance: tuple  # expansion rule tag per query

    RULES = ("verbatim", "synonym", "related-term", "boolean-compound", "acronym")

    def __post_init__(self):
        if len(self.queries) != len(self.provenance):
            raise InvalidInputError("queries and provenance must align")
        folded = [q.casefold() for q in self.queries]
        if len(set(folded)) != len(folded):
            raise InvalidInputError("queries must be unique after case-folding")

    def __len__(self) -> int:
        return len(self.queries)


@dataclass(frozen=True)
class Paper:
    id: str
    title: str
    authors: tuple
    year: int
    abstract: str
    citation_count: int
    source: str
    source_id: str
    venue: Optional[str] = None
    url: Optional[str] = None

    def __post_init__(self):
        if self.source not in SOURCES:
            raise InvalidInputError(f"unknown source {self.source!r}")
        if self.citation_count < 0:
            raise InvalidInputError("citation_count must be non-negative")
        max_year = datetime.date.today().year + 1
        if not YEAR_MIN_VALID <= self.year <= max_year:
            raise InvalidInputError(f"year {self.year} outside [{YEAR_MIN_VALID}, {max_year}]")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "authors": list(self.authors),
            "year": self.year,
            "abstract": self.abstract,
            "citation_count": self.citation_count,
            "venue": self.venue,
            "source": self.source,
            "source_id": self.source_id,
            "url": self.url,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Paper":
        return cls(
            id=d["id"],
            title=d["title"],
            authors=tuple(d["authors"]),
            year=d["year"],
            abstract=d["abstract"],
            citation_count=d["citation_count"],
            venue=d.get("venue"),
            source=d["source"],
            source_id=d["source_id"],
            url=d.get("url"),
        )


@dataclass(frozen=True)
class CorpusStats:
    fetched: int = 0
    deduplicated: int = 0
    filtered: int = 0
    final: int = 0

    def to_dict(self) -> dict:
        return {
            "fetched": self.fetched,
            "deduplicated": self.deduplicated,
            "filtered": self.filtered,
            "final": self.final,
        }


@dataclass(frozen=True)
class Corpus:
    topic: Topic
    papers: tuple
    stats: CorpusStats
    created_at: float
    degraded: bool = False

    def __post_init__(self):
        ids = [p.id for p in self.papers]
        if len(set(ids)) != len(ids):
            raise InvalidInputError("paper ids must be unique within a corpus")
        if self.stats.final != len(self.papers):
            raise InvalidInputError("stats.final must equal paper count")
        if self.stats.final > self.stats.fetched:
            raise InvalidInputError("stats.final must not exceed stats.fetched")

    def __len__(self) -> int:
        return len(self.papers)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "topic": self.topic.text,
            "created_at": self.created_at,
            "degraded": self.degraded,
            "stats": self.stats.to_dict(),
            "papers": [p.to_dict() for p in self.papers],
        }

    def save(self, path: Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: Path, config: Optional[AcquisitionConfig] = None) -> "Corpus":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        stats = CorpusStats(**d["stats"])
        return cls(
            topic=Topic(d["topic"], config or AcquisitionConfig()),
            papers=tuple(Paper.from_dict(p) for p in d["papers"]),
            stats=stats,
            created_at=d["created_at"],
            degraded=d.get("degraded", False),
        )
