"""Scholarly source clients: Semantic Scholar (JSON) and arXiv (Atom).

Transports are injectable callables ``(url, params) -> (status, bytes)`` so
every test runs against canned payloads; the default transport uses httpx.
"""
from __future__ import annotations

import json
import logging
import os
import re
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from litpipe.acquisition.models import (
    Paper,
    SOURCE_ARXIV,
    SOURCE_SEMANTIC_SCHOLAR,
)
from litpipe.errors import ParseError, RateLimitedError, TransientError

log = logging.getLogger(__name__)

S2_SEARCH_URL = "https://api.semanticscholar.org/graph/v1/paper/search"
S2_FIELDS = "title,authors,year,abstract,citationCount,venue,externalIds,url,publicationDate"
ARXIV_QUERY_URL = "http://export.arxiv.org/api/query"
ATOM_NS = "{http://www.w3.org/2005/Atom}"

Transport = Callable[[str, Dict[str, str]], Tuple[int, bytes]]


class RecordRejected(Exception):
    """A raw record failed normalization; carries the rejection reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class RawPaperBatch:
    source: str
    records: List[dict]
    next_page: Optional[str]  # None = end of results


def default_transport(url: str, params: Dict[str, str]) -> Tuple[int, bytes]:
    import httpx

    headers = {}
    if url.startswith(S2_SEARCH_URL):
        api_key = os.environ.get("LITPIPE_S2_API_KEY")
        if api_key:
            headers["x-api-key"] = api_key
    try:
        resp = httpx.get(url, params=params, headers=headers, timeout=30.0)
    except httpx.HTTPError as exc:
        raise TransientError(str(exc)) from exc
    return resp.status_code, resp.content


class RateManager:
    """Serializes request pacing per source with a minimum inter-call interval."""

    def __init__(
        self,
        min_interval: float = 1.0,
        now: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.min_interval = min_interval
        self._now = now
        self._sleep = sleep
        self._last: Dict[str, float] = {}

    def wait(self, source: str) -> None:
        last = self._last.get(source)
        t = self._now()
        if last is not None:
            remaining = self.min_interval - (t - last)
            if remaining > 0:
                self._sleep(remaining)
                t = self._now()
        self._last[source] = t


def fetch_source(
    source: str,
    query: str,
    page: Optional[str] = None,
    transport: Transport = default_transport,
    rate_manager: Optional[RateManager] = None,
    limit: int = 100,
) -> RawPaperBatch:
    """Fetch one page of raw records from a source.

    Raises RateLimitedError on 429 and TransientError on 5xx/network
    failures (both retryable); malformed payloads raise ParseError.
    """
    if not query:
        raise ParseError("query must be non-empty")
    if rate_manager is not None:
        rate_manager.wait(source)
    offset = int(page) if page else 0
    if source == SOURCE_SEMANTIC_SCHOLAR:
        params = {"query": query, "fields": S2_FIELDS, "offset": str(offset), "limit": str(limit)}
        status, body = transport(S2_SEARCH_URL, params)
        _check_status(status, source)
        return _parse_s2(body, offset, limit)
    if source == SOURCE_ARXIV:
        params = {"search_query": f"all:{query}", "start": str(offset), "max_results": str(limit)}
        status, body = transport(ARXIV_QUERY_URL, params)
        _check_status(status, source)
        return _parse_arxiv(body, offset, limit)
    raise ParseError(f"unknown source {source!r}")


def _check_status(status: int, source: str) -> None:
    if status == 429:
        raise RateLimitedError(f"{source} rate limited")
    if status >= 500:
        raise TransientError(f"{source} returned {status}")
    if status != 200:
        raise ParseError(f"{source} returned {status}")


def _parse_s2(body: bytes, offset: int, limit: int) -> RawPaperBatch:
    try:
        payload = json.loads(body)
        records = payload.get("data", [])
    except (ValueError, AttributeError) as exc:
        raise ParseError(f"malformed semantic-scholar payload: {exc}") from exc
    if not isinstance(records, list):
        raise ParseError("semantic-scholar payload missing data list")
    next_offset = payload.get("next")
    next_page = str(next_offset) if next_offset is not None and records else None
    return RawPaperBatch(SOURCE_SEMANTIC_SCHOLAR, records, next_page)


def _parse_arxiv(body: bytes, offset: int, limit: int) -> RawPaperBatch:
    try:
        root = ET.fromstring(body)
    except ET.ParseError as exc:
        raise ParseError(f"malformed arxiv feed: {exc}") from exc
    records = []
    for entry in root.findall(f"{ATOM_NS}entry"):
        records.append(
            {
                "id": _text(entry, "id"),
                "title": _text(entry, "title"),
                "summary": _text(entry, "summary"),
                "published": _text(entry, "published"),
                "authors": [
                    _text(author, "name")
                    for author in entry.findall(f"{ATOM_NS}author")
                ],
            }
        )
    next_page = str(offset + limit) if len(records) >= limit else None
    return RawPaperBatch(SOURCE_ARXIV, records, next_page)


def _text(elem, tag: str) -> str:
    child = elem.find(f"{ATOM_NS}{tag}")
    return (child.text or "") if child is not None else ""


def _clean(text: str) -> str:
    return " ".join((text or "").split())


def _year_from_date(date_str: str) -> Optional[int]:
    match = re.match(r"(\d{4})", date_str or "")
    return int(match.group(1)) if match else None


def normalize_record(raw: dict, source: str) -> Paper:
    """Turn a raw source record into a canonical Paper.

    Missing titles reject the record ("no-title"); arXiv records default
    citation_count to 0; year falls back to the publication date.
    """
    if source == SOURCE_SEMANTIC_SCHOLAR:
        title = _clean(raw.get("title", ""))
        if not title:
            raise RecordRejected("no-title")
        year = raw.get("year") or _year_from_date(raw.get("publicationDate", ""))
        if year is None:
            raise RecordRejected("no-year")
        source_id = raw.get("paperId") or raw.get("externalIds", {}).get("CorpusId")
        if source_id is None:
            raise RecordRejected("no-source-id")
        source_id = str(source_id)
        return Paper(
            id=f"{source}:{source_id}",
            title=title,
            authors=tuple(a.get("name", "") for a in raw.get("authors") or []),
            year=int(year),
            abstract=_clean(raw.get("abstract") or ""),
            citation_count=int(raw.get("citationCount") or 0),
            venue=raw.get("venue") or None,
            source=source,
            source_id=source_id,
            url=raw.get("url"),
        )
    if source == SOURCE_ARXIV:
        title = _clean(raw.get("title", ""))
        if not title:
            raise RecordRejected("no-title")
        year = _year_from_date(raw.get("published", ""))
        if year is None:
            raise RecordRejected("no-year")
        arxiv_id = (raw.get("id") or "").rsplit("/", 1)[-1]
        if not arxiv_id:
            raise RecordRejected("no-source-id")
        return Paper(
            id=f"{source}:{arxiv_id}",
            title=title,
            authors=tuple(raw.get("authors") or []),
            year=year,
            abstract=_clean(raw.get("summary") or ""),
            citation_count=0,  # arXiv exposes no citation counts
            venue=None,
            source=source,
            source_id=arxiv_id,
            url=raw.get("id") or None,
        )
    raise RecordRejected(f"unknown-source:{source}")
