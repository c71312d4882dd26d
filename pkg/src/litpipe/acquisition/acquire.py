"""End-to-end acquisition: expand -> fetch -> normalize -> dedup -> filter."""
from __future__ import annotations

import json
import logging
import random
import time
from typing import Callable, Dict, List, Optional

from litpipe.acquisition.dedup import deduplicate
from litpipe.acquisition.expand import expand_queries
from litpipe.acquisition.filtering import filter_corpus
from litpipe.acquisition.models import (
    Corpus,
    CorpusStats,
    Paper,
    SOURCES,
    Topic,
)
from litpipe.acquisition.sources import (
    RateManager,
    RecordRejected,
    Transport,
    default_transport,
    fetch_source,
    normalize_record,
)
from litpipe.errors import (
    AcquisitionFailedError,
    AttemptsExhaustedError,
    ParseError,
)
from litpipe.infra.backoff import BackoffPolicy, with_retry
from litpipe.infra.cache import DiskCache

log = logging.getLogger(__name__)


def acquire(
    topic: Topic,
    transports: Optional[Dict[str, Transport]] = None,
    cache: Optional[DiskCache] = None,
    policy: Optional[BackoffPolicy] = None,
    rate_manager: Optional[RateManager] = None,
    now: Callable[[], float] = time.time,
    sleep: Callable[[float], None] = time.sleep,
    rng: Optional[random.Random] = None,
) -> Corpus:
    """Build a Corpus for a topic from both scholarly sources.

    If one source is unavailable the run proceeds degraded on the other;
    if both are unavailable, stale cached responses are used when present,
    otherwise acquisition fails.
    """
    config = topic.config
    queries = expand_queries(topic)
    transports = transports or {s: default_transport for s in SOURCES}
    policy = policy or BackoffPolicy()
    rng = rng or random.Random(0)

    raw_records: List[tuple] = []  # (source, record)
    source_failed = {s: False for s in SOURCES}
    any_live_or_cached = False

    for query in queries.queries:
        for source in SOURCES:
            if source not in transports or source_failed[source]:
                continue
            page: Optional[str] = None
            fetched_for_query = 0
            while True:
                key = f"{source}|{query}|{page or '0'}"
                batch_payload = cache.get(key) if cache is not None else None
                if batch_payload is not None:
                    payload = json.loads(batch_payload)
                    records, next_page = payload["records"], payload["next"]
                else:
                    try:
                        outcome = with_retry(
                            lambda q: fetch_source(
                                source,
                                q,
                                page,
                                transport=transports[source],
                                rate_manager=rate_manager,
                                limit=min(config.records_per_query, 100),
                            ),
                            policy,
                            primary=query,
                            rng=rng,
                            sleep=sleep,
                        )
                    except AttemptsExhaustedError:
                        log.warning("source %s unavailable, degrading", source)
                        source_failed[source] = True
                        stale = cache.get_stale(key) if cache is not None else None
                        if stale is None:
                            break
                        payload = json.loads(stale)
                        records, next_page = payload["records"], payload["next"]
                        raw_records.extend((source, r) for r in records)
                        any_live_or_cached = True
                        break
                    except ParseError as exc:
                        log.warning("skipping malformed batch from %s: %s", source, exc)
                        break
                    records = outcome.value.records
                    next_page = outcome.value.next_page
                    if cache is not None:
                        cache.put(key, json.dumps({"records": records, "next": next_page}).encode())
                raw_records.extend((source, r) for r in records)
                any_live_or_cached = True
                fetched_for_query += len(records)
                page = next_page
                if page is None or fetched_for_query >= config.records_per_query:
                    break

    if all(source_failed.values()) and not any_live_or_cached:
        raise AcquisitionFailedError("all sources unavailable and cache empty")

    papers: List[Paper] = []
    seen_ids = set()
    rejected = 0
    for source, record in raw_records:
        try:
            paper = normalize_record(record, source)
        except RecordRejected as exc:
            rejected += 1
            log.debug("record rejected (%s)", exc.reason)
            continue
        # Exact re-fetches of the same source record collapse by id here;
        # cross-source duplicates are handled by title dedup below.
        if paper.id in seen_ids:
            continue
        seen_ids.add(paper.id)
        papers.append(paper)

    fetched = len(papers)
    deduped = deduplicate(papers, config.title_similarity_threshold)
    kept, rejections = filter_corpus(deduped, config, now=now)
    log.info(
        "acquisition: fetched=%d deduplicated=%d filtered=%d rejections=%s",
        fetched, len(deduped), len(kept), rejections,
    )
    stats = CorpusStats(
        fetched=fetched,
        deduplicated=len(deduped),
        filtered=len(kept),
        final=len(kept),
    )
    return Corpus(
        topic=topic,
        papers=tuple(kept),
        stats=stats,
        created_at=now(),
        degraded=any(source_failed.values()),
    )
