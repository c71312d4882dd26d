"""Quality filtering: year range, abstract completeness, citation floor."""
from __future__ import annotations

import datetime
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

from litpipe.acquisition.models import AcquisitionConfig, Paper

log = logging.getLogger(__name__)

RECENT_MONTHS = 18  # papers newer than this keep the zero-citation floor


@dataclass
class FilterOutcome:
    kept: List[Paper]
    rejections: dict = field(default_factory=lambda: {"year": 0, "abstract": 0, "citations": 0})


def adaptive_min_citations(paper: Paper, config: AcquisitionConfig, now: float) -> int:
    """Citation floor: configured value if set, else 0 for recent papers, 1 otherwise.

    Recency is approximated from the publication year alone (months within
    the year are unknown), so a paper dated in the current or previous year
    counts as recent.
    """
    if config.min_citations is not None:
        return config.min_citations
    current_year = datetime.datetime.fromtimestamp(now, tz=datetime.timezone.utc).year
    cutoff_years = RECENT_MONTHS / 12.0
    return 0 if current_year - paper.year <= cutoff_years else 1


def filter_corpus(
    papers: Sequence[Paper],
    config: AcquisitionConfig,
    now: Callable[[], float] = time.time,
) -> Tuple[List[Paper], dict]:
    """Apply all three quality predicates, preserving order.

    Returns (kept, per-rule rejection counts); a paper failing several rules
    is counted against the first failing one (year, abstract, citations).
    """
    t = now()
    kept: List[Paper] = []
    rejections = {"year": 0, "abstract": 0, "citations": 0}
    for p in papers:
        if not config.year_min <= p.year <= config.year_max:
            rejections["year"] += 1
            continue
        if len(p.abstract.strip()) < config.min_abstract_chars:
            rejections["abstract"] += 1
            continue
        if p.citation_count < adaptive_min_citations(p, config, t):
            rejections["citations"] += 1
            continue
        kept.append(p)
    if not kept and papers:
        log.warning("quality filtering removed every paper (%s)", rejections)
    return kept, rejections
