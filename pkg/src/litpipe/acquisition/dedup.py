"""Title-similarity dedup: normalized Levenshtein over normalized titles."""
from __future__ import annotations

import re
from typing import List, Sequence

from litpipe.acquisition.models import Paper, SOURCE_PRIORITY
from litpipe.errors import InvalidInputError

_PUNCT = re.compile(r"[^\w\s]", re.UNICODE)


def normalize_title(title: str) -> str:
    """Casefold, strip punctuation, collapse whitespace."""
    t = _PUNCT.sub(" ", title.casefold())
    return " ".join(t.split())


def _levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def title_similarity(a: str, b: str) -> float:
    """Symmetric similarity in [0,1]; 1.0 iff normalized titles are identical."""
    na, nb = normalize_title(a), normalize_title(b)
    if not na and not nb:
        return 1.0
    longest = max(len(na), len(nb))
    return 1.0 - _levenshtein(na, nb) / longest


def _survivor(group: Sequence[int], papers: Sequence[Paper]) -> int:
    def rank(idx: int):
        p = papers[idx]
        return (-p.citation_count, SOURCE_PRIORITY[p.source], p.source_id)

    return min(group, key=rank)


def deduplicate(papers: Sequence[Paper], threshold: float = 0.90) -> List[Paper]:
    """Remove near-duplicate titles, keeping one survivor per duplicate group.

    Groups are connected components under similarity >= threshold; the
    survivor has the highest citation count, ties broken by source priority
    (semantic-scholar before arxiv), then lexicographic source_id.
    Idempotent: re-running on the output is a no-op.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidInputError("threshold must be in [0,1]")
    n = len(papers)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    normalized = [normalize_title(p.title) for p in papers]
    for i in range(n):
        for j in range(i + 1, n):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            if title_similarity(normalized[i], normalized[j]) >= threshold:
                parent[rj] = ri

    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    keep = sorted(_survivor(members, papers) for members in groups.values())
    return [papers[i] for i in keep]
