"""Rule-table-driven query expansion: one topic -> 20-30 search queries."""
from __future__ import annotations

from typing import List, Optional, Tuple

from litpipe.acquisition import vocab
from litpipe.acquisition.models import QuerySet, Topic
from litpipe.errors import InvalidInputError

MIN_QUERIES = 20
MAX_QUERIES = 30

# Per-rule quotas applied before padding; keeps every rule family represented.
_QUOTAS = [("synonym", 5), ("acronym", 4), ("boolean-compound", 6), ("related-term", 14)]


def _replace_token(tokens: List[str], index: int, replacement: str) -> str:
    out = tokens[:index] + [replacement] + tokens[index + 1 :]
    return " ".join(out)


def _candidates(text: str) -> List[Tuple[str, str]]:
    """Ordered (query, rule-tag) candidates, duplicates included."""
    tokens = text.split()
    folded = [t.casefold() for t in tokens]
    cands: List[Tuple[str, str]] = [(text, "verbatim")]

    for i, tok in enumerate(folded):
        for syn in vocab.SYNONYMS.get(tok, []):
            cands.append((_replace_token(tokens, i, syn), "synonym"))

    for i, tok in enumerate(folded):
        expansion = vocab.ACRONYMS.get(tok)
        if expansion:
            cands.append((_replace_token(tokens, i, expansion), "acronym"))
    # Contraction: an expansion phrase present in the topic becomes its acronym.
    lower = text.casefold()
    for acro, expansion in vocab.ACRONYMS.items():
        if expansion in lower:
            contracted = lower.replace(expansion, acro.upper())
            cands.append((contracted, "acronym"))

    for tok in folded:
        for rel in vocab.RELATED.get(tok, []):
            cands.append((rel, "related-term"))
    if len(tokens) > 1:
        cands.append((f"{tokens[0]}-based {' '.join(tokens[1:])}", "related-term"))
    for tmpl in vocab.RELATED_TEMPLATES:
        cands.append((tmpl.format(t=text), "related-term"))

    for tmpl in vocab.BOOLEAN_TEMPLATES:
        cands.append((tmpl.format(t=text), "boolean-compound"))
    return cands


def expand_queries(topic: Topic, provider=None) -> QuerySet:
    """Expand a topic into 20-30 diverse, deduplicated queries.

    Deterministic for a given topic and rule table. ``provider``, when
    given, may contribute extra candidates (tagged ``related-term``) but the
    default path is fully offline.
    """
    text = topic.text.strip()
    if not text:
        raise InvalidInputError("topic text must be non-empty")

    cands = _candidates(text)
    if provider is not None:
        for extra in _provider_candidates(provider, text):
            cands.append((extra, "related-term"))

    # Dedup after case-folding, first occurrence wins.
    seen = set()
    unique: List[Tuple[str, str]] = []
    for query, tag in cands:
        q = " ".join(query.split())
        if not q:
            continue
        key = q.casefold()
        if key in seen:
            continue
        seen.add(key)
        unique.append((q, tag))

    selected = [unique[0]]  # verbatim always first
    remaining = unique[1:]
    taken = set()
    for rule, quota in _QUOTAS:
        count = 0
        for idx, (q, tag) in enumerate(remaining):
            if idx in taken or tag != rule:
                continue
            selected.append((q, tag))
            taken.add(idx)
            count += 1
            if count >= quota or len(selected) >= MAX_QUERIES:
                break
        if len(selected) >= MAX_QUERIES:
            break
    # Pad from whatever is left, preserving candidate order.
    if len(selected) < MIN_QUERIES:
        for idx, (q, tag) in enumerate(remaining):
            if idx in taken:
                continue
            selected.append((q, tag))
            if len(selected) >= MIN_QUERIES:
                break

    queries = tuple(q for q, _ in selected)
    tags = tuple(t for _, t in selected)
    return QuerySet(queries=queries, provenance=tags)


def _provider_candidates(provider, text: str) -> List[str]:
    try:
        response = provider.generate(
            prompt=f"List additional short search queries for the topic: {text}",
            max_output_tokens=256,
        )
    except Exception:
        return []
    return [line.strip("- ").strip() for line in response.text.splitlines() if line.strip()]
