"""[Author, Year] citation extraction and corpus resolution."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set

from litpipe.acquisition.models import Corpus, Paper
from litpipe.clustering.tfidf import tokenize

AMBIGUOUS = "__ambiguous__"

_BRACKET = re.compile(r"\[([^\[\]]+)\]")
_CITATION_PART = re.compile(r"^\s*(?P<author>[A-Za-z][\w.'\- ]*?)(?:\s+et\s+al\.?)?\s*,\s*(?P<year>\d{4})\s*$")


@dataclass(frozen=True)
class CitationKey:
    author_token: str
    year: int

    def render(self) -> str:
        return f"[{self.author_token}, {self.year}]"


def family_name(author: str) -> str:
    """First author's family name, approximated as the last name token."""
    tokens = [t for t in re.split(r"[\s,]+", author.strip()) if t]
    return tokens[-1] if tokens else ""


def extract_citations(text: str) -> Set[CitationKey]:
    """All bracketed [Author, Year] citations, including multi-citation
    brackets split on ";" and "et al." forms; deduplicated as a set."""
    keys: Set[CitationKey] = set()
    for match in _BRACKET.finditer(text):
        for part in match.group(1).split(";"):
            m = _CITATION_PART.match(part)
            if m:
                keys.add(CitationKey(m.group("author").strip(), int(m.group("year"))))
    return keys


def _context_sentence(text: str, key: CitationKey) -> str:
    pos = text.find(f"{key.author_token}")
    if pos < 0:
        return ""
    start = max(text.rfind(".", 0, pos), 0)
    end = text.find(".", pos)
    return text[start : end if end > 0 else len(text)]


def resolve_citations(
    keys: Sequence[CitationKey],
    corpus: Corpus,
    text: str = "",
) -> Dict[CitationKey, Optional[str]]:
    """Map citation keys to corpus paper ids.

    A key matches when the year equals and the author token is a
    case-insensitive prefix of the first author's family name. Two or more
    candidates are disambiguated by title-term overlap with the citing
    sentence; otherwise the key is marked ambiguous. Unresolved keys map to
    None, ambiguous ones to the AMBIGUOUS sentinel.
    """
    resolution: Dict[CitationKey, Optional[str]] = {}
    for key in keys:
        token = key.author_token.casefold()
        candidates: List[Paper] = [
            p
            for p in corpus.papers
            if p.year == key.year
            and p.authors
            and family_name(p.authors[0]).casefold().startswith(token)
        ]
        if not candidates:
            resolution[key] = None
        elif len(candidates) == 1:
            resolution[key] = candidates[0].id
        else:
            sentence_terms = set(tokenize(_context_sentence(text, key)))
            overlaps = [
                (len(sentence_terms & set(tokenize(p.title))), p) for p in candidates
            ]
            overlaps.sort(key=lambda pair: (-pair[0], pair[1].id))
            if overlaps[0][0] > 0 and (len(overlaps) == 1 or overlaps[0][0] > overlaps[1][0]):
                resolution[key] = overlaps[0][1].id
            else:
                resolution[key] = AMBIGUOUS
    return resolution


def resolved_ids(resolution: Dict[CitationKey, Optional[str]]) -> Set[str]:
    return {pid for pid in resolution.values() if pid and pid != AMBIGUOUS}
