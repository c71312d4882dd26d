"""TF-IDF key-term extraction over clusters, and cluster naming."""
from __future__ import annotations

import logging
import math
import re
from collections import Counter
from typing import List, Optional, Sequence, Tuple

from litpipe.errors import InvalidInputError

log = logging.getLogger(__name__)

TOP_TERMS = 5

# Shipped English stopword list; small on purpose.
STOPWORDS = frozenset(
    """a about above after again against all am an and any are as at be because
    been before being below between both but by can cannot could did do does
    doing down during each few for from further had has have having he her here
    hers herself him himself his how i if in into is it its itself just me more
    most my myself no nor not now of off on once only or other our ours
    ourselves out over own same she should so some such than that the their
    theirs them themselves then there these they this those through to too
    under until up very was we were what when where which while who whom why
    will with would you your yours yourself yourselves using based via towards
    toward upon also may might must shall""".split()
)

_TOKEN = re.compile(r"[a-z0-9][a-z0-9'-]*")


def tokenize(text: str) -> List[str]:
    """Case-folded content tokens with punctuation and stopwords removed."""
    return [t for t in _TOKEN.findall(text.casefold()) if t not in STOPWORDS and len(t) > 1]


def terms_of(text: str) -> List[str]:
    """Unigrams plus bigrams over the stopword-filtered token stream."""
    tokens = tokenize(text)
    bigrams = [f"{a} {b}" for a, b in zip(tokens, tokens[1:])]
    return tokens + bigrams


def tfidf_terms(
    cluster_docs: Sequence[str],
    top_n: int = TOP_TERMS,
) -> List[List[Tuple[str, float]]]:
    """Ranked (term, score) lists per cluster.

    TF(w, C_j) counts w in cluster j's concatenated text; IDF(w) is the
    natural log of K over the number of clusters containing w. Ties break
    lexicographically. A term present in every cluster scores exactly 0.
    """
    k = len(cluster_docs)
    if k < 1:
        raise InvalidInputError("at least one cluster document required")
    counts = [Counter(terms_of(doc)) for doc in cluster_docs]
    df = Counter()
    for c in counts:
        df.update(c.keys())
    results = []
    for c in counts:
        scored = [(term, tf * math.log(k / df[term])) for term, tf in c.items()]
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        results.append(scored[:top_n])
    return results


def name_cluster(terms: Sequence[str], generator=None) -> str:
    """Human-readable cluster name from its ranked key terms.

    With no provider (or on provider failure) the deterministic fallback is
    the title-cased top two terms joined by " and ".
    """
    if not terms:
        raise InvalidInputError("terms must be non-empty")
    fallback = " and ".join(t.title() for t in terms[:2])
    if generator is None:
        return fallback
    try:
        response = generator.generate(
            prompt=(
                "Propose a concise research-theme title (6 words max) for a group of "
                f"papers whose key terms are: {', '.join(terms[:TOP_TERMS])}.\n"
                "Reply with the title only."
            ),
            max_output_tokens=32,
        )
        name = response.text.strip().splitlines()[0].strip().strip('"')
        if name and len(name.split()) <= 6:
            return name
        return fallback
    except Exception as exc:
        log.warning("cluster naming provider failed (%s); using fallback", exc)
        return fallback
