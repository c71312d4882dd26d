"""Deterministic offline source transports for tests and demo runs.

Generates a synthetic scholarly corpus (seeded) and serves it through the
same transport interface as the live Semantic Scholar and arXiv clients,
including a configurable overlap of cross-source duplicates.
"""
from __future__ import annotations

import json
import random
from typing import Dict, List
from xml.sax.saxutils import escape

from litpipe.acquisition.sources import ARXIV_QUERY_URL, S2_SEARCH_URL

_SUBJECTS = [
    "language model agents", "retrieval-augmented generation", "instruction tuning",
    "preference optimization", "tool-using systems", "multi-agent collaboration",
    "chain-of-thought prompting", "synthetic data generation", "benchmark design",
    "safety evaluation", "program synthesis", "embodied planning",
]
_QUALIFIERS = [
    "A Survey of", "Benchmarking", "Scaling", "Rethinking", "Understanding",
    "Towards Robust", "Efficient", "Evaluating", "Grounding", "Aligning",
]
_FAMILIES = [
    "Chen", "Wang", "Li", "Zhang", "Liu", "Yang", "Kumar", "Garcia", "Martin",
    "Schmidt", "Tanaka", "Novak", "Silva", "Okafor", "Haddad", "Petrov",
]
_GIVEN = ["Alex", "Bo", "Chris", "Dana", "Eli", "Fatima", "Grace", "Hiro", "Ines", "Jon"]

_ABSTRACT_SENTENCES = [
    "We study {subject} through a controlled set of experiments spanning multiple model scales.",
    "Our analysis isolates the contribution of each architectural component to downstream accuracy.",
    "Results on standard benchmarks show consistent improvements over strong baselines.",
    "We release code, data splits, and evaluation scripts to support reproduction.",
    "Ablations reveal that data quality matters more than raw quantity in this regime.",
    "We further characterize failure modes and propose mitigations grounded in the error analysis.",
]


def synthetic_papers(n: int = 40, seed: int = 7) -> List[dict]:
    """n deterministic paper dicts with titles, authors, abstracts, years."""
    rng = random.Random(seed)
    papers = []
    for i in range(n):
        subject = _SUBJECTS[i % len(_SUBJECTS)]
        qualifier = _QUALIFIERS[rng.randrange(len(_QUALIFIERS))]
        title = f"{qualifier} {subject.title()}: Study {i}"
        family = _FAMILIES[rng.randrange(len(_FAMILIES))]
        given = _GIVEN[rng.randrange(len(_GIVEN))]
        sentences = [
            _ABSTRACT_SENTENCES[j % len(_ABSTRACT_SENTENCES)].format(subject=subject)
            for j in range(4 + rng.randrange(3))
        ]
        papers.append(
            {
                "title": title,
                "authors": [f"{given} {family}", f"{_GIVEN[(i + 3) % len(_GIVEN)]} {_FAMILIES[(i + 5) % len(_FAMILIES)]}"],
                "year": 2020 + (i % 6),
                "abstract": " ".join(sentences),
                "citations": rng.randrange(0, 400),
                "s2_id": f"s2-{seed}-{i:04d}",
                "arxiv_id": f"24{i:02d}.{seed:05d}",
            }
        )
    return papers


def mock_transports(
    n: int = 40,
    seed: int = 7,
    arxiv_overlap: int = 10,
    fail: bool = False,
) -> Dict[str, object]:
    """Transports serving the synthetic corpus; ``fail=True`` makes both 503.

    Semantic Scholar serves every paper; arXiv serves the last
    ``arxiv_overlap`` papers (duplicates by title) plus nothing unique, so
    dedup always has work to do.
    """
    papers = synthetic_papers(n, seed)

    def s2_transport(url: str, params: Dict[str, str]):
        if fail:
            return 503, b"unavailable"
        assert url == S2_SEARCH_URL
        data = [
            {
                "paperId": p["s2_id"],
                "title": p["title"],
                "authors": [{"name": a} for a in p["authors"]],
                "year": p["year"],
                "abstract": p["abstract"],
                "citationCount": p["citations"],
                "venue": "Synthetic Conference",
                "url": f"https://example.org/{p['s2_id']}",
            }
            for p in papers
        ]
        return 200, json.dumps({"data": data, "next": None}).encode()

    def arxiv_transport(url: str, params: Dict[str, str]):
        if fail:
            return 503, b"unavailable"
        assert url == ARXIV_QUERY_URL
        entries = []
        for p in papers[-arxiv_overlap:]:
            authors = "".join(
                f"<author><name>{escape(a)}</name></author>" for a in p["authors"]
            )
            entries.append(
                f"<entry><id>http://arxiv.org/abs/{p['arxiv_id']}</id>"
                f"<title>{escape(p['title'])}</title>"
                f"<summary>{escape(p['abstract'])}</summary>"
                f"<published>{p['year']}-03-01T00:00:00Z</published>{authors}</entry>"
            )
        feed = (
            '<?xml version="1.0" encoding="UTF-8"?>'
            '<feed xmlns="http://www.w3.org/2005/Atom">' + "".join(entries) + "</feed>"
        )
        return 200, feed.encode()

    return {"semantic-scholar": s2_transport, "arxiv": arxiv_transport}
