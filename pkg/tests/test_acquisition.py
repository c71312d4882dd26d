import json
import random
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from litpipe.acquisition.acquire import acquire
from litpipe.acquisition.dedup import deduplicate, normalize_title, title_similarity
from litpipe.acquisition.expand import MAX_QUERIES, MIN_QUERIES, expand_queries
from litpipe.acquisition.filtering import adaptive_min_citations, filter_corpus
from litpipe.acquisition.models import AcquisitionConfig, Topic
from litpipe.acquisition.sources import (
    RecordRejected,
    fetch_source,
    normalize_record,
)
from litpipe.errors import AcquisitionFailedError, ParseError, RateLimitedError
from litpipe.infra.backoff import BackoffPolicy
from litpipe.infra.cache import DiskCache
from litpipe.mocksources import mock_transports, synthetic_papers

from .conftest import FIXED_NOW, make_paper
from .oracles import levenshtein_reference


class TestQueryExpansion:
    def test_count_within_bounds_for_known_topic(self):
        qs = expand_queries(Topic("large language model agents"))
        assert MIN_QUERIES <= len(qs) <= MAX_QUERIES

    def test_verbatim_first(self):
        qs = expand_queries(Topic("graph neural networks"))
        assert qs.queries[0] == "graph neural networks"
        assert qs.provenance[0] == "verbatim"

    def test_rule_families_represented(self):
        qs = expand_queries(Topic("retrieval-augmented generation for question answering"))
        tags = set(qs.provenance)
        assert "related-term" in tags
        assert "boolean-compound" in tags

    @given(
        st.text(
            alphabet=string.ascii_lowercase + " ",
            min_size=3,
            max_size=40,
        ).filter(lambda s: s.strip() and len(s.split()) >= 1)
    )
    @settings(max_examples=60, deadline=None)
    def test_count_property_arbitrary_topics(self, text):
        qs = expand_queries(Topic(text))
        assert MIN_QUERIES <= len(qs) <= MAX_QUERIES
        folded = [q.casefold() for q in qs.queries]
        assert len(set(folded)) == len(folded)


class TestTitleSimilarity:
    def test_identical_after_normalization(self):
        assert title_similarity("Deep Learning!", "deep   learning") == 1.0

    def test_empty_vs_empty(self):
        assert title_similarity("", "") == 1.0
        assert title_similarity("?!", "...") == 1.0  # both normalize to empty

    def test_against_reference_random_pairs(self):
        rng = random.Random(5)
        alphabet = "abcde "
        for _ in range(200):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 15)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 15)))
            na, nb = normalize_title(a), normalize_title(b)
            if not na and not nb:
                assert title_similarity(a, b) == 1.0
                continue
            expected = 1.0 - levenshtein_reference(na, nb) / max(len(na), len(nb))
            assert title_similarity(a, b) == pytest.approx(expected, abs=1e-12)

    def test_symmetry(self):
        assert title_similarity("alpha beta", "alpha gamma") == title_similarity(
            "alpha gamma", "alpha beta"
        )


class TestDeduplicate:
    def test_survivor_prefers_citations_then_source(self):
        a = make_paper(title="Scaling Laws for Models", citations=5, source="arxiv")
        b = make_paper(title="Scaling laws for models", citations=50, source="semantic-scholar")
        kept = deduplicate([a, b], 0.90)
        assert kept == [b]

    def test_source_priority_breaks_citation_ties(self):
        a = make_paper(title="Scaling Laws for Models", citations=5, source="arxiv")
        b = make_paper(title="Scaling laws for models!", citations=5, source="semantic-scholar")
        kept = deduplicate([a, b], 0.90)
        assert kept == [b]

    def test_no_retained_pair_at_or_above_threshold(self):
        papers = [make_paper(title=f"{base} Study {i}") for i, base in enumerate(
            ["Benchmarking Agents", "Benchmarking Agents", "Safety Evaluation",
             "Program Synthesis", "Program Synthesis Redux"] * 8
        )]
        kept = deduplicate(papers, 0.90)
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                assert title_similarity(kept[i].title, kept[j].title) < 0.90

    def test_idempotent(self):
        papers = [make_paper(title=f"Agents Study {i % 7}") for i in range(30)]
        once = deduplicate(papers, 0.90)
        twice = deduplicate(once, 0.90)
        assert [p.id for p in once] == [p.id for p in twice]

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_idempotence_property(self, seed):
        rng = random.Random(seed)
        titles = [
            " ".join(rng.choice(["graph", "neural", "agents", "safety", "study", "deep"])
                     for _ in range(rng.randrange(2, 6)))
            for _ in range(rng.randrange(1, 15))
        ]
        papers = [make_paper(title=t, citations=rng.randrange(100)) for t in titles]
        once = deduplicate(papers, 0.90)
        assert [p.id for p in deduplicate(once, 0.90)] == [p.id for p in once]


class TestFiltering:
    def test_year_window(self):
        config = AcquisitionConfig(year_min=2020, year_max=2025)
        old = make_paper(year=2019, citations=100)
        kept, rejections = filter_corpus([old], config, now=lambda: FIXED_NOW)
        assert kept == []
        assert rejections == {"year": 1, "abstract": 0, "citations": 0}

    def test_short_abstract_rejected(self):
        config = AcquisitionConfig()
        short = make_paper(abstract="Too short.", citations=100)
        kept, rejections = filter_corpus([short], config, now=lambda: FIXED_NOW)
        assert kept == []
        assert rejections["abstract"] == 1

    def test_adaptive_citation_floor(self):
        config = AcquisitionConfig(min_citations=None)
        recent = make_paper(year=2024, citations=0)
        older = make_paper(year=2021, citations=0)
        assert adaptive_min_citations(recent, config, FIXED_NOW) == 0
        assert adaptive_min_citations(older, config, FIXED_NOW) == 1
        kept, rejections = filter_corpus([recent, older], config, now=lambda: FIXED_NOW)
        assert kept == [recent]
        assert rejections["citations"] == 1

    def test_explicit_floor_overrides_adaptive(self):
        config = AcquisitionConfig(min_citations=5)
        p = make_paper(year=2024, citations=4)
        kept, _ = filter_corpus([p], config, now=lambda: FIXED_NOW)
        assert kept == []

    def test_first_failing_rule_counted(self):
        config = AcquisitionConfig()
        p = make_paper(year=2019, abstract="x", citations=0)
        _, rejections = filter_corpus([p], config, now=lambda: FIXED_NOW)
        assert rejections == {"year": 1, "abstract": 0, "citations": 0}


class TestSources:
    def test_s2_429_then_success_retried_by_caller(self):
        calls = {"n": 0}

        def transport(url, params):
            calls["n"] += 1
            if calls["n"] <= 2:
                return 429, b""
            return 200, json.dumps({"data": [], "next": None}).encode()

        with pytest.raises(RateLimitedError):
            fetch_source("semantic-scholar", "q", transport=transport)
        with pytest.raises(RateLimitedError):
            fetch_source("semantic-scholar", "q", transport=transport)
        batch = fetch_source("semantic-scholar", "q", transport=transport)
        assert batch.records == []

    def test_malformed_json_raises_parse_error(self):
        with pytest.raises(ParseError):
            fetch_source(
                "semantic-scholar", "q", transport=lambda u, p: (200, b"not json")
            )

    def test_arxiv_atom_parsing(self):
        transports = mock_transports(n=5, arxiv_overlap=5)
        batch = fetch_source("arxiv", "q", transport=transports["arxiv"], limit=100)
        assert len(batch.records) == 5
        assert batch.next_page is None
        paper = normalize_record(batch.records[0], "arxiv")
        assert paper.source == "arxiv"
        assert paper.citation_count == 0
        assert paper.year == 2020

    def test_normalize_rejects_missing_title(self):
        with pytest.raises(RecordRejected) as exc_info:
            normalize_record({"title": "", "year": 2022, "paperId": "x"}, "semantic-scholar")
        assert exc_info.value.reason == "no-title"

    def test_normalize_year_fallback_to_publication_date(self):
        paper = normalize_record(
            {"title": "T", "publicationDate": "2023-05-01", "paperId": "x"},
            "semantic-scholar",
        )
        assert paper.year == 2023


class TestAcquire:
    def _run(self, tmp_path, **kwargs):
        topic = Topic("large language model agents")
        defaults = dict(
            transports=mock_transports(n=40, seed=7),
            cache=DiskCache(tmp_path / "cache", now=lambda: FIXED_NOW),
            policy=BackoffPolicy(max_attempts=2),
            now=lambda: FIXED_NOW,
            sleep=lambda _t: None,
        )
        defaults.update(kwargs)
        return acquire(topic, **defaults)

    def test_end_to_end_stats_consistent(self, tmp_path):
        corpus = self._run(tmp_path)
        assert corpus.stats.final == len(corpus)
        assert corpus.stats.fetched >= corpus.stats.deduplicated >= corpus.stats.final
        assert not corpus.degraded
        # arXiv overlap papers collapse into their semantic-scholar twins.
        assert corpus.stats.deduplicated < corpus.stats.fetched

    def test_ids_unique_and_sources_normalized(self, tmp_path):
        corpus = self._run(tmp_path)
        ids = [p.id for p in corpus.papers]
        assert len(set(ids)) == len(ids)
        assert all(p.source in ("semantic-scholar", "arxiv") for p in corpus.papers)

    def test_both_sources_down_without_cache_fails(self, tmp_path):
        with pytest.raises(AcquisitionFailedError):
            self._run(tmp_path, transports=mock_transports(fail=True))

    def test_degraded_run_from_stale_cache(self, tmp_path):
        cache = DiskCache(tmp_path / "cache", now=lambda: FIXED_NOW)
        live = self._run(tmp_path, cache=cache)
        # A day later every cache entry is expired and both sources are down,
        # so the run must fall back to stale entries and flag itself degraded.
        stale_cache = DiskCache(tmp_path / "cache", now=lambda: FIXED_NOW + 25 * 3600)
        degraded = self._run(
            tmp_path, transports=mock_transports(fail=True), cache=stale_cache
        )
        assert degraded.degraded
        assert {p.id for p in degraded.papers} == {p.id for p in live.papers}

    def test_save_load_round_trip(self, tmp_path):
        corpus = self._run(tmp_path)
        path = tmp_path / "corpus.json"
        corpus.save(path)
        from litpipe.acquisition.models import Corpus

        loaded = Corpus.load(path)
        assert loaded.to_dict() == corpus.to_dict()


def test_synthetic_papers_deterministic():
    assert synthetic_papers(20, seed=3) == synthetic_papers(20, seed=3)
    assert synthetic_papers(20, seed=3) != synthetic_papers(20, seed=4)
