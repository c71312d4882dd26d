import sys

import numpy as np
import pytest
from fastapi.testclient import TestClient

from litpipe_sidecar.app import MAX_TEXTS, create_app
from litpipe_sidecar.encoders import EMBEDDING_DIM, EncoderLoadError, HashEncoder


def _verdict(num, name, passed):
    print(f"[{num:02d}] {name}: {'PASS' if passed else 'FAIL'}", file=sys.__stdout__)
    assert passed, f"criterion {num} ({name}) failed"


@pytest.fixture
def client():
    app = create_app(loader=lambda: HashEncoder())
    with TestClient(app) as c:
        yield c


class TestEmbed:
    def test_single_text_shape(self, client):
        resp = client.post("/embed", json={"texts": ["hello"]})
        assert resp.status_code == 200
        payload = resp.json()
        assert payload["dim"] == EMBEDDING_DIM
        assert len(payload["vectors"]) == 1
        assert len(payload["vectors"][0]) == EMBEDDING_DIM

    def test_same_text_twice_identical(self, client):
        resp = client.post("/embed", json={"texts": ["alpha", "alpha"]})
        vectors = resp.json()["vectors"]
        assert vectors[0] == vectors[1]

    def test_empty_list_is_400(self, client):
        assert client.post("/embed", json={"texts": []}).status_code == 400

    def test_empty_string_item_is_400(self, client):
        assert client.post("/embed", json={"texts": ["ok", ""]}).status_code == 400

    def test_oversize_is_413(self, client):
        texts = [f"t{i}" for i in range(MAX_TEXTS + 1)]
        assert client.post("/embed", json={"texts": texts}).status_code == 413

    def test_normalize_flag(self, client):
        resp = client.post("/embed", json={"texts": ["beta gamma"], "normalize": True})
        vec = np.asarray(resp.json()["vectors"][0], dtype=np.float64)
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-6)


class TestHealthz:
    def test_after_startup(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        payload = resp.json()
        assert payload["status"] == "ok"
        assert payload["dim"] == EMBEDDING_DIM

    def test_503_when_load_fails(self):
        def broken_loader():
            raise EncoderLoadError("no such model")

        app = create_app(loader=broken_loader)
        with TestClient(app) as c:
            assert c.get("/healthz").status_code == 503
            assert c.post("/embed", json={"texts": ["x"]}).status_code == 503


def test_13_sidecar_contract(client):
    texts = [f"document number {i} about topic {i % 7}" for i in range(100)]
    resp = client.post("/embed", json={"texts": texts})
    ok = resp.status_code == 200
    payload = resp.json()
    vectors = payload["vectors"]
    ok = ok and len(vectors) == 100
    ok = ok and all(len(v) == EMBEDDING_DIM for v in vectors)
    # Order: each position must equal the vector for that exact text.
    reference = HashEncoder()
    for i in (0, 1, 42, 99):
        expected = reference.encode([texts[i]])[0]
        ok = ok and vectors[i] == pytest.approx(expected, abs=0)
    repeat = client.post("/embed", json={"texts": texts}).json()["vectors"]
    ok = ok and repeat == vectors
    health = client.get("/healthz").json()
    ok = ok and health["dim"] == 384
    _verdict(13, "sidecar-embed-contract", ok)


def _small_corpus(n, models):
    papers = tuple(
        models.Paper(
            id=f"paper-{i:03d}",
            title=f"Study {i} of retrieval augmented systems",
            authors=("Alex Chen", "Bo Wang"),
            year=2022,
            abstract=f"Abstract {i}: " + "empirical analysis of dense retrieval. " * 8,
            citation_count=10 + i,
            source="semantic-scholar",
            source_id=f"p{i:03d}",
        )
        for i in range(n)
    )
    stats = models.CorpusStats(fetched=n, deduplicated=n, filtered=n, final=n)
    return models.Corpus(
        topic=models.Topic(text="retrieval systems"),
        papers=papers,
        stats=stats,
        created_at=1735689600.0,
    )


def test_14_primary_client_integration():
    pytest.importorskip("litpipe")

    from litpipe.acquisition import models
    from litpipe.embedding.pipeline import embed_corpus
    from litpipe.embedding.provider import SidecarEmbeddingClient

    app = create_app(loader=lambda: HashEncoder())
    # TestClient is a sync httpx.Client, so it can serve as the injected
    # transport for the primary package's sidecar client.
    with TestClient(app) as http_client:
        provider = SidecarEmbeddingClient(
            endpoint="http://testserver", http_client=http_client
        )

        corpus = _small_corpus(40, models)
        matrix = embed_corpus(corpus, provider)
        ok = matrix.vectors.shape == (40, EMBEDDING_DIM)
        norms = np.linalg.norm(matrix.vectors.astype(np.float64), axis=1)
        ok = ok and bool(np.all(np.abs(norms - 1.0) <= 1e-6))
        ok = ok and matrix.normalized
        # Alignment: re-embedding the first paper alone matches row 0.
        single = embed_corpus(_small_corpus(1, models), provider)
        ok = ok and bool(np.array_equal(single.vectors[0], matrix.vectors[0]))
    _verdict(14, "primary-client-sidecar-integration", ok)
