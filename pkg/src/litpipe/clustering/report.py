"""Cluster profiles, relationships, the cluster model, and its reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from litpipe.acquisition.models import Corpus
from litpipe.clustering.kmeans import ClusterAssignment
from litpipe.clustering.metrics import (
    ClusterDiagnostics,
    all_confidences,
    intercluster_strength,
    silhouette,
    strength_label,
    validity_indices,
)
from litpipe.clustering.select_k import select_k
from litpipe.clustering.tfidf import name_cluster, tfidf_terms
from litpipe.embedding.pipeline import EmbeddingMatrix, paper_text
from litpipe.errors import ConsistencyError, InvalidInputError

METHOD_STRING = "KMeans clustering with sentence-transformers embeddings"


@dataclass(frozen=True)
class ClusterProfile:
    index: int
    name: str
    key_terms: Tuple[str, ...]
    size: int
    avg_year: float
    avg_citations: float
    mean_confidence: float
    member_ids: Tuple[str, ...]
    sample_titles: Tuple[Tuple[str, int], ...] = ()  # (title, year), by citations

    def __post_init__(self):
        if self.size != len(self.member_ids) or self.size < 1:
            raise InvalidInputError("profile size must equal member count and be >= 1")
        if not self.key_terms:
            raise InvalidInputError("key_terms must be non-empty")

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "key_terms": list(self.key_terms),
            "size": self.size,
            "avg_year": self.avg_year,
            "avg_citations": self.avg_citations,
            "mean_confidence": self.mean_confidence,
            "member_ids": list(self.member_ids),
            "sample_titles": [list(t) for t in self.sample_titles],
        }


@dataclass(frozen=True)
class ClusterRelationship:
    pair: Tuple[int, int]
    strength: float
    label: str

    def to_dict(self) -> dict:
        return {"pair": list(self.pair), "strength": self.strength, "label": self.label}


@dataclass
class ClusterModel:
    topic: str
    k: int
    seed: int
    labels: List[int]
    centroids: List[List[float]]
    diagnostics: Dict[str, float]
    k_scores: Dict[int, float]
    profiles: List[ClusterProfile]
    relationships: List[ClusterRelationship]
    method: str = METHOD_STRING
    generated_at: float = 0.0

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "topic": self.topic,
            "K": self.k,
            "seed": self.seed,
            "method": self.method,
            "generated_at": self.generated_at,
            "labels": self.labels,
            "centroids": self.centroids,
            "diagnostics": self.diagnostics,
            "k_scores": {str(k): v for k, v in self.k_scores.items()},
            "profiles": [p.to_dict() for p in self.profiles],
            "relationships": [r.to_dict() for r in self.relationships],
        }

    def save(self, path: Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: Path) -> "ClusterModel":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        profiles = [
            ClusterProfile(
                index=p["index"],
                name=p["name"],
                key_terms=tuple(p["key_terms"]),
                size=p["size"],
                avg_year=p["avg_year"],
                avg_citations=p["avg_citations"],
                mean_confidence=p["mean_confidence"],
                member_ids=tuple(p["member_ids"]),
                sample_titles=tuple((t[0], t[1]) for t in p.get("sample_titles", [])),
            )
            for p in d["profiles"]
        ]
        relationships = [
            ClusterRelationship(tuple(r["pair"]), r["strength"], r["label"])
            for r in d["relationships"]
        ]
        return cls(
            topic=d["topic"],
            k=d["K"],
            seed=d["seed"],
            labels=d["labels"],
            centroids=d["centroids"],
            diagnostics=d["diagnostics"],
            k_scores={int(k): v for k, v in d["k_scores"].items()},
            profiles=profiles,
            relationships=relationships,
            method=d.get("method", METHOD_STRING),
            generated_at=d.get("generated_at", 0.0),
        )


def build_profiles(
    corpus: Corpus,
    matrix: EmbeddingMatrix,
    assignment: ClusterAssignment,
    generator=None,
) -> List[ClusterProfile]:
    X = matrix.vectors.astype(np.float64)
    confidences = all_confidences(X, assignment.labels, assignment.centroids)
    docs = []
    for j in range(assignment.k):
        members = [i for i in range(len(corpus)) if assignment.labels[i] == j]
        docs.append(" ".join(paper_text(corpus.papers[i]) for i in members))
    term_lists = tfidf_terms(docs)

    profiles = []
    for j in range(assignment.k):
        members = [i for i in range(len(corpus)) if assignment.labels[i] == j]
        papers = [corpus.papers[i] for i in members]
        terms = tuple(term for term, _ in term_lists[j]) or ("misc",)
        samples = sorted(papers, key=lambda p: (-p.citation_count, p.title))[:5]
        profiles.append(
            ClusterProfile(
                index=j,
                name=name_cluster(list(terms), generator),
                key_terms=terms,
                size=len(members),
                avg_year=float(np.mean([p.year for p in papers])),
                avg_citations=float(np.mean([p.citation_count for p in papers])),
                mean_confidence=float(np.mean([confidences[i] for i in members])),
                member_ids=tuple(p.id for p in papers),
                sample_titles=tuple((p.title, p.year) for p in samples),
            )
        )
    return profiles


def build_relationships(assignment: ClusterAssignment) -> List[ClusterRelationship]:
    rels = []
    for j in range(assignment.k):
        for m in range(j + 1, assignment.k):
            s = intercluster_strength(assignment.centroids, j, m)
            rels.append(ClusterRelationship(pair=(j, m), strength=s, label=strength_label(s)))
    rels.sort(key=lambda r: (-r.strength, r.pair))
    return rels


def cluster_corpus(
    corpus: Corpus,
    matrix: EmbeddingMatrix,
    k_min: int = 5,
    k_max: int = 15,
    seed: int = 0,
    generator=None,
    generated_at: float = 0.0,
) -> ClusterModel:
    """Full clustering stage: K selection, diagnostics, profiles, relationships."""
    if len(corpus) != len(matrix):
        raise ConsistencyError("corpus and embedding matrix sizes differ")
    X = matrix.vectors.astype(np.float64)
    selection = select_k(X, k_min, k_max, seed=seed)
    assignment = selection.assignment
    diag = silhouette(X, assignment.labels)
    ch, db = validity_indices(X, assignment.labels)
    profiles = build_profiles(corpus, matrix, assignment, generator)
    relationships = build_relationships(assignment)
    return ClusterModel(
        topic=corpus.topic.text,
        k=assignment.k,
        seed=seed,
        labels=[int(x) for x in assignment.labels],
        centroids=[[float(v) for v in row] for row in assignment.centroids],
        diagnostics={
            "silhouette": diag.silhouette,
            "calinski_harabasz": ch,
            "davies_bouldin": db,
        },
        k_scores=selection.scores,
        profiles=profiles,
        relationships=relationships,
        generated_at=generated_at,
    )


def build_cluster_report(
    corpus: Corpus,
    model: ClusterModel,
    generated_stamp: str = "",
) -> str:
    """Markdown clustering report mirroring the JSON model after rounding."""
    n = len(corpus)
    if n != len(model.labels):
        raise ConsistencyError("corpus size does not match cluster labels")
    if sum(p.size for p in model.profiles) != n:
        raise ConsistencyError("profile sizes do not sum to corpus size")

    lines = [f"# {model.topic} - Clustering Report", ""]
    if generated_stamp:
        lines += [f"Generated: {generated_stamp}", ""]
    avg_size = n / model.k
    lines += [
        "## Summary Statistics",
        "",
        f"- **Total Papers**: {n}",
        f"- **Number of Clusters**: {model.k}",
        f"- **Clustering Method**: {model.method}",
        f"- **Average Cluster Size**: {avg_size:.1f}",
        "",
        "## Clustering Quality Metrics",
        "",
        f"- **Silhouette Score**: {model.diagnostics['silhouette']:.3f} (range: -1 to 1, higher is better)",
        f"- **Calinski-Harabasz Score**: {model.diagnostics['calinski_harabasz']:.1f} (higher is better)",
        f"- **Davies-Bouldin Score**: {model.diagnostics['davies_bouldin']:.3f} (lower is better)",
        "",
        "## Cluster Size Distribution",
        "",
    ]
    for p in model.profiles:
        pct = 100.0 * p.size / n
        plural = "paper" if p.size == 1 else "papers"
        lines.append(f"- **{p.name}**: {p.size} {plural} ({pct:.1f}%)")
    lines += ["", "## Detailed Cluster Analysis", ""]
    for p in model.profiles:
        lines += [
            f"### Cluster {p.index}: {p.name}",
            "",
            "*Statistics:*",
            "",
            f"- Papers: {p.size}",
            f"- Average Year: {p.avg_year:.1f}",
            f"- Average Citations: {p.avg_citations:.1f}",
            f"- Cluster Confidence: {100.0 * p.mean_confidence:.1f}%",
            "",
            f"*Key Terms:* {', '.join(p.key_terms)}",
            "",
            "*Sample Papers in Cluster:*",
            "",
        ]
        for rank, (title, year) in enumerate(p.sample_titles, start=1):
            lines.append(f"{rank}. {title} ({year})")
        lines.append("")
    lines += ["## Inter-Cluster Relationships", ""]
    names = {p.index: p.name for p in model.profiles}
    for r in model.relationships:
        a, b = r.pair
        lines.append(
            f"- **{names[a]}** <-> **{names[b]}**: {r.label} (strength: {r.strength:.3f})"
        )
    lines.append("")
    return "\n".join(lines)
