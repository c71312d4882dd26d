"""Survey quality evaluation: deterministic metrics, judged dimensions,
weighted aggregation."""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from litpipe.acquisition.models import Corpus
from litpipe.clustering.report import ClusterModel
from litpipe.errors import AggregationError, InvalidInputError, RetryableError
from litpipe.evaluator.dimensions import (
    CATEGORY_WEIGHTS,
    DIMENSIONS,
    DIMENSION_CHECKLISTS,
    DimensionSpec,
)
from litpipe.writer.citations import AMBIGUOUS
from litpipe.writer.drafting import SurveyDocument, stable_hash

log = logging.getLogger(__name__)

SOURCE_DETERMINISTIC = "deterministic"
SOURCE_JUDGED = "judged"

_SCORE_LINE = re.compile(r"^\s*SCORE:\s*([-+]?\d+(?:\.\d+)?)\s*$", re.MULTILINE)
_JUSTIFICATION_LINE = re.compile(r"^\s*JUSTIFICATION:\s*(.+)$", re.MULTILINE)
_EVIDENCE_LINE = re.compile(r"^\s*EVIDENCE:\s*(.+)$", re.MULTILINE)


@dataclass
class DimensionScore:
    spec: DimensionSpec
    score: float
    justification: str
    evidence: List[str] = field(default_factory=list)
    source: str = SOURCE_JUDGED

    def __post_init__(self):
        if not 0.0 <= self.score <= 10.0:
            raise InvalidInputError("score must be in [0, 10]")


@dataclass
class DeterministicMetrics:
    citation_coverage: float
    word_count: int
    section_count: int
    cluster_representation: float
    citations_per_cluster: Dict[int, int]


@dataclass
class EvaluationReport:
    dimensional_scores: List[DimensionScore]
    category_scores: Dict[str, float]
    overall: float
    deterministic_metrics: DeterministicMetrics
    provenance: Dict[str, str]
    incomplete: bool = False
    warnings: List[str] = field(default_factory=list)


def citation_coverage(survey: SurveyDocument, corpus: Corpus) -> float:
    """Fraction of corpus papers cited (distinct resolved ids over corpus size)."""
    if len(corpus) == 0:
        raise InvalidInputError("corpus must be non-empty")
    ids = {
        pid for pid in survey.resolution.values() if pid and pid != AMBIGUOUS
    }
    return len(ids) / len(corpus)


def structural_metrics(
    survey: SurveyDocument,
    corpus: Corpus,
    model: ClusterModel,
) -> DeterministicMetrics:
    """Deterministic metric block: counts, coverage, cluster representation."""
    ids = {pid for pid in survey.resolution.values() if pid and pid != AMBIGUOUS}
    member_cluster = {}
    for profile in model.profiles:
        for pid in profile.member_ids:
            member_cluster[pid] = profile.index
    per_cluster = {p.index: 0 for p in model.profiles}
    for pid in ids:
        j = member_cluster.get(pid)
        if j is not None:
            per_cluster[j] += 1
    represented = sum(1 for count in per_cluster.values() if count > 0)
    headings = len(re.findall(r"^#{1,6} ", survey.markdown, re.MULTILINE))
    return DeterministicMetrics(
        citation_coverage=citation_coverage(survey, corpus),
        word_count=survey.word_count,
        section_count=headings,
        cluster_representation=represented / model.k,
        citations_per_cluster=per_cluster,
    )


def judge_prompt(
    dimension: DimensionSpec,
    survey: SurveyDocument,
    corpus: Corpus,
    model: ClusterModel,
    metrics: DeterministicMetrics,
) -> str:
    checklist = DIMENSION_CHECKLISTS[dimension.name]
    return "\n".join(
        [
            "You are an experienced academic reviewer scoring a literature survey.",
            f"Dimension: {dimension.name}",
            f"Category: {dimension.category} (weight {dimension.weight:.2f})",
            "Checklist:",
            *(f"- {item}" for item in checklist),
            f"Corpus size: {len(corpus)} papers; clusters: {model.k}.",
            f"Deterministic metrics: coverage={metrics.citation_coverage:.4f}, "
            f"words={metrics.word_count}, sections={metrics.section_count}, "
            f"cluster_representation={metrics.cluster_representation:.4f}.",
            "Respond with exactly these labeled lines:",
            "SCORE: <number 0-10>",
            "JUSTIFICATION: <one paragraph>",
            "EVIDENCE: <quoted snippet> (at least 3 EVIDENCE lines)",
            "",
            "SURVEY:",
            survey.markdown,
        ]
    )


def parse_judge_response(text: str):
    """Parse the labeled-line judge contract; tolerant of surrounding prose."""
    score_match = _SCORE_LINE.search(text)
    just_match = _JUSTIFICATION_LINE.search(text)
    evidence = _EVIDENCE_LINE.findall(text)
    if score_match is None or just_match is None or len(evidence) < 3:
        return None
    return float(score_match.group(1)), just_match.group(1).strip(), [e.strip() for e in evidence]


def judge_dimension(
    survey: SurveyDocument,
    dimension: DimensionSpec,
    corpus: Corpus,
    model: ClusterModel,
    metrics: DeterministicMetrics,
    provider,
    warnings: Optional[List[str]] = None,
) -> Optional[DimensionScore]:
    """Score one dimension via the judge provider; None when unparseable
    after one retry (the report is then flagged incomplete)."""
    prompt = judge_prompt(dimension, survey, corpus, model, metrics)
    for attempt in range(2):
        try:
            response = provider.generate(prompt=prompt, max_output_tokens=1024)
        except RetryableError as exc:
            log.warning("judge call failed for %s: %s", dimension.name, exc)
            continue
        parsed = parse_judge_response(response.text)
        if parsed is None:
            log.warning("unparseable judge response for %s (attempt %d)", dimension.name, attempt + 1)
            continue
        score, justification, evidence = parsed
        if not 0.0 <= score <= 10.0:
            clamped = min(10.0, max(0.0, score))
            message = f"{dimension.name}: score {score} clamped to {clamped}"
            log.warning(message)
            if warnings is not None:
                warnings.append(message)
            score = clamped
        return DimensionScore(dimension, score, justification, evidence, SOURCE_JUDGED)
    return None


def aggregate(
    scores: List[DimensionScore],
    metrics: DeterministicMetrics,
    provenance: Dict[str, str],
    incomplete: bool = False,
    warnings: Optional[List[str]] = None,
) -> EvaluationReport:
    """Weighted aggregation: category means, overall = 0.6/0.2/0.2 blend."""
    by_name = {s.spec.name: s for s in scores}
    missing = [d.name for d in DIMENSIONS if d.name not in by_name]
    if missing:
        raise AggregationError(f"missing dimensions: {', '.join(missing)}")
    category_scores = {}
    for category in CATEGORY_WEIGHTS:
        members = [s.score for s in scores if s.spec.category == category]
        category_scores[category] = sum(members) / len(members)
    overall = sum(CATEGORY_WEIGHTS[c] * category_scores[c] for c in CATEGORY_WEIGHTS)
    return EvaluationReport(
        dimensional_scores=[by_name[d.name] for d in DIMENSIONS],
        category_scores=category_scores,
        overall=overall,
        deterministic_metrics=metrics,
        provenance=provenance,
        incomplete=incomplete,
        warnings=warnings or [],
    )


def evaluate_survey(
    survey: SurveyDocument,
    corpus: Corpus,
    model: ClusterModel,
    provider,
    timestamp: float = 0.0,
) -> EvaluationReport:
    """Full evaluation stage.

    The citation-coverage dimension is deterministic (10 x coverage fraction,
    capped); the other 11 are judged by the provider. Dimensions that remain
    unparseable are scored 0 and flag the report incomplete.
    """
    metrics = structural_metrics(survey, corpus, model)
    warnings: List[str] = []
    scores: List[DimensionScore] = []
    incomplete = False
    for dimension in DIMENSIONS:
        if dimension.name == "Citation Coverage":
            scores.append(
                DimensionScore(
                    dimension,
                    min(10.0, 10.0 * metrics.citation_coverage),
                    f"Deterministic: {100.0 * metrics.citation_coverage:.1f}% of the "
                    "corpus is cited with resolved references.",
                    [f"coverage={metrics.citation_coverage:.4f}"],
                    SOURCE_DETERMINISTIC,
                )
            )
            continue
        judged = judge_dimension(survey, dimension, corpus, model, metrics, provider, warnings)
        if judged is None:
            incomplete = True
            warnings.append(f"{dimension.name}: judged score missing; recorded as 0")
            judged = DimensionScore(dimension, 0.0, "missing", [], SOURCE_JUDGED)
        scores.append(judged)
    provenance = {
        "survey_hash": stable_hash(survey.markdown),
        "judge_provider_id": getattr(provider, "provider_id", "unknown"),
        "timestamp": f"{timestamp:.0f}",
    }
    return aggregate(scores, metrics, provenance, incomplete, warnings)
