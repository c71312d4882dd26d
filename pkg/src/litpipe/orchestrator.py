"""Stage sequencing: acquire -> embed -> cluster -> write -> evaluate."""
from __future__ import annotations

import datetime
import json
import logging
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from litpipe.acquisition.acquire import acquire
from litpipe.acquisition.models import AcquisitionConfig, Corpus, Topic
from litpipe.clustering.report import ClusterModel, build_cluster_report, cluster_corpus
from litpipe.embedding.pipeline import EmbeddingMatrix, embed_corpus
from litpipe.embedding.provider import (
    EMBEDDING_DIM,
    MockEmbeddingProvider,
    SidecarEmbeddingClient,
)
from litpipe.embedding.store import EmbeddingStore
from litpipe.errors import CorruptCheckpointError, InvalidInputError, LitPipeError
from litpipe.evaluator.evaluate import evaluate_survey
from litpipe.evaluator.report import emit_report
from litpipe.infra.checkpoint import checkpoint_load, checkpoint_save
from litpipe.mocksources import mock_transports
from litpipe.providers import HTTPGenerationProvider, MockGenerationProvider
from litpipe.writer.drafting import write_survey

log = logging.getLogger(__name__)

STAGE_NAMES = ["acquire", "embed", "cluster", "write", "evaluate"]
STAGE_TO_CHECKPOINT = {
    "acquire": "acquired",
    "embed": "embedded",
    "cluster": "clustered",
    "write": "written",
    "evaluate": "evaluated",
}

FIXED_MOCK_EPOCH = 1735689600.0  # deterministic timestamp for all-mock runs

CORPUS_FILE = "corpus.json"
EMBEDDINGS_FILE = "embeddings.npy"
CLUSTERS_FILE = "clusters.json"
CLUSTER_REPORT_FILE = "clustering_report.md"
SURVEY_FILE = "survey.md"
SUMMARY_FILE = "run_summary.json"


@dataclass
class PipelineConfig:
    topic: str
    out_dir: Path
    seed: int = 0
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    k_min: int = 5
    k_max: int = 15
    word_budget: int = 10_000
    coverage_min: float = 0.50
    coverage_target: float = 0.80
    providers: Dict[str, str] = field(
        default_factory=lambda: {"embedding": "mock", "generation": "mock", "judge": "mock"}
    )
    cache_dir: Optional[Path] = None
    stages: Optional[List[str]] = None  # None = all
    mock_sources: bool = False
    fixed_time: Optional[float] = None
    transports: Optional[dict] = None  # test hook; overrides mock/live sources

    def all_mock(self) -> bool:
        return all(v == "mock" for v in self.providers.values()) and (
            self.mock_sources or self.transports is not None
        )

    def clock(self) -> float:
        if self.fixed_time is not None:
            return self.fixed_time
        if self.all_mock():
            return FIXED_MOCK_EPOCH
        return time.time()


@dataclass
class StageResult:
    name: str
    duration_ms: float
    counts: Dict[str, int] = field(default_factory=dict)
    skipped: bool = False


@dataclass
class RunSummary:
    stages: List[StageResult]
    outputs: Dict[str, str]
    degraded_flags: List[str]
    failed_stage: Optional[str] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed_stage is None

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "stages": [
                {
                    "name": s.name,
                    "duration_ms": s.duration_ms,
                    "counts": s.counts,
                    "skipped": s.skipped,
                }
                for s in self.stages
            ],
            "outputs": self.outputs,
            "degraded_flags": self.degraded_flags,
            "failed_stage": self.failed_stage,
            "error": self.error,
        }


def validate(config: PipelineConfig) -> List[dict]:
    """Pre-run diagnostics; entries with level "fatal" abort the run."""
    diags = []
    acq = config.acquisition
    if acq.year_min > acq.year_max:
        diags.append({"level": "fatal", "message": "year_min exceeds year_max"})
    if config.k_max < config.k_min:
        diags.append({"level": "fatal", "message": "k_max below k_min"})
    if acq.target_paper_count < config.k_max + 1:
        diags.append(
            {
                "level": "warning",
                "message": (
                    f"k range [{config.k_min},{config.k_max}] will be clamped for an "
                    f"expected corpus of ~{acq.target_paper_count} papers"
                ),
            }
        )
    out = Path(config.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        diags.append({"level": "fatal", "message": f"output dir not writable: {exc}"})
    for role, choice in config.providers.items():
        if choice == "mock":
            continue  # no network checks for mocks
        env = {"embedding": "LITPIPE_EMBED_ENDPOINT", "generation": "LITPIPE_GEN_ENDPOINT",
               "judge": "LITPIPE_GEN_ENDPOINT"}[role]
        if not os.environ.get(env):
            diags.append({"level": "fatal", "message": f"{role} provider {choice!r} needs {env}"})
    return diags


def _build_providers(config: PipelineConfig):
    choice = config.providers
    if choice.get("embedding", "mock") == "sidecar":
        embedder = SidecarEmbeddingClient()
    else:
        embedder = MockEmbeddingProvider(seed=config.seed)
    if choice.get("generation", "mock") == "external":
        generator = HTTPGenerationProvider()
    else:
        generator = MockGenerationProvider(seed=config.seed)
    if choice.get("judge", "mock") == "external":
        judge = HTTPGenerationProvider()
    else:
        judge = MockGenerationProvider(seed=config.seed + 1)
    return embedder, generator, judge


def run(config: PipelineConfig) -> RunSummary:
    """Execute the pipeline with checkpointing after each stage.

    Stages whose checkpoint hashes verify are skipped and their artifacts
    reloaded; a stage failure stops the run but preserves prior artifacts.
    """
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache_dir = Path(config.cache_dir) if config.cache_dir else out / "cache"
    selected = config.stages or STAGE_NAMES
    for s in selected:
        if s not in STAGE_NAMES:
            raise InvalidInputError(f"unknown stage {s!r}")

    try:
        checkpoint = checkpoint_load(out)
    except CorruptCheckpointError:
        raise

    artifact_paths: Dict[str, Path] = {}
    if checkpoint:
        artifact_paths = {name: Path(info["path"]) for name, info in checkpoint.artifacts.items()}

    embedder, generator, judge = _build_providers(config)
    store = EmbeddingStore(cache_dir / "embeddings")
    stamp = config.clock()

    stages: List[StageResult] = []
    outputs: Dict[str, str] = {}
    degraded: List[str] = []

    corpus: Optional[Corpus] = None
    matrix: Optional[EmbeddingMatrix] = None
    model: Optional[ClusterModel] = None
    survey = None

    def done(stage: str) -> bool:
        return checkpoint is not None and checkpoint.covers(STAGE_TO_CHECKPOINT[stage])

    def should_run(stage: str) -> bool:
        return stage in selected and not done(stage)

    def record(stage: str, started: float, counts: Dict[str, int], skipped: bool = False):
        stages.append(
            StageResult(stage, round((time.perf_counter() - started) * 1000, 3), counts, skipped)
        )

    class _EndRun(Exception):
        """Internal: a deselected stage with no artifact ends the run early."""

    current_stage = None
    try:
        # -- acquire --------------------------------------------------------
        current_stage = "acquire"
        started = time.perf_counter()
        corpus_path = out / CORPUS_FILE
        if not should_run("acquire"):
            if not corpus_path.exists():
                raise _EndRun
            corpus = Corpus.load(corpus_path, config.acquisition)
            record("acquire", started, {"papers": len(corpus)}, skipped=True)
        else:
            topic = Topic(config.topic, config.acquisition)
            transports = config.transports
            if transports is None and config.mock_sources:
                transports = mock_transports(seed=config.seed)
            from litpipe.infra.cache import DiskCache

            api_cache = DiskCache(cache_dir / "api", now=lambda: config.clock())
            corpus = acquire(
                topic,
                transports=transports,
                cache=api_cache,
                now=lambda: stamp,
                sleep=lambda _t: None if config.all_mock() else time.sleep(_t),
            )
            corpus.save(corpus_path)
            artifact_paths["corpus"] = corpus_path
            checkpoint = checkpoint_save(out, "acquired", artifact_paths, now=stamp)
            record("acquire", started, dict(corpus.stats.to_dict()))
        outputs["corpus"] = str(corpus_path)
        if corpus.degraded:
            degraded.append("acquisition-degraded")

        # -- embed ----------------------------------------------------------
        current_stage = "embed"
        started = time.perf_counter()
        embeddings_path = out / EMBEDDINGS_FILE
        if not should_run("embed"):
            if not embeddings_path.exists():
                raise _EndRun
            vectors = np.load(embeddings_path)
            matrix = EmbeddingMatrix(vectors=vectors, model_id=embedder.model_id, normalized=True)
            record("embed", started, {"vectors": len(matrix)}, skipped=True)
        else:
            matrix = embed_corpus(corpus, embedder, store=store)
            np.save(embeddings_path, matrix.vectors)
            artifact_paths["embeddings"] = embeddings_path
            checkpoint = checkpoint_save(out, "embedded", artifact_paths, now=stamp)
            record("embed", started, {"vectors": len(matrix), "dim": EMBEDDING_DIM})
        outputs["embeddings"] = str(embeddings_path)

        # -- cluster --------------------------------------------------------
        current_stage = "cluster"
        started = time.perf_counter()
        clusters_path = out / CLUSTERS_FILE
        report_path = out / CLUSTER_REPORT_FILE
        if not should_run("cluster"):
            if not clusters_path.exists():
                raise _EndRun
            model = ClusterModel.load(clusters_path)
            record("cluster", started, {"K": model.k}, skipped=True)
        else:
            model = cluster_corpus(
                corpus,
                matrix,
                k_min=config.k_min,
                k_max=config.k_max,
                seed=config.seed,
                generator=generator,
                generated_at=stamp,
            )
            model.save(clusters_path)
            stamp_str = datetime.datetime.fromtimestamp(
                stamp, tz=datetime.timezone.utc
            ).strftime("%Y-%m-%d %H:%M:%S")
            report_path.write_text(
                build_cluster_report(corpus, model, generated_stamp=stamp_str),
                encoding="utf-8",
            )
            artifact_paths["clusters"] = clusters_path
            artifact_paths["clustering_report"] = report_path
            checkpoint = checkpoint_save(out, "clustered", artifact_paths, now=stamp)
            record("cluster", started, {"K": model.k, "papers": len(corpus)})
        outputs["clusters"] = str(clusters_path)
        outputs["clustering_report"] = str(report_path)

        # -- write ----------------------------------------------------------
        current_stage = "write"
        started = time.perf_counter()
        survey_path = out / SURVEY_FILE
        if not should_run("write"):
            if not survey_path.exists():
                raise _EndRun
            record("write", started, {}, skipped=True)
        else:
            survey = write_survey(
                corpus,
                model,
                generator,
                word_budget=config.word_budget,
                coverage_min=config.coverage_min,
                coverage_target=config.coverage_target,
                timestamp=stamp,
            )
            survey.save(survey_path)
            artifact_paths["survey"] = survey_path
            checkpoint = checkpoint_save(out, "written", artifact_paths, now=stamp)
            counts = {
                "words": survey.word_count,
                "citations": len(survey.citations),
                "failed_sections": survey.failed_sections,
            }
            record("write", started, counts)
            if survey.failed_sections:
                degraded.append("partial-survey")
        outputs["survey"] = str(survey_path)

        # -- evaluate -------------------------------------------------------
        current_stage = "evaluate"
        started = time.perf_counter()
        eval_path = out / "enhanced_evaluation_v3.json"
        if not should_run("evaluate"):
            if not eval_path.exists():
                raise _EndRun
            record("evaluate", started, {}, skipped=True)
        else:
            if survey is None:
                # Rebuild the in-memory survey view from the saved artifact.
                survey = _reload_survey(survey_path, corpus, model)
            evaluation = evaluate_survey(survey, corpus, model, judge, timestamp=stamp)
            emit_report(evaluation, out)
            artifact_paths["evaluation"] = eval_path
            checkpoint = checkpoint_save(out, "evaluated", artifact_paths, now=stamp)
            record("evaluate", started, {"overall_x100": round(evaluation.overall * 100)})
            if evaluation.incomplete:
                degraded.append("evaluation-incomplete")
        outputs["evaluation"] = str(eval_path)
    except _EndRun:
        pass
    except LitPipeError as exc:
        log.error("stage %s failed: %s", current_stage, exc)
        summary = RunSummary(stages, outputs, degraded, failed_stage=current_stage, error=str(exc))
        _write_summary(out, summary)
        return summary

    summary = RunSummary(stages, outputs, degraded)
    _write_summary(out, summary)
    return summary


def _reload_survey(survey_path: Path, corpus: Corpus, model: ClusterModel):
    from litpipe.writer.citations import extract_citations, resolve_citations, resolved_ids
    from litpipe.writer.drafting import SurveyDocument, parse_provenance, word_count
    from litpipe.writer.outline import plan_outline

    markdown = Path(survey_path).read_text(encoding="utf-8")
    keys = extract_citations(markdown)
    resolution = resolve_citations(
        sorted(keys, key=lambda k: (k.author_token, k.year)), corpus, markdown
    )
    coverage = len(resolved_ids(resolution)) / len(corpus)
    return SurveyDocument(
        markdown=markdown,
        outline=plan_outline(model),
        citations=keys,
        resolution=resolution,
        word_count=word_count(markdown),
        coverage=coverage,
        min_met=coverage >= 0.5,
        target_met=coverage >= 0.8,
        failed_sections=0,
        provenance=parse_provenance(markdown),
    )


def _write_summary(out: Path, summary: RunSummary) -> None:
    (out / SUMMARY_FILE).write_text(
        json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
