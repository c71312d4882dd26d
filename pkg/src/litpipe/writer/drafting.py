"""Survey drafting, coverage enforcement, and document assembly."""
from __future__ import annotations

import hashlib
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set

from litpipe.acquisition.models import Corpus, Paper
from litpipe.clustering.report import ClusterModel
from litpipe.errors import AssemblyError, RetryableError
from litpipe.writer.citations import (
    AMBIGUOUS,
    CitationKey,
    extract_citations,
    family_name,
    resolve_citations,
    resolved_ids,
)
from litpipe.writer.outline import (
    KIND_ABSTRACT,
    KIND_CLUSTER,
    KIND_CONCLUSION,
    KIND_CROSS_CUTTING,
    KIND_FUTURE,
    KIND_INTRODUCTION,
    Outline,
    Section,
    plan_outline,
)

log = logging.getLogger(__name__)

DEFAULT_WORD_BUDGET = 10_000
DEFAULT_COVERAGE_MIN = 0.50
DEFAULT_COVERAGE_TARGET = 0.80
MAX_ENFORCEMENT_PASSES = 2

PROVENANCE_OPEN = "<!-- litpipe-provenance"
_CITATION_BRACKET = re.compile(r"\[[^\[\]]*\b\d{4}\b[^\[\]]*\]")
_MARKUP = re.compile(r"[#*_`>|]+")
_HTML_COMMENT = re.compile(r"<!--.*?-->", re.DOTALL)


def word_count(markdown: str) -> int:
    """Whitespace-token count after stripping markup and citation brackets."""
    text = _HTML_COMMENT.sub(" ", markdown)
    text = _CITATION_BRACKET.sub(" ", text)
    text = _MARKUP.sub(" ", text)
    return len(text.split())


def stable_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode("utf-8")).hexdigest()


@dataclass
class DraftSurvey:
    outline: Outline
    texts: Dict[int, str]          # outline position -> section body
    failed: Set[int] = field(default_factory=set)


@dataclass
class SurveyDocument:
    markdown: str
    outline: Outline
    citations: Set[CitationKey]
    resolution: Dict[CitationKey, Optional[str]]
    word_count: int
    coverage: float
    min_met: bool
    target_met: bool
    failed_sections: int
    provenance: Dict[str, str]

    def save(self, path: Path) -> None:
        Path(path).write_text(self.markdown, encoding="utf-8")


def _paper_line(p: Paper) -> str:
    family = family_name(p.authors[0]) if p.authors else "Anonymous"
    excerpt = p.abstract[:200]
    return f"- {p.title} | {family} | {p.year} | {excerpt}"


def section_prompt(
    section: Section,
    corpus: Corpus,
    model: ClusterModel,
    budget: int,
) -> str:
    header = [
        f'Write the survey section "{section.title}" for a literature survey on '
        f"{corpus.topic.text}.",
        "Favor synthesis over enumeration: integrate findings, compare methods, "
        "and identify patterns rather than listing papers.",
        "Cite papers in [Author, Year] format.",
        f"Word budget: {budget} words.",
    ]
    if section.kind == KIND_ABSTRACT:
        header.append("This is the abstract; 200-300 words, no citations required.")
    if section.kind == KIND_CLUSTER:
        profile = model.profiles[section.cluster_index]
        header.append(f"Key terms: {', '.join(profile.key_terms)}.")
        related = [
            f"{model.profiles[r.pair[0]].name} <-> {model.profiles[r.pair[1]].name} "
            f"({r.label}, {r.strength:.3f})"
            for r in model.relationships
            if section.cluster_index in r.pair
        ][:3]
        if related:
            header.append("Strongest relationships: " + "; ".join(related) + ".")
        members = {pid for pid in profile.member_ids}
        papers = [p for p in corpus.papers if p.id in members]
        header.append("PAPERS:")
        header.extend(_paper_line(p) for p in papers)
    return "\n".join(header)


def _failure_stub(section: Section, corpus: Corpus, model: ClusterModel) -> str:
    lines = ["*Section generation failed; listing the cluster's top papers instead.*", ""]
    if section.cluster_index is not None:
        profile = model.profiles[section.cluster_index]
        members = {pid for pid in profile.member_ids}
        papers = sorted(
            (p for p in corpus.papers if p.id in members),
            key=lambda p: (-p.citation_count, p.title),
        )[:5]
        lines += [f"- {p.title} ({p.year})" for p in papers]
    return "\n".join(lines)


def section_budget(section: Section, model: ClusterModel, total_budget: int, n: int) -> int:
    if section.kind == KIND_CLUSTER:
        size = model.profiles[section.cluster_index].size
        return round(total_budget * size / n)
    return {
        KIND_ABSTRACT: 250,
        KIND_INTRODUCTION: 600,
        KIND_CROSS_CUTTING: 600,
        KIND_FUTURE: 400,
        KIND_CONCLUSION: 300,
    }[section.kind]


def draft_section(
    section: Section,
    corpus: Corpus,
    model: ClusterModel,
    provider,
    budget: int,
    max_retries: int = 2,
) -> Optional[str]:
    """Draft one section; None signals failure (pipeline continues)."""
    prompt = section_prompt(section, corpus, model, budget)
    for attempt in range(max_retries + 1):
        try:
            return provider.generate(prompt=prompt, max_output_tokens=4 * budget).text
        except RetryableError as exc:
            log.warning("section %r draft attempt %d failed: %s", section.title, attempt + 1, exc)
    return None


def draft_survey(
    corpus: Corpus,
    model: ClusterModel,
    provider,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> DraftSurvey:
    outline = plan_outline(model)
    texts: Dict[int, str] = {}
    failed: Set[int] = set()
    n = len(corpus)
    for pos, section in enumerate(outline.sections):
        budget = section_budget(section, model, word_budget, n)
        text = draft_section(section, corpus, model, provider, budget)
        if text is None:
            texts[pos] = _failure_stub(section, corpus, model)
            failed.add(pos)
        else:
            texts[pos] = text
    return DraftSurvey(outline=outline, texts=texts, failed=failed)


def _body_text(draft: DraftSurvey) -> str:
    return "\n\n".join(draft.texts[pos] for pos in range(len(draft.outline)))


def _coverage_of(draft: DraftSurvey, corpus: Corpus):
    body = _body_text(draft)
    keys = extract_citations(body)
    resolution = resolve_citations(sorted(keys, key=lambda k: (k.author_token, k.year)), corpus, body)
    ids = resolved_ids(resolution)
    return len(ids) / len(corpus), keys, resolution, ids


def enforce_coverage(
    draft: DraftSurvey,
    corpus: Corpus,
    model: ClusterModel,
    provider,
    coverage_min: float = DEFAULT_COVERAGE_MIN,
    coverage_target: float = DEFAULT_COVERAGE_TARGET,
) -> DraftSurvey:
    """Augment deficient cluster sections until coverage reaches the minimum.

    One augmentation request per deficient cluster per pass, at most
    MAX_ENFORCEMENT_PASSES passes; the provider is asked to integrate the
    specific uncited papers and its text is appended, so coverage never
    decreases. Falling short of the minimum is reported, not fatal.
    """
    cluster_pos = {
        s.cluster_index: pos
        for pos, s in enumerate(draft.outline.sections)
        if s.kind == KIND_CLUSTER
    }
    for _ in range(MAX_ENFORCEMENT_PASSES):
        coverage, _, _, cited_ids = _coverage_of(draft, corpus)
        if coverage >= coverage_min:
            break
        augmented = False
        for profile in model.profiles:
            uncited = [
                p for p in corpus.papers
                if p.id in set(profile.member_ids) and p.id not in cited_ids
            ]
            if not uncited:
                continue
            prompt = "\n".join(
                [
                    f"Integrate the following uncited papers into the section on "
                    f"{profile.name}, citing each in [Author, Year] format.",
                    "PAPERS:",
                    *(_paper_line(p) for p in uncited),
                ]
            )
            try:
                extra = provider.generate(prompt=prompt, max_output_tokens=2048).text
            except RetryableError as exc:
                log.warning("augmentation for cluster %d failed: %s", profile.index, exc)
                continue
            draft.texts[cluster_pos[profile.index]] += "\n\n" + extra
            augmented = True
        if not augmented:
            break
    return draft


def assemble_survey(
    draft: DraftSurvey,
    corpus: Corpus,
    model: ClusterModel,
    provider_id: str,
    timestamp: float,
) -> SurveyDocument:
    """Concatenate sections, append references, stamp the provenance header."""
    outline = draft.outline
    kinds = {s.kind for s in outline.sections}
    if KIND_ABSTRACT not in kinds or KIND_CONCLUSION not in kinds:
        raise AssemblyError("outline is missing abstract or conclusion")
    for pos in range(len(outline)):
        if pos not in draft.texts:
            raise AssemblyError(f"section at position {pos} has no text")

    coverage, keys, resolution, ids = _coverage_of(draft, corpus)
    provenance = {
        "topic": corpus.topic.text,
        "corpus_hash": stable_hash(corpus.to_dict()),
        "cluster_hash": stable_hash(model.to_dict()),
        "provider_id": provider_id,
        "timestamp": f"{timestamp:.0f}",
    }

    lines = [PROVENANCE_OPEN]
    lines += [f"{k}: {v}" for k, v in provenance.items()]
    lines += ["-->", "", f"# A Survey of {corpus.topic.text}", ""]
    for pos, section in enumerate(outline.sections):
        lines += [f"## {section.title}", "", draft.texts[pos], ""]

    by_id = {p.id: p for p in corpus.papers}
    resolved = sorted(
        {resolution[k] for k in keys if resolution.get(k) not in (None, AMBIGUOUS)},
        key=lambda pid: (
            family_name(by_id[pid].authors[0]) if by_id[pid].authors else "",
            by_id[pid].year,
            pid,
        ),
    )
    lines += ["## References", ""]
    for pid in resolved:
        p = by_id[pid]
        fam = family_name(p.authors[0]) if p.authors else "Anonymous"
        lines.append(f"- {fam}, {p.year}. {p.title}.")
    unresolved = sorted(
        (k for k in keys if resolution.get(k) in (None, AMBIGUOUS)),
        key=lambda k: (k.author_token, k.year),
    )
    if unresolved:
        lines += ["", "### Unresolved citations", ""]
        lines += [f"- {k.render()}" for k in unresolved]
    lines.append("")
    markdown = "\n".join(lines)

    return SurveyDocument(
        markdown=markdown,
        outline=outline,
        citations=keys,
        resolution=resolution,
        word_count=word_count(markdown),
        coverage=coverage,
        min_met=coverage >= DEFAULT_COVERAGE_MIN,
        target_met=coverage >= DEFAULT_COVERAGE_TARGET,
        failed_sections=len(draft.failed),
        provenance=provenance,
    )


def parse_provenance(markdown: str) -> Dict[str, str]:
    """Parse the provenance comment header back into a dict."""
    if not markdown.startswith(PROVENANCE_OPEN):
        return {}
    end = markdown.find("-->")
    block = markdown[len(PROVENANCE_OPEN) : end]
    out = {}
    for line in block.strip().splitlines():
        if ": " in line:
            key, value = line.split(": ", 1)
            out[key.strip()] = value.strip()
    return out


def write_survey(
    corpus: Corpus,
    model: ClusterModel,
    provider,
    word_budget: int = DEFAULT_WORD_BUDGET,
    coverage_min: float = DEFAULT_COVERAGE_MIN,
    coverage_target: float = DEFAULT_COVERAGE_TARGET,
    timestamp: float = 0.0,
) -> SurveyDocument:
    """Full writer stage: draft, enforce coverage, assemble."""
    draft = draft_survey(corpus, model, provider, word_budget)
    draft = enforce_coverage(draft, corpus, model, provider, coverage_min, coverage_target)
    doc = assemble_survey(draft, corpus, model, getattr(provider, "provider_id", "unknown"), timestamp)
    doc.min_met = doc.coverage >= coverage_min
    doc.target_met = doc.coverage >= coverage_target
    return doc
