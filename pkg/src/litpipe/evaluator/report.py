"""Evaluation report files: enhanced_evaluation_v3.json and a Markdown digest."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List

from litpipe.evaluator.dimensions import CATEGORY_WEIGHTS, DIMENSIONS
from litpipe.evaluator.evaluate import EvaluationReport

EVALUATION_FILE = "enhanced_evaluation_v3.json"
DIGEST_FILE = "evaluation_digest.md"


def _quality_level(overall: float) -> str:
    if overall >= 8.5:
        return "A (excellent)"
    if overall >= 7.0:
        return "B (strong)"
    if overall >= 5.0:
        return "C (adequate)"
    return "D (needs substantial revision)"


def _ranked(report: EvaluationReport):
    return sorted(report.dimensional_scores, key=lambda s: (-s.score, s.spec.name))


def report_to_dict(report: EvaluationReport) -> Dict:
    ranked = _ranked(report)
    strengths = [
        f"{s.spec.name} ({s.score:.2f}/10): {s.justification}" for s in ranked[:3]
    ]
    weaknesses = [
        f"{s.spec.name} ({s.score:.2f}/10): {s.justification}" for s in ranked[-3:]
    ]
    recommendations = []
    for rank, s in enumerate(reversed(ranked[-3:])):
        recommendations.append(
            {
                "priority": ["HIGH", "MEDIUM", "LOW"][rank],
                "recommendation": f"Strengthen {s.spec.name.lower()} in a revision pass",
                "impact": f"raises the {s.spec.category} category score",
                "effort": "moderate",
            }
        )
    m = report.deterministic_metrics
    summary = (
        f"The survey scores {report.overall:.2f}/10 overall "
        f"(core {report.category_scores['core']:.2f}, writing "
        f"{report.category_scores['writing']:.2f}, depth "
        f"{report.category_scores['depth']:.2f}). It cites "
        f"{100.0 * m.citation_coverage:.1f}% of the corpus across "
        f"{m.section_count} sections and {m.word_count} words, with "
        f"{100.0 * m.cluster_representation:.1f}% of clusters represented. "
        f"Strongest dimension: {ranked[0].spec.name}; weakest: {ranked[-1].spec.name}."
    )
    return {
        "schema": 3,
        "dimensional_scores": {
            s.spec.name: {
                "score": round(s.score, 2),
                "weight": s.spec.weight,
                "category": s.spec.category,
                "source": s.source,
                "justification": s.justification,
                "specific_examples": s.evidence,
            }
            for s in report.dimensional_scores
        },
        "overall_assessment": {
            "weighted_total_score": round(report.overall, 2),
            "score_breakdown": {c: round(v, 2) for c, v in report.category_scores.items()},
            "quality_level": _quality_level(report.overall),
            "publication_readiness": (
                "ready for expert review" if report.overall >= 7.0 else "needs revision"
            ),
        },
        "deterministic_metrics": {
            "citation_coverage": m.citation_coverage,
            "word_count": m.word_count,
            "section_count": m.section_count,
            "cluster_representation": m.cluster_representation,
            "citations_per_cluster": {str(k): v for k, v in m.citations_per_cluster.items()},
        },
        "strengths": strengths,
        "weaknesses": weaknesses,
        "prioritized_recommendations": recommendations,
        "executive_summary": summary,
        "incomplete": report.incomplete,
        "warnings": report.warnings,
        "provenance": report.provenance,
    }


def emit_report(report: EvaluationReport, out_dir: Path) -> List[Path]:
    """Write the JSON report and its human-readable Markdown digest."""
    out_dir = Path(out_dir)
    payload = report_to_dict(report)
    json_path = out_dir / EVALUATION_FILE
    json_path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    lines = [
        "# Survey Evaluation Digest",
        "",
        f"Overall score: **{report.overall:.2f}/10** ({_quality_level(report.overall)})",
        "",
        "| Dimension | Category | Weight | Score |",
        "|---|---|---|---|",
    ]
    by_name = {s.spec.name: s for s in report.dimensional_scores}
    for spec in DIMENSIONS:  # fixed rubric-table order
        s = by_name[spec.name]
        lines.append(f"| {spec.name} | {spec.category} | {spec.weight:.2f} | {s.score:.2f} |")
    lines += [
        "",
        "## Category scores",
        "",
    ]
    for category, weight in CATEGORY_WEIGHTS.items():
        lines.append(
            f"- {category} ({100 * weight:.0f}% weight): {report.category_scores[category]:.2f}"
        )
    lines += ["", "## Executive summary", "", payload["executive_summary"], ""]
    digest_path = out_dir / DIGEST_FILE
    digest_path.write_text("\n".join(lines), encoding="utf-8")
    return [json_path, digest_path]


def load_report(path: Path) -> Dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
