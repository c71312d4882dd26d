"""The 12-dimension weighted rubric: names, categories, weights."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

CATEGORY_CORE = "core"
CATEGORY_WRITING = "writing"
CATEGORY_DEPTH = "depth"

CATEGORY_WEIGHTS = {CATEGORY_CORE: 0.6, CATEGORY_WRITING: 0.2, CATEGORY_DEPTH: 0.2}


@dataclass(frozen=True)
class DimensionSpec:
    name: str
    category: str
    weight: float


DIMENSIONS: List[DimensionSpec] = [
    DimensionSpec("Citation Coverage", CATEGORY_CORE, 0.15),
    DimensionSpec("Accuracy", CATEGORY_CORE, 0.15),
    DimensionSpec("Synthesis Quality", CATEGORY_CORE, 0.15),
    DimensionSpec("Organization", CATEGORY_CORE, 0.15),
    DimensionSpec("Readability", CATEGORY_WRITING, 0.05),
    DimensionSpec("Academic Rigor", CATEGORY_WRITING, 0.05),
    DimensionSpec("Clarity", CATEGORY_WRITING, 0.05),
    DimensionSpec("Coherence", CATEGORY_WRITING, 0.05),
    DimensionSpec("Comprehensiveness", CATEGORY_DEPTH, 0.05),
    DimensionSpec("Critical Analysis", CATEGORY_DEPTH, 0.05),
    DimensionSpec("Novelty & Insights", CATEGORY_DEPTH, 0.05),
    DimensionSpec("Future Directions", CATEGORY_DEPTH, 0.05),
]

DIMENSION_CHECKLISTS = {
    "Citation Coverage": [
        "Calculate exact percentage of corpus cited",
        "Assess distribution across clusters",
        "Check for key papers inclusion",
    ],
    "Accuracy": [
        "Verify claims are properly supported",
        "Check author/year attribution accuracy",
        "Identify any unsupported generalizations",
    ],
    "Synthesis Quality": [
        "Measure synthesis ratio (integrated vs sequential)",
        "Identify cross-paper connections",
        "Evaluate comparative analysis depth",
    ],
    "Organization": [
        "Assess section/subsection hierarchy",
        "Evaluate transition quality",
        "Check information progression logic",
    ],
    "Readability": [
        "Sentence complexity and variety",
        "Technical term introduction/explanation",
        "Paragraph coherence",
    ],
    "Academic Rigor": [
        "Citation format consistency",
        "Methodological transparency",
        "Limitation acknowledgment",
    ],
    "Clarity": [
        "Concept explanation quality",
        "Ambiguity identification",
        "Example usage effectiveness",
    ],
    "Coherence": [
        "Thematic consistency",
        "Cross-reference accuracy",
        "Narrative flow maintenance",
    ],
    "Comprehensiveness": [
        "Cluster representation completeness",
        "Temporal coverage (publication years)",
        "Geographic/institutional diversity",
    ],
    "Critical Analysis": [
        "Limitation discussion depth",
        "Conflicting findings acknowledgment",
        "Methodological critique presence",
    ],
    "Novelty & Insights": [
        "Novel connections identified",
        "Pattern recognition quality",
        "Taxonomy/framework contributions",
    ],
    "Future Directions": [
        "Specificity of proposed directions",
        "Feasibility assessment",
        "Gap identification quality",
    ],
}

assert abs(sum(d.weight for d in DIMENSIONS) - 1.0) < 1e-12
