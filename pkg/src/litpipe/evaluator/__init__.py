from litpipe.evaluator.dimensions import (
    CATEGORY_WEIGHTS,
    DIMENSIONS,
    DimensionSpec,
)
from litpipe.evaluator.evaluate import (
    DeterministicMetrics,
    DimensionScore,
    EvaluationReport,
    aggregate,
    citation_coverage,
    evaluate_survey,
    judge_dimension,
    parse_judge_response,
    structural_metrics,
)
from litpipe.evaluator.report import emit_report, load_report, report_to_dict

__all__ = [
    "CATEGORY_WEIGHTS",
    "DIMENSIONS",
    "DimensionSpec",
    "DimensionScore",
    "DeterministicMetrics",
    "EvaluationReport",
    "aggregate",
    "citation_coverage",
    "evaluate_survey",
    "judge_dimension",
    "parse_judge_response",
    "structural_metrics",
    "emit_report",
    "load_report",
    "report_to_dict",
]
