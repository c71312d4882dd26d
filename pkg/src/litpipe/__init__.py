"""Batch literature-survey pipeline: acquisition, clustering, drafting,
and multi-dimensional evaluation."""

__version__ = "1.0.0"

from litpipe.orchestrator import PipelineConfig, RunSummary, run, validate

__all__ = ["PipelineConfig", "RunSummary", "run", "validate", "__version__"]
