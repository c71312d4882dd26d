from litpipe.writer.outline import Outline, Section, plan_outline
from litpipe.writer.citations import (
    AMBIGUOUS,
    CitationKey,
    extract_citations,
    family_name,
    resolve_citations,
    resolved_ids,
)
from litpipe.writer.drafting import (
    DraftSurvey,
    SurveyDocument,
    assemble_survey,
    draft_section,
    draft_survey,
    enforce_coverage,
    parse_provenance,
    section_prompt,
    word_count,
    write_survey,
)

__all__ = [
    "Outline",
    "Section",
    "plan_outline",
    "AMBIGUOUS",
    "CitationKey",
    "extract_citations",
    "family_name",
    "resolve_citations",
    "resolved_ids",
    "DraftSurvey",
    "SurveyDocument",
    "assemble_survey",
    "draft_section",
    "draft_survey",
    "enforce_coverage",
    "parse_provenance",
    "section_prompt",
    "word_count",
    "write_survey",
]
