import random

import pytest

from litpipe.errors import AggregationError
from litpipe.evaluator.dimensions import CATEGORY_WEIGHTS, DIMENSIONS
from litpipe.evaluator.evaluate import (
    DeterministicMetrics,
    DimensionScore,
    aggregate,
    citation_coverage,
    evaluate_survey,
    judge_dimension,
    parse_judge_response,
    structural_metrics,
)
from litpipe.evaluator.report import emit_report, load_report, report_to_dict
from litpipe.providers import MockGenerationProvider

from .test_writer import build_pipeline_state
from litpipe.writer.drafting import write_survey


def _metrics():
    return DeterministicMetrics(
        citation_coverage=0.8,
        word_count=5000,
        section_count=10,
        cluster_representation=1.0,
        citations_per_cluster={0: 5},
    )


def _full_scores(values):
    return [
        DimensionScore(spec, value, "justified", ["e1", "e2", "e3"])
        for spec, value in zip(DIMENSIONS, values)
    ]


class TestRubric:
    def test_weights(self):
        core = [d for d in DIMENSIONS if d.category == "core"]
        writing = [d for d in DIMENSIONS if d.category == "writing"]
        depth = [d for d in DIMENSIONS if d.category == "depth"]
        assert len(core) == len(writing) == len(depth) == 4
        assert all(d.weight == 0.15 for d in core)
        assert all(d.weight == 0.05 for d in writing + depth)
        assert CATEGORY_WEIGHTS == {"core": 0.6, "writing": 0.2, "depth": 0.2}


class TestParseJudgeResponse:
    def test_well_formed(self):
        text = "SCORE: 8.5\nJUSTIFICATION: Good.\nEVIDENCE: a\nEVIDENCE: b\nEVIDENCE: c"
        score, justification, evidence = parse_judge_response(text)
        assert score == 8.5
        assert justification == "Good."
        assert len(evidence) == 3

    def test_tolerates_surrounding_prose(self):
        text = (
            "Here is my review.\nSCORE: 7\nSome notes.\n"
            "JUSTIFICATION: Decent work overall.\n"
            "EVIDENCE: x\nEVIDENCE: y\nEVIDENCE: z\nThanks."
        )
        assert parse_judge_response(text)[0] == 7.0

    def test_too_few_evidence_lines(self):
        text = "SCORE: 8\nJUSTIFICATION: ok\nEVIDENCE: a\nEVIDENCE: b"
        assert parse_judge_response(text) is None

    def test_missing_score(self):
        text = "JUSTIFICATION: ok\nEVIDENCE: a\nEVIDENCE: b\nEVIDENCE: c"
        assert parse_judge_response(text) is None


class TestJudgeDimension:
    def _state(self):
        corpus, model = build_pipeline_state(n=12)
        survey = write_survey(corpus, model, MockGenerationProvider(seed=0), timestamp=1.0)
        metrics = structural_metrics(survey, corpus, model)
        return survey, corpus, model, metrics

    def test_retry_then_success(self):
        survey, corpus, model, metrics = self._state()

        class FlakyJudge:
            provider_id = "flaky"
            calls = 0

            def generate(self, prompt, **kwargs):
                self.calls += 1
                if self.calls == 1:
                    from litpipe.providers import GenerationResponse

                    return GenerationResponse("garbage", "flaky")
                return MockGenerationProvider(seed=0).generate(prompt, **kwargs)

        score = judge_dimension(survey, DIMENSIONS[1], corpus, model, metrics, FlakyJudge())
        assert score is not None

    def test_unparseable_twice_returns_none(self):
        survey, corpus, model, metrics = self._state()

        class BrokenJudge:
            provider_id = "broken"

            def generate(self, prompt, **kwargs):
                from litpipe.providers import GenerationResponse

                return GenerationResponse("no labels here", "broken")

        assert judge_dimension(survey, DIMENSIONS[1], corpus, model, metrics, BrokenJudge()) is None

    def test_out_of_range_clamped_with_warning(self):
        survey, corpus, model, metrics = self._state()

        class LoudJudge:
            provider_id = "loud"

            def generate(self, prompt, **kwargs):
                from litpipe.providers import GenerationResponse

                return GenerationResponse(
                    "SCORE: 14\nJUSTIFICATION: overenthusiastic\n"
                    "EVIDENCE: a\nEVIDENCE: b\nEVIDENCE: c",
                    "loud",
                )

        warnings = []
        score = judge_dimension(
            survey, DIMENSIONS[1], corpus, model, metrics, LoudJudge(), warnings
        )
        assert score.score == 10.0
        assert warnings


class TestAggregate:
    def test_identity_on_random_vectors(self):
        rng = random.Random(99)
        for _ in range(1000):
            values = [rng.uniform(0, 10) for _ in range(12)]
            report = aggregate(_full_scores(values), _metrics(), {})
            core = sum(values[0:4]) / 4
            writing = sum(values[4:8]) / 4
            depth = sum(values[8:12]) / 4
            expected = 0.6 * core + 0.2 * writing + 0.2 * depth
            assert abs(report.overall - expected) <= 1e-12

    def test_missing_dimension_raises(self):
        scores = _full_scores([5.0] * 12)[:-1]
        with pytest.raises(AggregationError):
            aggregate(scores, _metrics(), {})


class TestEvaluateSurvey:
    def test_full_evaluation(self):
        corpus, model = build_pipeline_state(n=12)
        survey = write_survey(corpus, model, MockGenerationProvider(seed=0), timestamp=1.0)
        report = evaluate_survey(survey, corpus, model, MockGenerationProvider(seed=1))
        assert not report.incomplete
        assert 0 <= report.overall <= 10
        by_name = {s.spec.name: s for s in report.dimensional_scores}
        coverage_score = by_name["Citation Coverage"]
        assert coverage_score.source == "deterministic"
        assert coverage_score.score == pytest.approx(
            min(10.0, 10.0 * citation_coverage(survey, corpus)), abs=1e-12
        )

    def test_broken_judge_marks_incomplete(self):
        corpus, model = build_pipeline_state(n=12)
        survey = write_survey(corpus, model, MockGenerationProvider(seed=0), timestamp=1.0)

        class BrokenJudge:
            provider_id = "broken"

            def generate(self, prompt, **kwargs):
                from litpipe.providers import GenerationResponse

                return GenerationResponse("nothing useful", "broken")

        report = evaluate_survey(survey, corpus, model, BrokenJudge())
        assert report.incomplete
        judged = [s for s in report.dimensional_scores if s.spec.name != "Citation Coverage"]
        assert all(s.score == 0.0 for s in judged)


class TestReportFiles:
    def test_emit_and_load(self, tmp_path):
        corpus, model = build_pipeline_state(n=12)
        survey = write_survey(corpus, model, MockGenerationProvider(seed=0), timestamp=1.0)
        report = evaluate_survey(survey, corpus, model, MockGenerationProvider(seed=1))
        json_path, digest_path = emit_report(report, tmp_path)
        payload = load_report(json_path)
        assert payload["schema"] == 3
        assert len(payload["dimensional_scores"]) == 12
        assert payload["overall_assessment"]["weighted_total_score"] == round(report.overall, 2)
        digest = digest_path.read_text(encoding="utf-8")
        assert digest.count("|") >= 13 * 4  # header + 12 rows, 4 pipes each

    def test_strengths_weaknesses_counts(self):
        corpus, model = build_pipeline_state(n=12)
        survey = write_survey(corpus, model, MockGenerationProvider(seed=0), timestamp=1.0)
        report = evaluate_survey(survey, corpus, model, MockGenerationProvider(seed=1))
        payload = report_to_dict(report)
        assert len(payload["strengths"]) == 3
        assert len(payload["weaknesses"]) == 3
        priorities = [r["priority"] for r in payload["prioritized_recommendations"]]
        assert priorities == ["HIGH", "MEDIUM", "LOW"]
