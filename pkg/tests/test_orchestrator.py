import json

import pytest

from litpipe.errors import CorruptCheckpointError
from litpipe.orchestrator import PipelineConfig, run, validate


def _config(tmp_path, **kwargs):
    defaults = dict(
        topic="large language model agents",
        out_dir=tmp_path / "out",
        seed=3,
        mock_sources=True,
        k_min=2,
        k_max=6,
    )
    defaults.update(kwargs)
    return PipelineConfig(**defaults)


def test_full_run_produces_summary(tmp_path):
    summary = run(_config(tmp_path))
    assert summary.ok
    assert [s.name for s in summary.stages] == [
        "acquire", "embed", "cluster", "write", "evaluate",
    ]
    assert not any(s.skipped for s in summary.stages)


def test_resume_skips_completed_stages(tmp_path):
    config = _config(tmp_path)
    run(config)
    summary = run(config)
    assert summary.ok
    assert all(s.skipped for s in summary.stages)


def test_partial_stage_selection_stops_early(tmp_path):
    config = _config(tmp_path, stages=["acquire", "embed", "cluster"])
    summary = run(config)
    assert summary.ok
    assert [s.name for s in summary.stages] == ["acquire", "embed", "cluster"]
    assert not (tmp_path / "out" / "survey.md").exists()


def test_tampered_artifact_refuses_resume(tmp_path):
    config = _config(tmp_path)
    run(config)
    corpus_path = tmp_path / "out" / "corpus.json"
    payload = json.loads(corpus_path.read_text())
    payload["degraded"] = True
    corpus_path.write_text(json.dumps(payload))
    with pytest.raises(CorruptCheckpointError):
        run(config)


def test_validate_warns_on_tight_k_range(tmp_path):
    import dataclasses

    from litpipe.acquisition.models import AcquisitionConfig

    config = _config(
        tmp_path,
        k_max=15,
        acquisition=dataclasses.replace(AcquisitionConfig(), target_paper_count=10),
    )
    diags = validate(config)
    assert any("clamped" in d["message"] for d in diags)
    assert not any(d["level"] == "fatal" for d in diags)


def test_validate_fatal_on_inverted_k_range(tmp_path):
    diags = validate(_config(tmp_path, k_min=8, k_max=4))
    assert any(d["level"] == "fatal" for d in diags)
