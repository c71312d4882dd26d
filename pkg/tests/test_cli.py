import json

from litpipe.cli import EXIT_CONFIG, EXIT_OK, main


def test_run_mock_sources_end_to_end(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(
        [
            "run",
            "--topic", "large language model agents",
            "--out", str(out),
            "--mock-sources",
            "--seed", "3",
        ]
    )
    assert code == EXIT_OK
    for artifact in [
        "corpus.json",
        "embeddings.npy",
        "clusters.json",
        "clustering_report.md",
        "survey.md",
        "enhanced_evaluation_v3.json",
        "run_summary.json",
    ]:
        assert (out / artifact).exists(), artifact
    summary = json.loads((out / "run_summary.json").read_text())
    assert summary["failed_stage"] is None
    assert [s["name"] for s in summary["stages"]] == [
        "acquire", "embed", "cluster", "write", "evaluate",
    ]


def test_bad_provider_spec_is_config_error(tmp_path):
    code = main(
        [
            "run",
            "--topic", "t",
            "--out", str(tmp_path / "x"),
            "--providers", "embedding=banana",
        ]
    )
    assert code == EXIT_CONFIG


def test_bad_stage_is_config_error(tmp_path):
    code = main(
        ["run", "--topic", "t", "--out", str(tmp_path / "x"), "--stages", "nonsense"]
    )
    assert code == EXIT_CONFIG


def test_external_provider_without_endpoint_is_config_error(tmp_path, monkeypatch):
    monkeypatch.delenv("LITPIPE_GEN_ENDPOINT", raising=False)
    code = main(
        [
            "run",
            "--topic", "t",
            "--out", str(tmp_path / "x"),
            "--providers", "generation=external",
            "--mock-sources",
        ]
    )
    assert code == EXIT_CONFIG
