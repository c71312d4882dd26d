"""Command-line entry point."""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from litpipe.acquisition.models import AcquisitionConfig
from litpipe.errors import InvalidInputError, LitPipeError
from litpipe.orchestrator import STAGE_NAMES, PipelineConfig, run, validate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def _parse_providers(spec: str) -> dict:
    """Parse "embedding=mock,generation=external" style provider specs."""
    out = {"embedding": "mock", "generation": "mock", "judge": "mock"}
    if not spec:
        return out
    for part in spec.split(","):
        if "=" not in part:
            raise InvalidInputError(f"bad provider spec segment {part!r}")
        role, choice = part.split("=", 1)
        role, choice = role.strip(), choice.strip()
        if role not in out:
            raise InvalidInputError(f"unknown provider role {role!r}")
        allowed = {"embedding": {"mock", "sidecar"}}.get(role, {"mock", "external"})
        if choice not in allowed:
            raise InvalidInputError(f"provider {role} must be one of {sorted(allowed)}")
        out[role] = choice
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="litpipe", description="Literature survey pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the survey pipeline")
    p.add_argument("--topic", required=True, help="survey topic")
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-papers", type=int, default=150,
                   help="target corpus size used for diagnostics")
    p.add_argument("--k-min", type=int, default=5)
    p.add_argument("--k-max", type=int, default=15)
    p.add_argument("--word-budget", type=int, default=10_000)
    p.add_argument("--coverage-min", type=float, default=0.50)
    p.add_argument("--coverage-target", type=float, default=0.80)
    p.add_argument("--providers", default="",
                   help="e.g. embedding=sidecar,generation=external,judge=mock")
    p.add_argument("--stages", default="",
                   help=f"comma-separated subset of {','.join(STAGE_NAMES)}")
    p.add_argument("--cache-dir", type=Path, default=None)
    p.add_argument("--mock-sources", action="store_true",
                   help="serve a deterministic synthetic corpus instead of live APIs")
    p.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        providers = _parse_providers(args.providers)
        stages = [s.strip() for s in args.stages.split(",") if s.strip()] or None
        if stages:
            for s in stages:
                if s not in STAGE_NAMES:
                    raise InvalidInputError(f"unknown stage {s!r}")
        acquisition = dataclasses.replace(
            AcquisitionConfig(), target_paper_count=args.max_papers
        )
        config = PipelineConfig(
            topic=args.topic,
            out_dir=args.out,
            seed=args.seed,
            acquisition=acquisition,
            k_min=args.k_min,
            k_max=args.k_max,
            word_budget=args.word_budget,
            coverage_min=args.coverage_min,
            coverage_target=args.coverage_target,
            providers=providers,
            cache_dir=args.cache_dir,
            stages=stages,
            mock_sources=args.mock_sources,
        )
    except InvalidInputError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    diagnostics = validate(config)
    fatal = False
    for diag in diagnostics:
        stream = sys.stderr if diag["level"] == "fatal" else sys.stdout
        print(f"{diag['level']}: {diag['message']}", file=stream)
        fatal = fatal or diag["level"] == "fatal"
    if fatal:
        return EXIT_CONFIG

    try:
        summary = run(config)
    except LitPipeError as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        return EXIT_STAGE
    if not summary.ok:
        print(f"stage {summary.failed_stage} failed: {summary.error}", file=sys.stderr)
        return EXIT_STAGE
    for name, path in summary.outputs.items():
        print(f"{name}: {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
