"""Progress checkpointing: atomic save, hash-verified load, stage ordering."""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from litpipe.errors import CorruptCheckpointError, InvalidInputError

STAGES = ["acquired", "embedded", "clustered", "written", "evaluated"]

CHECKPOINT_FILE = "run_state.json"


def file_sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class Checkpoint:
    stage: str
    artifacts: Dict[str, Dict[str, str]] = field(default_factory=dict)  # name -> {path, sha256}
    timestamp: float = 0.0

    @property
    def stage_index(self) -> int:
        return STAGES.index(self.stage)

    def covers(self, stage: str) -> bool:
        return self.stage_index >= STAGES.index(stage)


def checkpoint_save(
    run_dir: Path,
    stage: str,
    artifact_paths: Dict[str, Path],
    now: float = None,
) -> Checkpoint:
    """Record a completed stage with hashes of every artifact produced so far.

    The write is atomic (temp file + rename) so a crash never leaves a
    half-written checkpoint.
    """
    if stage not in STAGES:
        raise InvalidInputError(f"unknown stage {stage!r}")
    run_dir = Path(run_dir)
    artifacts = {}
    for name, path in artifact_paths.items():
        path = Path(path)
        if not path.exists():
            raise InvalidInputError(f"artifact {name} missing at {path}")
        artifacts[name] = {"path": str(path), "sha256": file_sha256(path)}
    cp = Checkpoint(stage=stage, artifacts=artifacts,
                    timestamp=time.time() if now is None else now)
    payload = {
        "schema": 1,
        "stage": cp.stage,
        "artifacts": cp.artifacts,
        "timestamp": cp.timestamp,
    }
    tmp = run_dir / (CHECKPOINT_FILE + ".tmp")
    tmp.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    tmp.replace(run_dir / CHECKPOINT_FILE)
    return cp


def checkpoint_load(run_dir: Path) -> Optional[Checkpoint]:
    """Load the latest checkpoint, verifying artifact hashes.

    Returns None when no checkpoint exists. A hash mismatch or missing
    artifact raises CorruptCheckpointError: resume is refused.
    """
    path = Path(run_dir) / CHECKPOINT_FILE
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise CorruptCheckpointError(f"unreadable checkpoint: {exc}") from exc
    cp = Checkpoint(
        stage=payload["stage"],
        artifacts=payload.get("artifacts", {}),
        timestamp=payload.get("timestamp", 0.0),
    )
    if cp.stage not in STAGES:
        raise CorruptCheckpointError(f"unknown stage {cp.stage!r}")
    for name, info in cp.artifacts.items():
        apath = Path(info["path"])
        if not apath.exists():
            raise CorruptCheckpointError(f"artifact {name} missing at {apath}")
        if file_sha256(apath) != info["sha256"]:
            raise CorruptCheckpointError(f"artifact {name} hash mismatch")
    return cp
