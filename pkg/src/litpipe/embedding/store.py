"""Persistent embedding cache: append-only records plus an offset index.

One record file per model id; each record is the 32-byte content hash
followed by 384 little-endian 32-bit floats (raw, pre-normalization, so the
normalization policy can change without re-embedding). The index file maps
hex hash -> byte offset.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from litpipe.embedding.provider import EMBEDDING_DIM

RECORD_BYTES = 32 + EMBEDDING_DIM * 4


def _safe_name(model_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", model_id)


class EmbeddingStore:
    """Disk cache keyed by (model_id, content hash); entries never expire."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._indexes: Dict[str, Dict[str, int]] = {}

    def _paths(self, model_id: str):
        base = self.directory / _safe_name(model_id)
        return base.with_suffix(".bin"), base.with_suffix(".idx")

    def _index(self, model_id: str) -> Dict[str, int]:
        index = self._indexes.get(model_id)
        if index is None:
            index = {}
            _, idx_path = self._paths(model_id)
            if idx_path.exists():
                for line in idx_path.read_text(encoding="ascii").splitlines():
                    if line:
                        digest, offset = line.split()
                        index[digest] = int(offset)
            self._indexes[model_id] = index
        return index

    def get(self, model_id: str, content_hash: str) -> Optional[np.ndarray]:
        offset = self._index(model_id).get(content_hash)
        if offset is None:
            return None
        bin_path, _ = self._paths(model_id)
        with open(bin_path, "rb") as fh:
            fh.seek(offset)
            record = fh.read(RECORD_BYTES)
        if len(record) != RECORD_BYTES or record[:32].hex() != content_hash:
            return None  # truncated or stale record; treat as miss
        return np.frombuffer(record[32:], dtype="<f4").copy()

    def put(self, model_id: str, content_hash: str, vector: np.ndarray) -> None:
        index = self._index(model_id)
        if content_hash in index:
            return
        bin_path, idx_path = self._paths(model_id)
        record = bytes.fromhex(content_hash) + np.asarray(vector, dtype="<f4").tobytes()
        with open(bin_path, "ab") as fh:
            offset = fh.tell()
            fh.write(record)
        with open(idx_path, "a", encoding="ascii") as fh:
            fh.write(f"{content_hash} {offset}\n")
        index[content_hash] = offset
