"""
Run manifests: what a command was run with, digests of what it read, and
how long it took. One manifest.json per output directory.
"""

import hashlib
import json
import logging
import os
import time
from datetime import datetime, timezone
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from data_pipeline.synthetic import RNG_ALGORITHM

# Set up logging
logger = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"
HASH_ALGORITHM = "sha256"
MANIFEST_NAME = "manifest.json"


def file_digest(path, chunk_size=1 << 20):
    digest = hashlib.new(HASH_ALGORITHM)
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(chunk_size), b""):
            digest.update(block)
    return digest.hexdigest()


class RunManifest(BaseModel):
    command: str
    config: Dict[str, object] = Field(default_factory=dict)
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)
    seed: Optional[int] = None
    tool_version: str = TOOL_VERSION
    rng_algorithm: str = RNG_ALGORITHM
    hash_algorithm: str = HASH_ALGORITHM
    started_at: str = ""
    duration_seconds: float = 0.0


class ManifestRecorder:
    """Times a command and writes its manifest next to its outputs."""

    def __init__(self, command, config, seed=None):
        self.manifest = RunManifest(
            command=command,
            config=config,
            seed=seed,
            started_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        self._start = time.perf_counter()

    def add_input(self, path):
        if path and os.path.isfile(path):
            self.manifest.inputs[path] = file_digest(path)

    def add_output(self, path):
        self.manifest.outputs.append(path)

    def write(self, out_dir):
        self.manifest.duration_seconds = round(time.perf_counter() - self._start, 6)
        os.makedirs(out_dir or ".", exist_ok=True)
        path = os.path.join(out_dir or ".", MANIFEST_NAME)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(self.manifest.model_dump(), f, indent=2, sort_keys=True, default=str)
            f.write("\n")
        logger.info(f"Wrote run manifest to {path}")
        return path
