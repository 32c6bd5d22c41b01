from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

_SAFE_PATH = re.compile(r"^[a-z0-9][a-z0-9._-]*$")


@dataclass(frozen=True)
class RenderedArtifact:
    relative_path: str
    content: bytes

    def __post_init__(self) -> None:
        if not _SAFE_PATH.match(self.relative_path) or ".." in self.relative_path:
            raise ValueError(f"unsafe artifact path {self.relative_path!r}")
        if not self.content:
            raise ValueError(f"artifact {self.relative_path!r} is empty")


def canonical_json(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def write_artifacts(artifacts: Iterable[RenderedArtifact], out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for artifact in artifacts:
        path = out_dir / artifact.relative_path
        path.write_bytes(artifact.content)
        written.append(path)
    return written
