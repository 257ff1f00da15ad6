"""Output bundles with digest-stable manifests.

A bundle is a directory plus ``manifest.json`` listing every emitted file
with its byte length and SHA-256 digest. Identical inputs must produce
identical manifests, which the acceptance suite checks by emitting twice.
The manifest does not list itself.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    bytes: int
    sha256: str


@dataclass(frozen=True)
class Bundle:
    root: Path
    files: tuple[ManifestEntry, ...]

    def digest_map(self) -> dict[str, str]:
        return {entry.path: entry.sha256 for entry in self.files}

    def to_doc(self) -> dict:
        return {"files": [{"path": e.path, "bytes": e.bytes, "sha256": e.sha256}
                          for e in self.files]}


def write_bundle(out_dir: str | Path, files: dict[str, bytes]) -> Bundle:
    """Write ``files`` (relative path -> bytes) plus the manifest."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    entries = []
    for rel in sorted(files):
        data = files[rel]
        target = root / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(data)
        entries.append(ManifestEntry(path=rel, bytes=len(data),
                                     sha256=hashlib.sha256(data).hexdigest()))
    bundle = Bundle(root=root, files=tuple(entries))
    manifest = json.dumps(bundle.to_doc(), indent=2) + "\n"
    (root / "manifest.json").write_bytes(manifest.encode("utf-8"))
    return bundle
