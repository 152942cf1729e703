"""Corpus manifests: one document per line, tab-separated.

    doc_id <TAB> path <TAB> partition <TAB> parallel_key(optional)

Paths are resolved relative to the manifest file.  Blank lines and lines
starting with ``#`` are ignored.  Manifest metadata wins over any
``# newdoc id`` comments inside the CoNLL-U files.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from .conllu import PARTITIONS, Corpus, read_conllu
from .errors import ManifestError


@dataclass(frozen=True, slots=True)
class ManifestEntry:
    doc_id: str
    path: str
    partition: str
    parallel_key: str | None = None


def read_manifest(path) -> list[ManifestEntry]:
    path = Path(path)
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) not in (3, 4):
            raise ManifestError(f"{path}:{line_no}: expected 3 or 4 tab-separated columns, got {len(cols)}")
        doc_id, doc_path, partition = cols[0], cols[1], cols[2]
        parallel_key = cols[3] if len(cols) == 4 and cols[3] else None
        if partition not in PARTITIONS:
            raise ManifestError(f"{path}:{line_no}: unknown partition {partition!r}")
        if doc_id in seen:
            raise ManifestError(f"{path}:{line_no}: duplicate doc_id {doc_id!r}")
        seen.add(doc_id)
        entries.append(ManifestEntry(doc_id, doc_path, partition, parallel_key))
    return entries


def load_corpus(manifest_path, name: str | None = None) -> Corpus:
    """Read every document listed in a manifest into one Corpus."""
    manifest_path = Path(manifest_path)
    entries = read_manifest(manifest_path)
    base = manifest_path.parent
    docs = []
    for entry in entries:
        doc_file = base / entry.path
        try:
            data = doc_file.read_bytes()
        except OSError as exc:
            raise ManifestError(f"cannot read {doc_file}: {exc}") from exc
        docs.append(read_conllu(data, entry))
    return Corpus(name=name if name is not None else manifest_path.stem, documents=tuple(docs))


def write_manifest(entries: list[ManifestEntry], path) -> None:
    lines = []
    for e in entries:
        cols = [e.doc_id, e.path, e.partition]
        if e.parallel_key:
            cols.append(e.parallel_key)
        lines.append("\t".join(cols))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def manifest_digest(path) -> str:
    """SHA-256 of the manifest bytes, used in report reproducibility headers."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
