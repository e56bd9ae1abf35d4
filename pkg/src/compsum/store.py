"""Offline document store: one JSON record per document plus a manifest.

Records are written atomically (temp file + rename) so concurrent readers
see either the old or the new record, never a partial one. Layout:

    <root>/manifest.json
    <root>/docs/<doc_id>.json
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .concepts import ConceptList
from .errors import DocumentNotFoundError, RecordValidationError, StoreError
from .segment import ConceptBlock


@dataclass
class StoredSentence:
    seq_no: int
    text: str
    emphasis: frozenset[str]
    sibling_index: int
    sibling_count: int
    heading: str


@dataclass
class DocumentRecord:
    doc_id: str
    source: str
    title: str
    sentences: list[StoredSentence]
    concept_blocks: list[ConceptBlock]
    indexed_at: str
    pipeline_version: str

    def validate(self) -> None:
        seqs = [s.seq_no for s in self.sentences]
        if seqs != list(range(len(seqs))):
            raise RecordValidationError(
                f"{self.doc_id}: sentence seq_nos must be dense 0..N-1"
            )
        known = set(seqs)
        for cb in self.concept_blocks:
            if cb.sentence_refs != sorted(set(cb.sentence_refs)):
                raise RecordValidationError(
                    f"{self.doc_id}: {cb.id} sentence_refs must be sorted and unique"
                )
            dangling = [ref for ref in cb.sentence_refs if ref not in known]
            if dangling:
                raise RecordValidationError(
                    f"{self.doc_id}: {cb.id} has dangling sentence_refs {dangling}"
                )

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "source": self.source,
            "title": self.title,
            "indexed_at": self.indexed_at,
            "pipeline_version": self.pipeline_version,
            "sentences": [
                {
                    "seq_no": s.seq_no,
                    "text": s.text,
                    "emphasis": sorted(s.emphasis),
                    "sibling_index": s.sibling_index,
                    "sibling_count": s.sibling_count,
                    "heading": s.heading,
                }
                for s in self.sentences
            ],
            "concept_blocks": [
                {
                    "id": cb.id,
                    "doc_id": cb.doc_id,
                    "topic_block_ids": cb.topic_block_ids,
                    "concepts": cb.concepts.entries,
                    "sentence_refs": cb.sentence_refs,
                    "headings": cb.headings,
                }
                for cb in self.concept_blocks
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DocumentRecord":
        return cls(
            doc_id=data["doc_id"],
            source=data["source"],
            title=data["title"],
            indexed_at=data["indexed_at"],
            pipeline_version=data["pipeline_version"],
            sentences=[
                StoredSentence(
                    seq_no=s["seq_no"],
                    text=s["text"],
                    emphasis=frozenset(s["emphasis"]),
                    sibling_index=s["sibling_index"],
                    sibling_count=s["sibling_count"],
                    heading=s["heading"],
                )
                for s in data["sentences"]
            ],
            concept_blocks=[
                ConceptBlock(
                    id=cb["id"],
                    doc_id=cb["doc_id"],
                    topic_block_ids=list(cb["topic_block_ids"]),
                    concepts=ConceptList({t: int(c) for t, c in cb["concepts"].items()}),
                    sentence_refs=list(cb["sentence_refs"]),
                    headings=list(cb["headings"]),
                )
                for cb in data["concept_blocks"]
            ],
        )


class DocumentStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.docs_dir = self.root / "docs"
        self.manifest_path = self.root / "manifest.json"
        self.docs_dir.mkdir(parents=True, exist_ok=True)

    def _doc_path(self, doc_id: str) -> Path:
        safe = doc_id.replace("/", "_")
        return self.docs_dir / f"{safe}.json"

    def _write_atomic(self, path: Path, payload: bytes) -> None:
        try:
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "wb") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        except OSError as exc:
            raise StoreError(f"cannot write {path}: {exc}") from exc

    def store_document(self, record: DocumentRecord) -> None:
        """Durably write a record, atomically replacing any previous one."""
        record.validate()
        payload = json.dumps(record.to_dict(), ensure_ascii=False, indent=1).encode("utf-8")
        self._write_atomic(self._doc_path(record.doc_id), payload)
        manifest = self._read_manifest()
        manifest[record.doc_id] = {
            "source": record.source,
            "title": record.title,
            "indexed_at": record.indexed_at,
        }
        self._write_atomic(
            self.manifest_path,
            json.dumps(manifest, ensure_ascii=False, indent=1, sort_keys=True).encode("utf-8"),
        )

    def load_document(self, doc_id: str) -> DocumentRecord:
        path = self._doc_path(doc_id)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise DocumentNotFoundError(doc_id) from None
        return DocumentRecord.from_dict(data)

    def has_document(self, doc_id: str) -> bool:
        return self._doc_path(doc_id).exists()

    def _read_manifest(self) -> dict:
        try:
            return json.loads(self.manifest_path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return {}

    def list_documents(self) -> list[tuple[str, str, str, str]]:
        """(doc_id, source, title, indexed_at) tuples sorted by doc_id."""
        manifest = self._read_manifest()
        return [
            (doc_id, entry["source"], entry["title"], entry["indexed_at"])
            for doc_id, entry in sorted(manifest.items())
        ]
