"""End-to-end indexing: raw HTML in, storable document record out."""

from __future__ import annotations

import logging
import re
from datetime import datetime, timezone
from urllib.parse import urlparse

from .concepts import ConceptExtractor, default_extractor
from .dom import RawDocument, build_dom, clean_html, document_title, extract_micro_blocks
from .segment import DEFAULT_ALPHA, form_topic_blocks, merge_into_concept_blocks
from .store import DocumentRecord, DocumentStore, StoredSentence

logger = logging.getLogger(__name__)

PIPELINE_VERSION = "1"

_SLUG_RE = re.compile(r"[^a-z0-9]+")


def pipeline_version(extractor: ConceptExtractor) -> str:
    return f"{PIPELINE_VERSION}+{extractor.name}"


def index_document(
    raw: RawDocument,
    *,
    alpha: float = DEFAULT_ALPHA,
    extractor: ConceptExtractor | None = None,
) -> DocumentRecord:
    """Clean, segment, and package one document for offline storage."""
    extractor = extractor or default_extractor()
    cleaned = clean_html(raw)
    tree = build_dom(cleaned)
    micro_blocks = extract_micro_blocks(tree)
    topic_blocks = form_topic_blocks(micro_blocks, extractor)
    concept_blocks = merge_into_concept_blocks(topic_blocks, alpha=alpha)

    sentences = [
        StoredSentence(
            seq_no=s.seq_no,
            text=s.text,
            emphasis=s.emphasis,
            sibling_index=s.sibling_index,
            sibling_count=s.sibling_count,
            heading=tb.heading or "",
        )
        for tb in topic_blocks
        for s in tb.sentences
    ]

    record = DocumentRecord(
        doc_id=raw.doc_id,
        source=raw.source,
        title=document_title(tree) or raw.doc_id,
        sentences=sentences,
        concept_blocks=concept_blocks,
        indexed_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        pipeline_version=pipeline_version(extractor),
    )
    record.validate()
    return record


def load_checked(store: DocumentStore, doc_id: str) -> DocumentRecord:
    """Load a record, warning when it was built by a different pipeline."""
    record = store.load_document(doc_id)
    current = pipeline_version(default_extractor())
    if record.pipeline_version != current:
        logger.warning(
            "document %s was indexed with pipeline %s (current %s); consider re-indexing",
            doc_id, record.pipeline_version, current,
        )
    return record


def derive_doc_id(source: str) -> str:
    """Stable, filesystem-safe identifier from a path or URL."""
    parsed = urlparse(source)
    if parsed.scheme in ("http", "https"):
        base = f"{parsed.netloc}{parsed.path}"
    else:
        base = source.rsplit("/", 1)[-1]
        if base.endswith((".html", ".htm")):
            base = base.rsplit(".", 1)[0]
    slug = _SLUG_RE.sub("-", base.lower()).strip("-")
    return slug or "doc"
