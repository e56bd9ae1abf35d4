from __future__ import annotations

from pathlib import Path

import pytest

from compsum.dom import load_document
from compsum.pipeline import derive_doc_id, index_document
from compsum.store import DocumentStore

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_paths() -> list[Path]:
    paths = sorted(FIXTURES.glob("college_*.html"))
    assert len(paths) >= 6
    return paths


@pytest.fixture(scope="session")
def indexed_store(tmp_path_factory, fixture_paths) -> DocumentStore:
    """Fixture corpus indexed once per test session."""
    store = DocumentStore(tmp_path_factory.mktemp("store"))
    for path in fixture_paths:
        doc_id = derive_doc_id(str(path))
        record = index_document(load_document(str(path), doc_id))
        store.store_document(record)
    return store
