"""Keyword search over the indexed corpus (tf-idf on stemmed tokens)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyQueryError
from .store import DocumentStore
from .textproc import load_stopwords, stem, tokenize


@dataclass
class SearchResult:
    doc_id: str
    source: str
    title: str
    score: float
    snippet: str


@dataclass
class _IndexedDoc:
    doc_id: str
    source: str
    title: str
    term_counts: dict[str, int]
    sentence_texts: list[str]
    sentence_stems: list[set[str]]


class SearchIndex:
    """In-memory tf-idf index built from a document store."""

    def __init__(self, docs: list[_IndexedDoc]):
        self._docs = docs
        self._df: dict[str, int] = {}
        for doc in docs:
            for term in doc.term_counts:
                self._df[term] = self._df.get(term, 0) + 1

    @classmethod
    def from_store(cls, store: DocumentStore) -> "SearchIndex":
        stopwords = load_stopwords()
        docs = []
        for doc_id, source, title, _ in store.list_documents():
            record = store.load_document(doc_id)
            counts: dict[str, int] = {}
            texts: list[str] = []
            stems: list[set[str]] = []
            for sentence in record.sentences:
                sentence_stems = {
                    stem(tok) for tok in tokenize(sentence.text) if tok not in stopwords
                }
                for tok in tokenize(sentence.text):
                    if tok in stopwords:
                        continue
                    s = stem(tok)
                    counts[s] = counts.get(s, 0) + 1
                texts.append(sentence.text)
                stems.append(sentence_stems)
            docs.append(
                _IndexedDoc(
                    doc_id=doc_id,
                    source=source,
                    title=title,
                    term_counts=counts,
                    sentence_texts=texts,
                    sentence_stems=stems,
                )
            )
        return cls(docs)

    def search(self, query: str, limit: int = 10) -> list[SearchResult]:
        """Rank by sum of tf(term) * ln(1 + N/df) over stemmed query terms;
        zero-scoring documents are dropped, ties broken by doc_id."""
        if not query or not query.strip():
            raise EmptyQueryError("query must be non-empty")
        if limit < 1:
            raise ValueError("limit must be a positive integer")
        stopwords = load_stopwords()
        terms = [stem(tok) for tok in tokenize(query) if tok not in stopwords]
        n_docs = len(self._docs)
        results: list[SearchResult] = []
        for doc in self._docs:
            score = 0.0
            for term in terms:
                tf = doc.term_counts.get(term, 0)
                if tf:
                    score += tf * math.log(1.0 + n_docs / self._df[term])
            if score <= 0.0:
                continue
            results.append(
                SearchResult(
                    doc_id=doc.doc_id,
                    source=doc.source,
                    title=doc.title,
                    score=score,
                    snippet=_snippet(doc, terms),
                )
            )
        results.sort(key=lambda r: (-r.score, r.doc_id))
        return results[:limit]


def _snippet(doc: _IndexedDoc, terms: list[str]) -> str:
    term_set = set(terms)
    for text, stems in zip(doc.sentence_texts, doc.sentence_stems):
        if stems & term_set:
            return text
    return doc.sentence_texts[0] if doc.sentence_texts else ""


def search(store: DocumentStore, query: str, limit: int = 10) -> list[SearchResult]:
    """One-shot convenience: build the index and run a single query."""
    return SearchIndex.from_store(store).search(query, limit)
