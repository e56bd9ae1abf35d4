"""Sentence splitting and per-sentence concept lists.

A "concept" is a normalised (stemmed, non-stopword) term that falls inside a
verb's argument window. The default extractor is a deterministic heuristic:
it detects verbs from a bundled closed lexicon plus -ed/-ing/-es suffix rules
and takes the non-stopword tokens within four positions of each verb. Any
object with a ``name`` and an ``extract(sentence)`` method can replace it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Protocol

from .textproc import load_stopwords, load_verbs, stem, tokenize

_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")
_LAST_WORD_RE = re.compile(r"([A-Za-z]+)$")

# Trailing words that keep their period (no sentence break after them).
ABBREVIATIONS = frozenset(
    {"dr", "mr", "mrs", "ms", "prof", "rev", "hon", "st", "jr", "sr",
     "no", "nos", "etc", "vs", "eg", "ie", "cf", "al", "inc", "ltd",
     "co", "corp", "dept", "fig", "approx"}
)

VERB_WINDOW = 4


@dataclass
class Sentence:
    doc_id: str
    seq_no: int
    text: str
    tokens: list[str]
    emphasis: frozenset[str] = frozenset()
    sibling_index: int = 0
    sibling_count: int = 1


@dataclass
class ConceptList:
    """Concept term -> conceptual term frequency (ctf >= 1)."""

    entries: dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def add(self, term: str, count: int = 1) -> None:
        self.entries[term] = self.entries.get(term, 0) + count

    def total(self) -> int:
        return sum(self.entries.values())


class ConceptExtractor(Protocol):
    name: str

    def extract(self, sentence: Sentence) -> ConceptList: ...


def split_sentences(
    text: str,
    doc_id: str,
    starting_seq: int,
    *,
    emphasis: frozenset[str] = frozenset(),
    sibling_index: int = 0,
    sibling_count: int = 1,
) -> list[Sentence]:
    """Split normalised text on ./!/? followed by whitespace and a capital
    or digit; a fixed abbreviation list suppresses false breaks."""
    if not text:
        return []
    pieces: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        word = _LAST_WORD_RE.search(text, start, match.start())
        if word and word.group(1).lower() in ABBREVIATIONS and "." in match.group(0):
            continue
        pieces.append(text[start:match.end()].strip())
        start = match.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [
        Sentence(
            doc_id=doc_id,
            seq_no=starting_seq + i,
            text=piece,
            tokens=tokenize(piece),
            emphasis=emphasis,
            sibling_index=sibling_index,
            sibling_count=sibling_count,
        )
        for i, piece in enumerate(pieces)
    ]


class HeuristicConceptExtractor:
    """Verb-window concept extraction over stemmed non-stopword tokens."""

    name = "heuristic-v1"

    def __init__(self, stopwords_path: str | None = None, verbs_path: str | None = None):
        self._stopwords = load_stopwords(stopwords_path)
        self._verbs = load_verbs(verbs_path)

    def _is_verb(self, token: str) -> bool:
        if token in self._verbs:
            return True
        for suffix in ("ing", "ed", "es"):
            if token.endswith(suffix) and len(token) > len(suffix) + 1:
                base = token[: -len(suffix)]
                if base in self._verbs or base + "e" in self._verbs:
                    return True
                if len(base) >= 2 and base[-1] == base[-2] and base[:-1] in self._verbs:
                    return True
        return False

    def extract(self, sentence: Sentence) -> ConceptList:
        tokens = sentence.tokens
        concepts = ConceptList()
        verb_positions = [i for i, tok in enumerate(tokens) if self._is_verb(tok)]
        if not verb_positions:
            # no verb detected: every non-stopword token is a concept
            for tok in tokens:
                if tok not in self._stopwords:
                    concepts.add(stem(tok))
            return concepts
        for v in verb_positions:
            lo = max(0, v - VERB_WINDOW)
            hi = min(len(tokens), v + VERB_WINDOW + 1)
            for i in range(lo, hi):
                if tokens[i] not in self._stopwords:
                    concepts.add(stem(tokens[i]))
        return concepts


_DEFAULT_EXTRACTOR: HeuristicConceptExtractor | None = None


def default_extractor() -> HeuristicConceptExtractor:
    global _DEFAULT_EXTRACTOR
    if _DEFAULT_EXTRACTOR is None:
        _DEFAULT_EXTRACTOR = HeuristicConceptExtractor()
    return _DEFAULT_EXTRACTOR


def extract_concepts(sentence: Sentence, extractor: ConceptExtractor | None = None) -> ConceptList:
    return (extractor or default_extractor()).extract(sentence)


def merge_concept_lists(a: ConceptList, b: ConceptList) -> ConceptList:
    """Union of terms with summed frequencies; commutative and associative."""
    merged = dict(a.entries)
    for term, ctf in b.entries.items():
        merged[term] = merged.get(term, 0) + ctf
    return ConceptList(merged)
