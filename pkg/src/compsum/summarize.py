"""Query-time summarisation: pick the best concept block for the feature
keywords, weight its sentences, and compose per-document summaries into a
side-by-side comparative table (HTML or JSON).

Sentence weight combines four signals, divided by sentence length in tokens:
occurrence counts of the query terms, a proximity bonus e^(-gamma*(D-1))
where D is the mean token gap between feature-term hits, a markup-emphasis
weight, and a within-parent location weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from html import escape

from .errors import (
    NoBlocksError,
    NoDocumentsError,
    SentenceLengthError,
    UndefinedSimilarityError,
)
from .segment import ConceptBlock
from .store import DocumentRecord, StoredSentence
from .textproc import load_stopwords, stem, tokenize

NO_MATCH_SUBTITLE = "no match"

EMPHASIS_WEIGHT_STRONG = frozenset(
    {"bold", "underline", "italics", "caption", "paragraph-title"}
)


@dataclass
class FeatureQuery:
    query_terms: list[str]
    feature_terms: list[str]
    synonyms: dict[str, list[str]] = field(default_factory=dict)
    raw_query: str = ""
    raw_features: list[str] = field(default_factory=list)

    @classmethod
    def from_raw(
        cls,
        query: str,
        features: list[str],
        synonyms: dict[str, list[str]] | None = None,
    ) -> "FeatureQuery":
        """Normalise raw user strings: lowercase, drop stopwords, stem."""
        stopwords = load_stopwords()

        def norm(text: str) -> list[str]:
            return [stem(t) for t in tokenize(text) if t not in stopwords]

        norm_synonyms = {}
        for term, alts in (synonyms or {}).items():
            canon = stem(term.lower())
            norm_synonyms[canon] = sorted({stem(a.lower()) for a in alts})
        return cls(
            query_terms=norm(query),
            feature_terms=[t for f in features for t in norm(f)],
            synonyms=norm_synonyms,
            raw_query=query,
            raw_features=list(features),
        )


@dataclass
class WeightParams:
    gamma: float = 0.5
    alpha_tag: float = 1.0
    beta_loc: float = 1.0
    max_sentences: int | None = None
    ratio: float | None = None

    def __post_init__(self):
        if (self.max_sentences is None) == (self.ratio is None):
            raise ValueError("set exactly one of max_sentences or ratio")
        if self.max_sentences is not None and self.max_sentences < 1:
            raise ValueError("max_sentences must be positive")
        if self.ratio is not None and not (0.0 < self.ratio <= 1.0):
            raise ValueError("ratio must be in (0, 1]")
        if min(self.gamma, self.alpha_tag, self.beta_loc) < 0:
            raise ValueError("gamma/alpha_tag/beta_loc must be >= 0")


@dataclass
class SummarySentence:
    seq_no: int
    text: str
    score: float


@dataclass
class SummarySection:
    subtitle: str
    sentences: list[SummarySentence]


@dataclass
class DocumentSummary:
    doc_id: str
    title: str
    sections: list[SummarySection]


@dataclass
class ComparativeSummary:
    query: str
    features: list[str]
    columns: list[DocumentSummary]


def _matches(token_stem: str, term: str, synonyms: dict[str, list[str]]) -> bool:
    return token_stem == term or token_stem in synonyms.get(term, ())


def feature_block_similarity(fq: FeatureQuery, cb: ConceptBlock) -> float:
    """Summed frequency of feature-matching concepts over the block's
    frequency-vector norm, capped at 1. Zero when nothing matches."""
    entries = cb.concepts.entries
    if not entries:
        raise UndefinedSimilarityError(f"concept block {cb.id} has no concepts")
    matched = [
        t for t in entries
        if any(_matches(t, f, fq.synonyms) for f in fq.feature_terms)
    ]
    if not matched:
        return 0.0
    norm = math.sqrt(sum(c * c for c in entries.values()))
    return min(1.0, sum(entries[t] for t in matched) / norm)


def select_best_block(fq: FeatureQuery, blocks: list[ConceptBlock]) -> ConceptBlock | None:
    """Highest-similarity block (ties to lowest id); None when all score 0.

    Blocks with empty concept lists (e.g. a stopword-only heading) can never
    match and are skipped rather than treated as errors here.
    """
    if not blocks:
        raise NoBlocksError("no concept blocks to select from")
    best: ConceptBlock | None = None
    best_score = 0.0
    for cb in sorted(blocks, key=lambda b: b.id):
        if not cb.concepts:
            continue
        score = feature_block_similarity(fq, cb)
        if score > best_score:
            best, best_score = cb, score
    return best


def avg_feature_distance(
    sentence,
    terms: list[str],
    synonyms: dict[str, list[str]] | None = None,
) -> float:
    """Mean number of tokens between consecutive matched-term positions,
    clamped below at 1; +inf when fewer than two positions match."""
    synonyms = synonyms or {}
    tokens = tokenize(sentence.text)
    positions = [
        i for i, tok in enumerate(tokens)
        if any(_matches(stem(tok), t, synonyms) for t in terms)
    ]
    if len(positions) < 2:
        return math.inf
    gaps = [b - a - 1 for a, b in zip(positions, positions[1:])]
    return max(1.0, sum(gaps) / len(gaps))


def _tag_weight(emphasis: frozenset[str]) -> float:
    if emphasis & EMPHASIS_WEIGHT_STRONG:
        return 3.0
    if "color-change" in emphasis:
        return 2.0
    return 0.0


def _location_weight(sibling_index: int, sibling_count: int) -> float:
    if sibling_count <= 1:
        return 1.0
    return 1.0 - 0.5 * (sibling_index / (sibling_count - 1))


def sentence_weight(sentence, fq: FeatureQuery, params: WeightParams) -> float:
    """Score one sentence (any object with text/emphasis/sibling fields)."""
    tokens = tokenize(sentence.text)
    if not tokens:
        raise SentenceLengthError(f"sentence has no tokens: {sentence.text!r}")
    stems = [stem(t) for t in tokens]

    term_hits = sum(
        sum(1 for s in stems if _matches(s, term, fq.synonyms))
        for term in dict.fromkeys(fq.query_terms)
    )

    distance = avg_feature_distance(sentence, fq.feature_terms, fq.synonyms)
    proximity = 0.0 if math.isinf(distance) else math.exp(-params.gamma * (distance - 1.0))

    weight = (
        term_hits
        + proximity
        + params.alpha_tag * _tag_weight(sentence.emphasis)
        + params.beta_loc * _location_weight(sentence.sibling_index, sentence.sibling_count)
    )
    return weight / len(tokens)


def extract_summary(
    record: DocumentRecord,
    fq: FeatureQuery,
    params: WeightParams,
) -> DocumentSummary:
    """Top-k sentences of the best-matching concept block, grouped into
    sections by each sentence's stored heading."""
    if not record.concept_blocks:
        raise NoBlocksError(f"{record.doc_id} has no concept blocks")
    best = select_best_block(fq, record.concept_blocks)
    if best is None:
        return DocumentSummary(
            doc_id=record.doc_id,
            title=record.title,
            sections=[SummarySection(subtitle=NO_MATCH_SUBTITLE, sentences=[])],
        )

    block_sentences = [record.sentences[ref] for ref in best.sentence_refs]
    if params.max_sentences is not None:
        k = params.max_sentences
    else:
        k = math.ceil(params.ratio * len(block_sentences))

    scored = [
        (sentence_weight(s, fq, params), s) for s in block_sentences
    ]
    chosen = sorted(scored, key=lambda pair: (-pair[0], pair[1].seq_no))[:k]
    chosen.sort(key=lambda pair: pair[1].seq_no)

    sections: list[SummarySection] = []
    by_subtitle: dict[str, SummarySection] = {}
    for score, sentence in chosen:
        section = by_subtitle.get(sentence.heading)
        if section is None:
            section = SummarySection(subtitle=sentence.heading, sentences=[])
            by_subtitle[sentence.heading] = section
            sections.append(section)
        section.sentences.append(
            SummarySentence(seq_no=sentence.seq_no, text=sentence.text, score=score)
        )
    return DocumentSummary(doc_id=record.doc_id, title=record.title, sections=sections)


def compose_comparative(
    summaries: list[DocumentSummary],
    fq: FeatureQuery,
) -> ComparativeSummary:
    """Arrange per-document summaries as columns, in the given order."""
    if not summaries:
        raise NoDocumentsError("at least one document summary is required")
    return ComparativeSummary(
        query=fq.raw_query,
        features=list(fq.raw_features),
        columns=list(summaries),
    )


def comparative_to_dict(cs: ComparativeSummary) -> dict:
    return {
        "query": cs.query,
        "features": cs.features,
        "columns": [
            {
                "doc_id": col.doc_id,
                "title": col.title,
                "sections": [
                    {
                        "subtitle": section.subtitle,
                        "sentences": [
                            {"seq_no": s.seq_no, "text": s.text, "score": s.score}
                            for s in section.sentences
                        ],
                    }
                    for section in col.sections
                ],
            }
            for col in cs.columns
        ],
    }


def render_comparative_html(cs: ComparativeSummary) -> str:
    """Self-contained page with a single table, one column per document."""
    head = (
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n"
        "<title>Comparative summary</title>\n"
        "<style>table{border-collapse:collapse;width:100%}"
        "td,th{border:1px solid #999;vertical-align:top;padding:8px}"
        "th{background:#eee}</style>\n</head>\n<body>\n"
    )
    lines = [head]
    lines.append("<h1>Comparative summary</h1>\n")
    lines.append(
        f"<p>Query: {escape(cs.query)} &mdash; "
        f"Features: {escape(', '.join(cs.features))}</p>\n"
    )
    lines.append("<table>\n<thead>\n<tr>")
    for col in cs.columns:
        lines.append(f"<th>{escape(col.title)}</th>")
    lines.append("</tr>\n</thead>\n<tbody>\n<tr>")
    for col in cs.columns:
        lines.append("<td>")
        for section in col.sections:
            lines.append(f"<p><strong>{escape(section.subtitle)}</strong></p>")
            for sentence in section.sentences:
                lines.append(f"<p>{escape(sentence.text)}</p>")
        lines.append("</td>")
    lines.append("</tr>\n</tbody>\n</table>\n</body>\n</html>\n")
    return "".join(lines)
