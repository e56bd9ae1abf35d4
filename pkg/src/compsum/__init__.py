"""Comparative summarisation of web pages via concept-block segmentation."""

from .concepts import (
    ConceptList,
    HeuristicConceptExtractor,
    Sentence,
    extract_concepts,
    merge_concept_lists,
    split_sentences,
)
from .dom import (
    DomNode,
    DomTree,
    MicroBlock,
    RawDocument,
    build_dom,
    clean_html,
    extract_micro_blocks,
    load_document,
)
from .pipeline import index_document
from .search import SearchIndex, SearchResult, search
from .segment import (
    ConceptBlock,
    TopicBlock,
    ctf_weight,
    form_topic_blocks,
    merge_into_concept_blocks,
    topic_block_similarity,
)
from .store import DocumentRecord, DocumentStore, StoredSentence
from .summarize import (
    ComparativeSummary,
    DocumentSummary,
    FeatureQuery,
    WeightParams,
    avg_feature_distance,
    compose_comparative,
    extract_summary,
    feature_block_similarity,
    render_comparative_html,
    select_best_block,
    sentence_weight,
)

__version__ = "0.1.0"
