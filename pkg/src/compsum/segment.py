"""Topic-block formation and concept-similarity-driven merging.

Adjacent micro blocks under the same parent element form a topic block.
Topic blocks whose concept lists are pairwise similar above a threshold are
agglomerated (greedy complete linkage, deterministic tie-breaking) into
concept blocks, the units summaries are later extracted from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .concepts import (
    ConceptExtractor,
    ConceptList,
    Sentence,
    default_extractor,
    merge_concept_lists,
    split_sentences,
)
from .dom import HEADING_EMPHASIS, MicroBlock
from .errors import AbsentTermError

DEFAULT_ALPHA = 0.6


@dataclass
class TopicBlock:
    id: str
    doc_id: str
    parent_path: tuple[tuple[str, int], ...]
    micro_block_ids: list[str]
    sentences: list[Sentence]
    concepts: ConceptList
    heading: str | None = None


@dataclass
class ConceptBlock:
    id: str
    doc_id: str
    topic_block_ids: list[str]
    concepts: ConceptList
    sentence_refs: list[int]
    headings: list[str] = field(default_factory=list)


def form_topic_blocks(
    blocks: list[MicroBlock],
    extractor: ConceptExtractor | None = None,
) -> list[TopicBlock]:
    """Merge consecutive micro blocks sharing a parent path; split sentences
    with document-wide numbering; attach concepts and a section heading.

    A block whose first micro block is itself a heading uses its own first
    sentence as the heading; otherwise the nearest preceding heading leaf in
    document order is used, falling back to the block's first sentence.
    """
    extractor = extractor or default_extractor()

    groups: list[list[MicroBlock]] = []
    for mb in blocks:
        if groups and groups[-1][0].parent_path == mb.parent_path:
            groups[-1].append(mb)
        else:
            groups.append([mb])

    topic_blocks: list[TopicBlock] = []
    seq = 0
    last_heading: str | None = None
    for idx, group in enumerate(groups):
        sentences: list[Sentence] = []
        for mb in group:
            sentences.extend(
                split_sentences(
                    mb.text,
                    mb.doc_id,
                    seq + len(sentences),
                    emphasis=mb.emphasis,
                    sibling_index=mb.sibling_index,
                    sibling_count=mb.sibling_count,
                )
            )
        seq += len(sentences)

        concepts = ConceptList()
        for sentence in sentences:
            concepts = merge_concept_lists(concepts, extractor.extract(sentence))

        if group[0].emphasis & HEADING_EMPHASIS and sentences:
            heading = sentences[0].text
        elif last_heading is not None:
            heading = last_heading
        elif sentences:
            heading = sentences[0].text
        else:
            heading = None

        for mb in group:
            if mb.emphasis & HEADING_EMPHASIS:
                last_heading = mb.text

        topic_blocks.append(
            TopicBlock(
                id=f"tb{idx:04d}",
                doc_id=group[0].doc_id,
                parent_path=group[0].parent_path,
                micro_block_ids=[mb.id for mb in group],
                sentences=sentences,
                concepts=concepts,
                heading=heading,
            )
        )
    return topic_blocks


def _norm(concepts: ConceptList) -> float:
    return math.sqrt(sum(ctf * ctf for ctf in concepts.entries.values()))


def ctf_weight(concepts: ConceptList, term: str) -> float:
    """Frequency of the term normalised by the list's frequency vector."""
    if term not in concepts.entries:
        raise AbsentTermError(f"term not in concept list: {term!r}")
    return concepts.entries[term] / _norm(concepts)


def concept_similarity(a: ConceptList, b: ConceptList) -> float:
    """Similarity of two concept lists over their common terms, in [0, 1].

    Disjoint lists score 0. The weighted-frequency difference is clamped so
    frequency mismatches can never push the score outside the unit range.
    """
    common = sorted(a.entries.keys() & b.entries.keys())
    if not common:
        return 0.0
    norm_a = _norm(a)
    norm_b = _norm(b)
    # fixed summation order keeps the result exactly symmetric in a and b
    sum_a = sum(a.entries[t] * (a.entries[t] / norm_a) for t in common)
    sum_b = sum(b.entries[t] * (b.entries[t] / norm_b) for t in common)
    return min(1.0, max(0.0, 1.0 - abs(sum_a - sum_b)))


def topic_block_similarity(tb1: TopicBlock, tb2: TopicBlock) -> float:
    return concept_similarity(tb1.concepts, tb2.concepts)


def merge_into_concept_blocks(
    tbs: list[TopicBlock],
    alpha: float = DEFAULT_ALPHA,
) -> list[ConceptBlock]:
    """Greedy complete-linkage agglomeration above the alpha threshold.

    Repeatedly merges the cluster pair whose minimum cross-pair similarity is
    the global maximum while it exceeds alpha; ties go to the lexicographically
    lowest pair of cluster ids. Every multi-member result therefore satisfies
    the all-pairs condition, and every topic block lands in exactly one block.
    """
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    n = len(tbs)
    sim = [[0.0] * n for _ in range(n)]
    for i in range(n):
        sim[i][i] = 1.0
        for j in range(i + 1, n):
            s = topic_block_similarity(tbs[i], tbs[j])
            sim[i][j] = s
            sim[j][i] = s

    clusters: list[list[int]] = [[i] for i in range(n)]

    def rep(cluster: list[int]) -> str:
        return min(tbs[i].id for i in cluster)

    def linkage(c1: list[int], c2: list[int]) -> float:
        return min(sim[i][j] for i in c1 for j in c2)

    while len(clusters) > 1:
        best: tuple[float, tuple[str, str], int, int] | None = None
        for a_idx in range(len(clusters)):
            for b_idx in range(a_idx + 1, len(clusters)):
                link = linkage(clusters[a_idx], clusters[b_idx])
                key = tuple(sorted((rep(clusters[a_idx]), rep(clusters[b_idx]))))
                if best is None or link > best[0] or (link == best[0] and key < best[1]):
                    best = (link, key, a_idx, b_idx)
        if best is None or best[0] <= alpha:
            break
        _, _, a_idx, b_idx = best
        clusters[a_idx] = sorted(clusters[a_idx] + clusters[b_idx])
        del clusters[b_idx]

    clusters.sort(key=min)
    concept_blocks: list[ConceptBlock] = []
    for k, members in enumerate(clusters):
        concepts = ConceptList()
        refs: set[int] = set()
        headings: list[str] = []
        for i in members:
            concepts = merge_concept_lists(concepts, tbs[i].concepts)
            refs.update(s.seq_no for s in tbs[i].sentences)
            if tbs[i].heading is not None:
                headings.append(tbs[i].heading)
        concept_blocks.append(
            ConceptBlock(
                id=f"cb{k:04d}",
                doc_id=tbs[members[0]].doc_id,
                topic_block_ids=[tbs[i].id for i in members],
                concepts=concepts,
                sentence_refs=sorted(refs),
                headings=headings,
            )
        )
    return concept_blocks
