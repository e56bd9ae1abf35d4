"""Acceptance suite: one test per release criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import threading
import time

import pytest
from fastapi.testclient import TestClient

from compsum.concepts import ConceptList
from compsum.dom import build_dom, clean_html, extract_micro_blocks, load_document
from compsum.pipeline import derive_doc_id, index_document
from compsum.search import search
from compsum.segment import (
    TopicBlock,
    concept_similarity,
    ctf_weight,
    merge_into_concept_blocks,
    topic_block_similarity,
)
from compsum.service import create_app
from compsum.store import DocumentStore
from compsum.summarize import (
    FeatureQuery,
    WeightParams,
    compose_comparative,
    extract_summary,
    feature_block_similarity,
    render_comparative_html,
    sentence_weight,
)
from compsum.store import StoredSentence
from tests.test_segment import similarity_oracle
from tests.test_store import random_record
from tests.test_summarize import brute_force_top_k, record_for_block, stored

SEED = 20260811


def generate_concepts(rng: random.Random) -> dict[str, int]:
    pool = [f"t{i:02d}" for i in range(26)]
    terms = rng.sample(pool, rng.randint(1, 20))
    return {t: rng.randint(1, 9) for t in terms}


def test_formula_oracles_thousand_pairs():
    rng = random.Random(SEED)
    started = time.monotonic()
    for _ in range(1000):
        a = generate_concepts(rng)
        b = generate_concepts(rng)
        ca, cb_ = ConceptList(a), ConceptList(b)
        got = concept_similarity(ca, cb_)
        assert got == pytest.approx(similarity_oracle(a, b), abs=1e-9)
        assert concept_similarity(cb_, ca) == got  # symmetry, exact
        assert concept_similarity(ca, ca) == 1.0
        if not (set(a) & set(b)):
            assert got == 0.0
    disjoint = concept_similarity(ConceptList({"x": 3}), ConceptList({"y": 5}))
    assert disjoint == 0.0
    elapsed = time.monotonic() - started
    assert elapsed < 5.0
    print(f"PASS: similarity formula matches independent oracle on 1000 pairs ({elapsed:.2f}s)")


def test_weight_vectors_are_unit_norm():
    rng = random.Random(SEED + 1)
    for _ in range(1000):
        entries = generate_concepts(rng)
        concepts = ConceptList(entries)
        total = sum(ctf_weight(concepts, t) ** 2 for t in entries)
        assert total == pytest.approx(1.0, abs=1e-9)
    print("PASS: normalised concept weights form a unit vector on 1000 lists")


def cluster_fingerprint(tbs: list[TopicBlock], alpha: float) -> bytes:
    blocks = merge_into_concept_blocks(tbs, alpha)
    payload = [
        {
            "id": cb.id,
            "members": cb.topic_block_ids,
            "concepts": sorted(cb.concepts.entries.items()),
            "refs": cb.sentence_refs,
        }
        for cb in blocks
    ]
    return json.dumps(payload, sort_keys=True).encode("utf-8")


def test_merge_clique_property_and_determinism():
    rng = random.Random(SEED + 2)
    alpha = 0.6
    for _ in range(60):
        n = rng.randint(1, 8)
        seeds = [generate_concepts(rng) for _ in range(n)]

        def fresh():
            return [
                TopicBlock(id=f"tb{i:04d}", doc_id="d", parent_path=(), micro_block_ids=[],
                           sentences=[], concepts=ConceptList(dict(entries)))
                for i, entries in enumerate(seeds)
            ]

        tbs = fresh()
        blocks = merge_into_concept_blocks(tbs, alpha)
        seen = sorted(tb_id for cb in blocks for tb_id in cb.topic_block_ids)
        assert seen == sorted(tb.id for tb in tbs)
        by_id = {tb.id: tb for tb in tbs}
        for cb in blocks:
            for x, y in itertools.combinations(cb.topic_block_ids, 2):
                assert topic_block_similarity(by_id[x], by_id[y]) > alpha
        assert cluster_fingerprint(fresh(), alpha) == cluster_fingerprint(fresh(), alpha)
    print("PASS: complete-linkage clique condition verified by brute force; reruns byte-identical")


def test_desk_checks_and_topk_oracle():
    # block similarity desk value: sum of matched ctf over vector norm
    from tests.test_summarize import cb, fq_for

    assert feature_block_similarity(fq_for(["a"]), cb("cb0000", {"a": 3, "b": 4})) == pytest.approx(
        0.6, abs=1e-6
    )

    fq = FeatureQuery.from_raw("college", ["placement", "recruiters"])
    sentence = stored(
        0, "College placement cell news recruiters arrive today now",
        emphasis={"bold"}, sibling_index=0, sibling_count=3,
    )
    params = WeightParams(gamma=0.5, alpha_tag=1.0, beta_loc=1.0, max_sentences=5)
    weight = sentence_weight(sentence, fq, params)
    assert weight == pytest.approx((1 + math.exp(-0.5) + 3 + 1) / 8, abs=1e-6)
    assert round(weight, 4) == 0.7008

    rng = random.Random(SEED + 3)
    vocab = ["placement", "recruiters", "college", "students", "cell", "campus",
             "library", "filler", "words", "alpha"]
    fq2 = FeatureQuery.from_raw("college campus", ["placement", "recruiters"])
    for _ in range(20):
        n = rng.randint(1, 50)
        sentences = [
            stored(
                i, " ".join(rng.choice(vocab) for _ in range(rng.randint(3, 12))),
                emphasis=rng.choice([frozenset(), frozenset({"bold"})]),
                sibling_index=rng.randint(0, 2), sibling_count=rng.randint(1, 3),
                heading=rng.choice(["IT", "CSE", "ECE"]),
            )
            for i in range(n)
        ]
        record = record_for_block(sentences, {"placement": 2})
        params2 = WeightParams(max_sentences=rng.randint(1, n))
        summary = extract_summary(record, fq2, params2)
        chosen = {s.seq_no for sec in summary.sections for s in sec.sentences}
        assert chosen == brute_force_top_k(record, fq2, params2)
    print("PASS: desk-check values reproduce (0.6, 0.7008) and extraction matches brute-force top-k")


def test_fixture_corpus_end_to_end(tmp_path, fixture_paths):
    started = time.monotonic()
    store = DocumentStore(tmp_path / "store")
    raw_pages = {}
    for path in fixture_paths:
        doc_id = derive_doc_id(str(path))
        raw = load_document(str(path), doc_id)
        raw_pages[doc_id] = raw.bytes.decode("utf-8")
        store.store_document(index_document(raw))

    results = search(store, "engineering college", limit=10)
    assert len(results) >= 6

    fq = FeatureQuery.from_raw("engineering college", ["placement", "recruiters"])
    params = WeightParams(max_sentences=6)
    selection = [r.doc_id for r in results[:3]]
    summaries = [extract_summary(store.load_document(d), fq, params) for d in selection]
    comparative = compose_comparative(summaries, fq)
    html = render_comparative_html(comparative)

    assert html.count("<th>") == len(selection) >= 2
    for summary in summaries:
        subtitles = [sec.subtitle for sec in summary.sections]
        assert subtitles == ["IT", "CSE", "ECE"]
        for sec in summary.sections:
            assert sec.sentences, sec.subtitle
            for s in sec.sentences:
                assert s.text in raw_pages[summary.doc_id]  # byte-identical extraction
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    print(f"PASS: fixture corpus end-to-end with IT/CSE/ECE subtitles ({elapsed:.2f}s)")


def collect_retained_text(doc) -> str:
    tree = build_dom(doc)
    chunks = []

    def walk(node):
        if node.is_leaf:
            chunks.append(node.text)
        for child in node.children:
            walk(child)

    walk(tree.root)
    return "".join(chunks)


def test_cleaning_idempotent_and_text_preserving(fixture_paths):
    for path in fixture_paths:
        raw = load_document(str(path), derive_doc_id(str(path)))
        once = clean_html(raw)
        twice = clean_html(once)
        assert once.bytes == twice.bytes
        assert collect_retained_text(once) == collect_retained_text(twice)
        # cleaned text still appears verbatim in the raw page
        for block in extract_micro_blocks(build_dom(once)):
            assert block.text in raw.bytes.decode("utf-8")
    print("PASS: cleaning is idempotent and preserves retained text on the fixture corpus")


def test_store_round_trip_and_atomic_overwrite(tmp_path):
    store = DocumentStore(tmp_path / "store")
    rng = random.Random(SEED + 4)
    for i in range(200):
        record = random_record(rng, f"doc-{i:03d}")
        store.store_document(record)
        assert store.load_document(record.doc_id) == record

    versions = [random_record(rng, "shared"), random_record(rng, "shared")]
    store.store_document(versions[0])
    stop = threading.Event()
    failures = []

    def reader():
        while not stop.is_set():
            seen = store.load_document("shared")
            if seen not in versions:
                failures.append("partial record observed")
                return

    thread = threading.Thread(target=reader)
    thread.start()
    for i in range(200):
        store.store_document(versions[i % 2])
    stop.set()
    thread.join(timeout=10)
    assert not failures
    print("PASS: 200-record round-trip and atomic overwrite under a concurrent reader")


def test_summarize_responses_byte_identical(indexed_store):
    client = TestClient(create_app(indexed_store.root))
    body = {
        "doc_ids": ["college-a", "college-b", "college-c"],
        "query": "engineering college",
        "features": ["placement", "recruiters"],
        "max_sentences": 6,
    }
    first = client.post("/api/summarize", json=body)
    second = client.post("/api/summarize", json=body)
    assert first.status_code == second.status_code == 200
    assert first.content == second.content
    json.loads(first.content)
    print("PASS: identical summarize requests return byte-identical JSON")
