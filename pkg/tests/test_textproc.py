from __future__ import annotations

from compsum.textproc import load_stopwords, load_verbs, normalize_whitespace, stem, tokenize


def test_tokenize_lowercases_and_drops_punctuation():
    assert tokenize("The Cell, trains 40 students!") == ["the", "cell", "trains", "40", "students"]


def test_tokenize_empty():
    assert tokenize("...") == []


def test_normalize_whitespace():
    assert normalize_whitespace("  a\t b\n\nc ") == "a b c"


def test_stem_known_forms():
    # hand-traced through the classic suffix-stripping steps
    cases = {
        "caresses": "caress",
        "ponies": "poni",
        "cats": "cat",
        "motoring": "motor",
        "hopping": "hop",
        "sized": "size",
        "happy": "happi",
        "trains": "train",
        "students": "student",
        "recruiters": "recruit",
        "placement": "placement",
        "colleges": "colleg",
        "college": "colleg",
    }
    for word, expected in cases.items():
        assert stem(word) == expected, word


def test_stem_is_idempotent_on_plurals_vs_singular():
    # query and document sides must agree after stemming
    assert stem("recruiters") == stem("recruiter")
    assert stem("interviews") == stem("interview")


def test_stopwords_cover_function_words():
    stops = load_stopwords()
    for word in ("it", "is", "of", "the", "and", "a"):
        assert word in stops


def test_verb_lexicon_loads():
    verbs = load_verbs()
    assert "train" in verbs
    assert "provide" in verbs
    assert len(verbs) > 100
