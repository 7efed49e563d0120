import itertools

import numpy as np
import pytest

from wordsim.lexicon import Corpus, build_lexicon

# 20 standard words with three deterministic synthetic variants each:
# drop the middle character, swap the first two, duplicate the last.
TOY_STANDARD = [
    "thing", "water", "house", "night", "right", "friend", "people",
    "school", "birthday", "tomorrow", "morning", "coffee", "window",
    "garden", "music", "family", "street", "summer", "winter", "dinner",
]


def toy_variants(word):
    mid = len(word) // 2
    return [word[:mid] + word[mid + 1 :], word[1] + word[0] + word[2:], word + word[-1]]


@pytest.fixture(scope="session")
def toy_lexicon():
    pairs = [(v, w) for w in TOY_STANDARD for v in toy_variants(w)]
    return build_lexicon(pairs)


# context-run fixture: every standard word has one doubled-letter variant,
# and "dogg"/"dog" occur in identical sentence templates.
CONTEXT_STANDARD = [
    "dog", "cat", "boy", "kid", "run", "eat", "sleep", "play", "house",
    "park", "water", "food", "happy", "small", "big", "fast", "the", "a",
    "is", "very",
]

CONTEXT_TEMPLATES = [
    ["the", "{X}", "is", "very", "happy"],
    ["a", "{X}", "is", "big"],
    ["the", "{X}", "eat", "food"],
    ["a", "small", "{X}", "play", "park"],
    ["the", "big", "{X}", "sleep", "house"],
]


@pytest.fixture(scope="session")
def context_lexicon():
    return build_lexicon([(w + w[-1], w) for w in CONTEXT_STANDARD])


@pytest.fixture(scope="session")
def context_corpus(context_lexicon):
    return make_context_corpus(context_lexicon, n_sentences=500, seed=123)


def make_context_corpus(lex, n_sentences=500, seed=123):
    rng = np.random.default_rng(seed)
    sents = []
    for _ in range(n_sentences):
        template = CONTEXT_TEMPLATES[rng.integers(len(CONTEXT_TEMPLATES))]
        x = "dog" if rng.random() < 0.5 else "dogg"
        sents.append(tuple(lex.id_of(x if t == "{X}" else t) for t in template))
    return Corpus(sentences=tuple(sents))


@pytest.fixture(scope="session")
def small_lexicon():
    # 10 standard words, one variant each; cheap enough to train per-test
    words = ["apple", "banana", "cherry", "grape", "lemon",
             "mango", "melon", "olive", "peach", "plum"]
    return build_lexicon([(w[1:], w) for w in words])
