"""Synthetic corpora for demos and tests.

`planted_corpus` builds a corpus where each planted query ``anchor ctx1
ctx2`` co-occurs with exactly one (anchor, entity) pair. The same anchor
also links to a decoy entity in a few sentences without the context words,
to a third entity whose surface form is not in the query, and it is the
title of an unlinked page. That page is reachable through the anchor
dictionary but never through sentence search.
"""
from dataclasses import dataclass

import numpy as np

from .evaluate import GoldQuery
from .features import EmbeddingTable

_ONSETS = "b c d f g h j k l m n p r s t v z br dr gr kl pl st tr".split()
_VOWELS = "a e i o u ai ou ea".split()
_TAGS = ("band", "film", "river", "novel", "ship", "album")
_PLACES = ("Ohio", "Kent", "Perth", "Quebec", "Nevada", "Lyon")


def pseudo_words(n, rng, taken=()):
    """`n` distinct lowercase pseudo-words."""
    seen = set(taken)
    out = []
    while len(out) < n:
        k = rng.integers(2, 4)
        w = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(k))
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


@dataclass
class PlantedFixture:
    lines: list
    queries: list
    embeddings: EmbeddingTable
    vocabulary: list


def planted_corpus(n_queries=50, n_sentences=2000, seed=0, dim=16):
    rng = np.random.default_rng(seed)
    filler = pseudo_words(300, rng)
    n_filler_entities = 120
    filler_entities = [w.capitalize() + " " + t for w, t in
                       zip(pseudo_words(n_filler_entities, rng, filler),
                           pseudo_words(n_filler_entities, rng, filler))]
    special = pseudo_words(4 * n_queries, rng, set(filler) | {
        tok.lower() for e in filler_entities for tok in e.split()})
    lines = []
    queries = []

    def fill(k):
        return list(rng.choice(filler, size=k))

    def filler_link():
        e = filler_entities[rng.integers(len(filler_entities))]
        return f"[[{e}|{e.split()[0].lower()}]]"

    for i in range(n_queries):
        anchor, c1, c2, d1 = special[4 * i:4 * i + 4]
        tag, tag2 = rng.choice(len(_TAGS), size=2, replace=False)
        cap = anchor.capitalize()
        target = f"{cap} ({_TAGS[tag]})"
        decoy = f"{cap} ({_TAGS[tag2]})"
        other = f"{cap}, {_PLACES[i % len(_PLACES)]}"
        unlinked = f"{cap} ({'series' if _TAGS[tag] != 'series' else 'game'})"
        for _ in range(int(rng.integers(4, 9))):
            body = [f"[[{target}|{cap}]]", c1, c2] + fill(int(rng.integers(3, 7)))
            body.insert(int(rng.integers(3, len(body) + 1)), filler_link())
            lines.append(f"{target}\tregular\t{' '.join(body)}.")
        for _ in range(int(rng.integers(1, 4))):
            body = [f"[[{decoy}|{cap}]]", d1] + fill(int(rng.integers(4, 8)))
            lines.append(f"{decoy}\tregular\t{' '.join(body)}.")
        for _ in range(2):
            body = [f"[[{other}|{cap}]]"] + fill(int(rng.integers(4, 8)))
            lines.append(f"{other}\tregular\t{' '.join(body)}.")
        lines.append(f"{unlinked}\tregular\t{' '.join(fill(6))}.")
        words = [anchor, c1, c2]
        queries.append(GoldQuery(" ".join(words), frozenset({target})))

    page_ids = rng.integers(len(filler_entities), size=max(0, n_sentences - len(lines)))
    for p in page_ids:
        body = fill(int(rng.integers(5, 10)))
        body.insert(int(rng.integers(len(body) + 1)), filler_link())
        lines.append(f"{filler_entities[p]}\tregular\t{' '.join(body)}.")

    vocab = sorted(set(filler) | set(special) | {t.lower() for t in _TAGS})
    vecs = rng.normal(size=(len(vocab), dim))
    emb = EmbeddingTable(dim, {w: vecs[j] for j, w in enumerate(vocab)})
    return PlantedFixture(lines, queries, emb, vocab)


def random_corpus_lines(n_sentences, vocab_size=60, n_entities=25, seed=0):
    """Random annotated lines over a small vocabulary (heavy term overlap,
    frequent score ties)."""
    rng = np.random.default_rng(seed)
    vocab = pseudo_words(vocab_size, rng)
    entities = [w.capitalize() for w in pseudo_words(n_entities, rng, vocab)]
    lines = []
    for _ in range(n_sentences):
        body = list(rng.choice(vocab, size=int(rng.integers(1, 9))))
        for _ in range(int(rng.integers(1, 3))):
            e = entities[rng.integers(n_entities)]
            anchor = vocab[rng.integers(vocab_size)]
            body.insert(int(rng.integers(len(body) + 1)), f"[[{e}|{anchor}]]")
        page = entities[rng.integers(n_entities)]
        lines.append(f"{page} page\tregular\t{' '.join(body)}")
    return lines, vocab
