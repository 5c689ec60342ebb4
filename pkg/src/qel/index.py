"""Immutable inverted index over annotated sentences.

Scoring follows the classic vector-space similarity without query
normalization (which does not change rankings):

    score(q, d) = coord(q, d) * sum_t sqrt(tf(t, d)) * idf(t)**2 / sqrt(|d|)
    idf(t)      = 1 + ln(N / (df(t) + 1))

with coord the fraction of distinct query terms present in d. Query terms
are deduplicated and summed in sorted order in both the scorer and the
search path so the two agree bit for bit.
"""
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .corpus import sentence_from_json, sentence_to_json
from .text import tokenize

HEADER = "QELIDX v1"


class IndexFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ScoredSentence:
    sentence_id: int
    score: float
    sentence: object


class Index:
    """Postings are ``term -> (ids, tfs)`` with ids strictly ascending."""

    def __init__(self, postings, store):
        self.postings = postings
        self.store = tuple(store)
        self.doc_lengths = np.array([len(s.tokens) for s in self.store], dtype=np.int64)
        self._inv_norm = np.array(
            [1.0 / math.sqrt(n) if n else 0.0 for n in self.doc_lengths], dtype=np.float64)
        n_docs = len(self.store)
        self._idf = {t: 1.0 + math.log(n_docs / (len(ids) + 1))
                     for t, (ids, _) in postings.items()}

    @property
    def doc_count(self):
        return len(self.store)

    def df(self, term):
        entry = self.postings.get(term)
        return 0 if entry is None else len(entry[0])

    def idf(self, term):
        return 1.0 + math.log(self.doc_count / (self.df(term) + 1))

    def tf(self, term, sentence_id):
        entry = self.postings.get(term)
        if entry is None:
            return 0
        ids, tfs = entry
        pos = np.searchsorted(ids, sentence_id)
        if pos < len(ids) and ids[pos] == sentence_id:
            return int(tfs[pos])
        return 0


def build_index(corpus):
    """Index every corpus sentence carrying at least one annotation."""
    store = [s for s in corpus.sentences() if s.annotations]
    raw = {}
    for sid, sent in enumerate(store):
        counts = {}
        for tok in sent.tokens:
            counts[tok] = counts.get(tok, 0) + 1
        for tok, c in counts.items():
            raw.setdefault(tok, []).append((sid, c))
    postings = {}
    for term in sorted(raw):
        plist = raw[term]
        postings[term] = (np.array([p[0] for p in plist], dtype=np.int64),
                          np.array([p[1] for p in plist], dtype=np.int64))
    return Index(postings, store)


def _query_terms(query_terms):
    return sorted(set(query_terms))


def score_document(query_terms, sentence_id, index):
    if not 0 <= sentence_id < index.doc_count:
        raise KeyError(f"unknown sentence id {sentence_id}")
    terms = _query_terms(query_terms)
    if not terms:
        return 0.0
    acc = 0.0
    matched = 0
    for t in terms:
        tf = index.tf(t, sentence_id)
        if tf:
            idf = index._idf[t]
            acc += math.sqrt(tf) * (idf * idf)
            matched += 1
    if not matched:
        return 0.0
    coord = matched / len(terms)
    return coord * acc * float(index._inv_norm[sentence_id])


def search(index, query, K):
    """Top-`K` sentences for `query` (a string or a token list).

    Ordered by score descending, then sentence id ascending.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    tokens = tokenize(query) if isinstance(query, str) else list(query)
    terms = _query_terms(tokens)
    if not terms or index.doc_count == 0:
        return []
    acc = np.zeros(index.doc_count, dtype=np.float64)
    matched = np.zeros(index.doc_count, dtype=np.int64)
    for t in terms:
        entry = index.postings.get(t)
        if entry is None:
            continue
        ids, tfs = entry
        idf = index._idf[t]
        acc[ids] += np.sqrt(tfs.astype(np.float64)) * (idf * idf)
        matched[ids] += 1
    hits = np.flatnonzero(matched)
    if hits.size == 0:
        return []
    coord = matched[hits] / len(terms)
    scores = coord * acc[hits] * index._inv_norm[hits]
    keep = scores > 0
    hits, scores = hits[keep], scores[keep]
    order = np.lexsort((hits, -scores))[:K]
    return [ScoredSentence(int(hits[i]), float(scores[i]), index.store[hits[i]])
            for i in order]


def dumps_index(index):
    buf = io.StringIO()
    buf.write(HEADER + "\n")
    terms = sorted(index.postings)
    buf.write(f"terms {len(terms)}\n")
    for t in terms:
        buf.write(f"{t}\t{index.df(t)}\n")
    buf.write("postings\n")
    for t in terms:
        ids, tfs = index.postings[t]
        body = " ".join(f"{i}:{c}" for i, c in zip(ids.tolist(), tfs.tolist()))
        buf.write(f"{t}\t{body}\n")
    buf.write(f"docs {index.doc_count}\n")
    for sid, sent in enumerate(index.store):
        payload = json.dumps(sentence_to_json(sent), ensure_ascii=False, sort_keys=True)
        buf.write(f"{sid}\t{payload}\n")
    return buf.getvalue()


def loads_index(data):
    lines = data.split("\n")
    if not lines or lines[0] != HEADER:
        raise IndexFormatError(f"missing {HEADER!r} header")
    pos = 1

    def expect(prefix):
        nonlocal pos
        line = lines[pos]
        if not line.startswith(prefix):
            raise IndexFormatError(f"line {pos + 1}: expected {prefix!r}")
        pos += 1
        return line[len(prefix):].strip()

    n_terms = int(expect("terms"))
    dfs = {}
    for _ in range(n_terms):
        term, df = lines[pos].split("\t")
        dfs[term] = int(df)
        pos += 1
    expect("postings")
    postings = {}
    for _ in range(n_terms):
        term, body = lines[pos].split("\t")
        pairs = [p.split(":") for p in body.split()]
        ids = np.array([int(a) for a, _ in pairs], dtype=np.int64)
        tfs = np.array([int(b) for _, b in pairs], dtype=np.int64)
        if len(ids) != dfs.get(term):
            raise IndexFormatError(f"line {pos + 1}: posting length mismatch for {term!r}")
        postings[term] = (ids, tfs)
        pos += 1
    n_docs = int(expect("docs"))
    store = []
    for expected_sid in range(n_docs):
        sid, payload = lines[pos].split("\t", 1)
        if int(sid) != expected_sid:
            raise IndexFormatError(f"line {pos + 1}: out-of-order document id")
        store.append(sentence_from_json(json.loads(payload)))
        pos += 1
    return Index(postings, store)


def save_index(index, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_index(index))


def load_index(path):
    with open(path, encoding="utf-8", newline="\n") as fh:
        return loads_index(fh.read())
