"""Candidate generation from retrieved sentences.

Every link in a retrieved sentence yields an (anchor, entity) pair. Pairs
whose anchor occurs in the query become candidates; every extracted entity
is kept as a related entity. Two pruning rules then thin the candidates:

* long-string match: a pair whose anchor is contained in a longer
  candidate anchor is dropped unless it is supported by strictly more
  sentences than the longer anchor's best pair;
* title match: among pairs sharing an anchor, a pair whose entity title is
  absent from the query is dropped when a rival whose title is present
  has more support.
"""
from dataclasses import dataclass, field
from typing import Optional

from .stats import anchor_key
from .text import contains_subsequence, is_proper_subsequence, title_surface, tokenize


@dataclass(frozen=True)
class Candidate:
    anchor: str
    entity: str
    support: frozenset = frozenset()
    w: int = 0
    sc: float = 0.0
    features: Optional[object] = field(default=None, compare=False)

    @property
    def key(self):
        return (self.anchor, self.entity)


@dataclass(frozen=True)
class RelatedEntity:
    entity: str
    support: frozenset


@dataclass(frozen=True)
class CandidateSet:
    query: str
    candidates: tuple = ()
    related: tuple = ()

    def entities(self):
        return {c.entity for c in self.candidates}

    def explain_lines(self, scores=None, selected=()):
        """Diagnostic lines, one per candidate."""
        lines = []
        for i, c in enumerate(self.candidates):
            support = ",".join(str(s) for s in sorted(c.support))
            score = "" if scores is None else f"{scores[i]:.6f}"
            mark = "*" if c.entity in selected else ""
            lines.append(f"#\t{c.anchor}\t{c.entity}\tw={c.w}\tsc={c.sc:.6f}"
                         f"\tscore={score}\tsupport={support}\t{mark}".rstrip("\t"))
        return lines


def entity_tokens(entity):
    """Tokens of an entity's surface form, parenthetical stripped."""
    return tokenize(title_surface(entity))


def extract_pairs(results):
    """Aggregate links from scored sentences.

    Returns ``{(anchor, entity): Candidate}`` with support, w and the max
    search score filled in; anchors are normalized token strings.
    """
    support = {}
    best = {}
    for res in results:
        sent = res.sentence
        for ann in sent.annotations:
            key = (anchor_key(sent.anchor_tokens(ann)), ann.entity)
            support.setdefault(key, set()).add(res.sentence_id)
            best[key] = max(best.get(key, 0.0), res.score)
    return {key: Candidate(key[0], key[1], frozenset(ids), len(ids), best[key])
            for key, ids in support.items()}


def _related(pairs):
    by_entity = {}
    for cand in pairs.values():
        by_entity.setdefault(cand.entity, set()).update(cand.support)
    return tuple(RelatedEntity(e, frozenset(s)) for e, s in sorted(by_entity.items()))


def partition_candidates(pairs, query):
    q = tokenize(query)
    cands = [c for c in pairs.values() if contains_subsequence(q, c.anchor.split(" "))]
    cands.sort(key=lambda c: c.key)
    return CandidateSet(query, tuple(cands), _related(pairs))


def prune_long_string(cs):
    by_anchor = {}
    for c in cs.candidates:
        by_anchor[c.anchor] = max(by_anchor.get(c.anchor, 0), c.w)
    anchor_toks = {a: a.split(" ") for a in by_anchor}
    keep = []
    for c in cs.candidates:
        short = anchor_toks[c.anchor]
        dominated = any(
            is_proper_subsequence(short, anchor_toks[a2]) and c.w <= w2
            for a2, w2 in by_anchor.items())
        if not dominated:
            keep.append(c)
    return CandidateSet(cs.query, tuple(keep), cs.related)


def prune_title_match(cs, query):
    q = tokenize(query)
    in_query = {c.entity: contains_subsequence(q, entity_tokens(c.entity))
                for c in cs.candidates}
    best_in_query = {}
    for c in cs.candidates:
        if in_query[c.entity]:
            best_in_query[c.anchor] = max(best_in_query.get(c.anchor, 0), c.w)
    keep = [c for c in cs.candidates
            if in_query[c.entity] or c.w >= best_in_query.get(c.anchor, 0)]
    return CandidateSet(cs.query, tuple(keep), cs.related)


def generate_candidates(results, query):
    """Sentence-search candidates: partition then both pruning rules."""
    cs = partition_candidates(extract_pairs(results), query)
    return prune_title_match(prune_long_string(cs), query)


class AnchorDictionary:
    """Anchor -> {entity: count} built from corpus links plus page titles."""

    def __init__(self, entries):
        self.entries = entries
        self.max_len = max((len(a.split(" ")) for a in entries), default=0)

    @classmethod
    def from_corpus(cls, corpus, stats):
        entries = {}
        for (a, e), n in stats.pair_freq.items():
            entries.setdefault(a, {})[e] = n
        for page in corpus.pages:
            for surface in {page.title, title_surface(page.title)}:
                a = anchor_key(surface)
                entries.setdefault(a, {}).setdefault(page.title, 1)
        return cls(entries)

    def lookup(self, anchor):
        return self.entries.get(anchor, {})


def entity_search_candidates(query, dictionary):
    """Dictionary baseline: every entity of every anchor found in the query.

    There are no support sentences, so ``w`` is the dictionary link count
    and ``sc`` is fixed at 1.0. The same pruning rules are applied.
    """
    q = tokenize(query)
    cands = []
    seen = set()
    for n in range(1, min(dictionary.max_len, len(q)) + 1):
        for i in range(len(q) - n + 1):
            a = " ".join(q[i:i + n])
            if a in seen:
                continue
            seen.add(a)
            for e, count in dictionary.lookup(a).items():
                cands.append(Candidate(a, e, frozenset(), count, 1.0))
    cands.sort(key=lambda c: c.key)
    cs = CandidateSet(query, tuple(cands), ())
    return prune_title_match(prune_long_string(cs), query)
