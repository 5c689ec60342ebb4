"""The 18 ranking features of a candidate.

Order (index 0..17):

 1 in_query   entity surface form occurs in the query
 2 is_pt      entity title has a parenthesis
 3 is_cm      entity title has a comma
 4 len        title length in tokens
 5 w          number of support sentences
 6 sc         best search score among support sentences
 7 lp         link-probability of the anchor
 8 pr         prior-probability of the entity given the anchor
 9 cm_sc      context match against support sentences
10 cm_fs      context match against the entity's first sentence
11 cm_dd      context match against its disambiguation description
12 embed_sc   best query/support-sentence embedding cosine
13 embed_fs   query/first-sentence cosine
14 embed_dd   query/disambiguation-description cosine
15 rel_cd_sc  other candidate entities linked in the support sentences
16 rel_cd_sp  other candidate entities sharing a page with the entity
17 rel_re_sc  related (non-candidate) entities linked in the support sentences
18 rel_re_sp  related (non-candidate) entities sharing a page with the entity
"""
import json
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .candgen import entity_tokens
from .corpus import sentence_from_json, sentence_to_json
from .stats import lp, prior
from .text import contains_subsequence, find_subsequence, tokenize

FEATURE_NAMES = (
    "in_query", "is_pt", "is_cm", "len", "w", "sc", "lp", "pr",
    "cm_sc", "cm_fs", "cm_dd", "embed_sc", "embed_fs", "embed_dd",
    "rel_cd_sc", "rel_cd_sp", "rel_re_sc", "rel_re_sp",
)
N_FEATURES = len(FEATURE_NAMES)


class EmbeddingFormatError(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingTable:
    dimension: int
    vectors: dict = field(default_factory=dict)

    def get(self, token):
        return self.vectors.get(token)


def load_embeddings(path):
    """Read a text vector file: header ``<vocab> <dim>``, then one
    ``word v1 .. vd`` line per word. A repeated word keeps its last
    vector and triggers a warning."""
    vectors = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise EmbeddingFormatError(f"{path}:1: expected '<vocab_size> <dimension>' header")
        vocab, dim = int(header[0]), int(header[1])
        if dim <= 0:
            raise EmbeddingFormatError(f"{path}:1: dimension must be positive")
        count = 0
        for line_no, line in enumerate(fh, 2):
            parts = line.rstrip("\n").split(" ")
            if not line.strip():
                continue
            if len(parts) != dim + 1:
                raise EmbeddingFormatError(
                    f"{path}:{line_no}: expected {dim} values, got {len(parts) - 1}")
            word = parts[0]
            if word in vectors:
                warnings.warn(f"{path}:{line_no}: duplicate word {word!r}, keeping last")
            vectors[word] = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            count += 1
    if count != vocab:
        raise EmbeddingFormatError(f"{path}: header declares {vocab} vectors, found {count}")
    return EmbeddingTable(dim, vectors)


def save_embeddings(table, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(table.vectors)} {table.dimension}\n")
        for word, vec in table.vectors.items():
            fh.write(word + " " + " ".join(repr(float(v)) for v in vec) + "\n")


def sentence_embedding(table, tokens):
    known = [table.vectors[t] for t in tokens if t in table.vectors]
    if not known:
        return np.zeros(table.dimension)
    return np.mean(known, axis=0)


def cosine(u, v):
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def context_match_score(context_tokens, support):
    """Mean over context tokens of the fraction of support sentences
    containing the token."""
    if not context_tokens or not support:
        return 0.0
    token_sets = [set(s.tokens) for s in support]
    total = 0.0
    for c in context_tokens:
        total += sum(c in ts for ts in token_sets) / len(token_sets)
    return total / len(context_tokens)


def _coverage(context_tokens, sentence):
    if sentence is None or not context_tokens:
        return 0.0
    toks = set(sentence.tokens)
    return sum(c in toks for c in context_tokens) / len(context_tokens)


def query_context(query_tokens, anchor_tokens):
    """Distinct query tokens outside the first occurrence of the anchor."""
    start = find_subsequence(query_tokens, anchor_tokens)
    rest = list(query_tokens)
    if start >= 0:
        del rest[start:start + len(anchor_tokens)]
    return list(dict.fromkeys(rest))


@dataclass(frozen=True)
class EntityResources:
    first_sentence: dict = field(default_factory=dict)
    disamb_desc: dict = field(default_factory=dict)
    entity_pages: dict = field(default_factory=dict)


def build_entity_resources(corpus):
    first_sentence = {}
    disamb_desc = {}
    pages = {}
    for page in corpus.pages:
        regular = [s for s in page.sentences if s.kind == "regular"]
        chosen = regular[0] if regular else (page.sentences[0] if page.sentences else None)
        if chosen is not None:
            first_sentence[page.title] = chosen
        pages.setdefault(page.title, set()).add(page.title)
        for sent in page.sentences:
            for ann in sent.annotations:
                pages.setdefault(ann.entity, set()).add(page.title)
                if sent.kind == "disambiguation" and ann.entity not in disamb_desc:
                    disamb_desc[ann.entity] = sent
    return EntityResources(first_sentence, disamb_desc,
                           {e: frozenset(p) for e, p in pages.items()})


def dumps_resources(res):
    obj = {
        "first_sentence": {e: sentence_to_json(s) for e, s in res.first_sentence.items()},
        "disamb_desc": {e: sentence_to_json(s) for e, s in res.disamb_desc.items()},
        "entity_pages": {e: sorted(p) for e, p in res.entity_pages.items()},
    }
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=0) + "\n"


def loads_resources(data):
    obj = json.loads(data)
    return EntityResources(
        {e: sentence_from_json(s) for e, s in obj["first_sentence"].items()},
        {e: sentence_from_json(s) for e, s in obj["disamb_desc"].items()},
        {e: frozenset(p) for e, p in obj["entity_pages"].items()},
    )


def save_resources(res, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_resources(res))


def load_resources(path):
    with open(path, encoding="utf-8") as fh:
        return loads_resources(fh.read())


def extract_features(cand, cs, query, stats, res, emb, sentences):
    """Feature vector (length 18, float64) for `cand`.

    `sentences` maps sentence id to AnnotatedSentence (the index store).
    """
    if not cand.support:
        raise ValueError(f"candidate {cand.key} has no support sentences")
    q = tokenize(query)
    support = [sentences[i] for i in sorted(cand.support)]
    context = query_context(q, cand.anchor.split(" "))
    title = cand.entity
    first = res.first_sentence.get(title)
    desc = res.disamb_desc.get(title)

    q_vec = sentence_embedding(emb, q)
    embed_sc = max(cosine(q_vec, sentence_embedding(emb, s.tokens)) for s in support)
    embed_fs = cosine(q_vec, sentence_embedding(emb, first.tokens)) if first else 0.0
    embed_dd = cosine(q_vec, sentence_embedding(emb, desc.tokens)) if desc else 0.0

    cand_entities = cs.entities() - {title}
    related = {r.entity for r in cs.related} - cs.entities()
    in_support = set().union(*(s.entities() for s in support))
    my_pages = res.entity_pages.get(title, frozenset())

    def shares_page(e):
        return not my_pages.isdisjoint(res.entity_pages.get(e, ()))

    values = [
        float(contains_subsequence(q, entity_tokens(title))),
        float("(" in title),
        float("," in title),
        float(len(tokenize(title))),
        float(cand.w),
        float(cand.sc),
        lp(stats, cand.anchor),
        prior(stats, cand.anchor, title),
        context_match_score(context, support),
        _coverage(context, first),
        _coverage(context, desc),
        embed_sc,
        embed_fs,
        embed_dd,
        float(len(cand_entities & in_support)),
        float(sum(shares_page(e) for e in cand_entities)),
        float(len(related & in_support)),
        float(sum(shares_page(e) for e in related)),
    ]
    return np.array(values, dtype=np.float64)


def featurize(cs, query, stats, res, emb, sentences):
    """Candidate set with every candidate's `features` filled in."""
    cands = tuple(replace(c, features=extract_features(c, cs, query, stats, res, emb, sentences))
                  for c in cs.candidates)
    return replace(cs, candidates=cands)
