"""Independent reference implementations shared by the unit and acceptance tests.

Each oracle recomputes a result straight from its definition, without
touching the library code paths it is compared against.
"""
import math
import random
from collections import Counter

import numpy as np

from qel import (Candidate, EmbeddingTable, build_entity_resources, build_index,
                 compute_link_stats, generate_candidates, parse_corpus_lines,
                 partition_candidates, prune_long_string, prune_title_match, search,
                 svr_objective)
from qel.synth import random_corpus_lines

QUERY = "blake shelton austin lyrics"


def brute_force(store, query_tokens, K):
    """Score every sentence straight from its tokens and sort."""
    n = len(store)
    counts = [Counter(s.tokens) for s in store]
    terms = sorted(set(query_tokens))
    df = {t: sum(t in c for c in counts) for t in terms}
    scored = []
    for sid, c in enumerate(counts):
        total = 0.0
        hit = 0
        for t in terms:
            if c[t]:
                idf = 1.0 + math.log(n / (df[t] + 1))
                total += math.sqrt(c[t]) * (idf * idf)
                hit += 1
        if hit:
            s = (hit / len(terms)) * total * (1.0 / math.sqrt(len(store[sid].tokens)))
            if s > 0:
                scored.append((sid, s))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored[:K]


# direct transcription of the two pruning rules over strings


def _occurs(short, long):
    return f" {short} " in f" {long} "


def oracle(specs, query):
    """specs: list of (anchor, entity, w). Returns surviving (anchor, entity) set."""
    cands = [s for s in specs if _occurs(s[0], query)]
    survivors = []
    for a1, e1, w1 in cands:
        drop = False
        for a2, e2, w2 in cands:
            if a1 != a2 and _occurs(a1, a2):
                best2 = max(w for a, _, w in cands if a == a2)
                if w1 < w2 or (w1 == w2 == best2):
                    drop = True
        if not drop:
            survivors.append((a1, e1, w1))
    final = set()
    for a, e1, w1 in survivors:
        surf1 = e1.lower()
        drop = False
        if not _occurs(surf1, query):
            for a2, e2, w2 in survivors:
                if a2 == a and _occurs(e2.lower(), query) and w1 < w2:
                    drop = True
        if not drop:
            final.add((a, e1))
    return final


WORDS = ["mesa", "community", "college", "south", "africa", "day"]


def random_case(rng):
    n_anchors = rng.randint(1, 8)
    anchors = set()
    while len(anchors) < n_anchors:
        anchors.add(" ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 3))))
    specs = []
    for a in sorted(anchors):
        for j in range(rng.randint(1, 3)):
            # entity titles are plain words so lowercase == surface tokens
            if rng.random() < 0.4:
                ent = a.title()
            else:
                ent = " ".join(rng.choice(WORDS + ["zulu", "kilo"])
                               for _ in range(rng.randint(1, 2))).title() + f" X{j}"
            specs.append((a, ent, rng.randint(1, 5)))
    seen = {}
    for a, e, w in specs:
        seen[(a, e)] = w
    specs = [(a, e, w) for (a, e), w in seen.items()]
    query = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 6)))
    return specs, query


def as_pairs(specs):
    """{(anchor, entity): Candidate} from (anchor, entity, w) triples."""
    return {(a, e): Candidate(a, e, frozenset(range(w)), w, 1.0) for a, e, w in specs}


def prune(pairs, query):
    cs = partition_candidates(pairs, query)
    return prune_title_match(prune_long_string(cs), query)


# Five-sentence fixture (see conftest.FIVE_LINES). After augmentation:
#   S0 p=Austin (song)  "Austin is a song by Blake Shelton."   austin->Austin (song), blake shelton
#   S1 p=Austin (song)  "Austin lyrics were written by Kent."  austin->Austin (song) (title)
#   S2 p=Blake Shelton  "Blake Shelton sang Austin live."      blake shelton, austin->Austin (song)
#   S3 p=Austin, Texas  "Austin is a city in Texas."           austin->Austin, Texas; texas
#   S4 p=Austin (disambiguation), disambiguation  "Austin (song) a song by Blake Shelton"
# Candidates after pruning: (austin, Austin (song)) w=3 on S0-S2 and
# (blake shelton, Blake Shelton) w=2 on S0,S2; Austin, Texas is pruned by title match.

EMB = EmbeddingTable(2, {"blake": np.array([1.0, 0.0]), "shelton": np.array([1.0, 0.0]),
                         "austin": np.array([0.0, 1.0]), "lyrics": np.array([1.0, 1.0]),
                         "song": np.array([0.0, 2.0])})


def hand_score(sid_tokens, all_tokens, query_terms):
    n = len(all_tokens)
    terms = sorted(set(query_terms))
    total, hit = 0.0, 0
    c = Counter(sid_tokens)
    for t in terms:
        if c[t]:
            df = sum(t in toks for toks in all_tokens)
            idf = 1 + math.log(n / (df + 1))
            total += math.sqrt(c[t]) * idf * idf
            hit += 1
    return hit / len(terms) * total / math.sqrt(len(sid_tokens))


def cos2(u, v):
    return (u[0] * v[0] + u[1] * v[1]) / (math.hypot(*u) * math.hypot(*v))


def five_sentence_expected():
    """Hand-derived feature vectors for the two five-sentence candidates."""
    toks = [
        "austin is a song by blake shelton".split(),
        "austin lyrics were written by kent".split(),
        "blake shelton sang austin live".split(),
        "austin is a city in texas".split(),
        "austin song a song by blake shelton".split(),
    ]
    q = QUERY.split()
    sc = [hand_score(t, toks, q) for t in toks]
    q_vec = (0.75, 0.5)                       # mean of blake, shelton, austin, lyrics
    s0, s2, s4 = (0.5, 0.75), (2 / 3, 1 / 3), (0.4, 1.0)
    s1 = (0.5, 1.0)

    austin = [
        1, 1, 0, 2, 3, max(sc[0], sc[1], sc[2]),
        4 / 5,                                # lp: 4 links / 5 occurrences
        3 / 4,                                # prior
        (2 / 3 + 2 / 3 + 1 / 3) / 3,          # context {blake, shelton, lyrics} over S0-S2
        2 / 3,                                # first sentence S0 has blake, shelton
        2 / 3,                                # disambiguation line S4 has blake, shelton
        max(cos2(q_vec, s0), cos2(q_vec, s1), cos2(q_vec, s2)),
        cos2(q_vec, s0),
        cos2(q_vec, s4),
        1, 1, 0, 0,
    ]
    blake = [
        1, 0, 0, 2, 2, max(sc[0], sc[2]),
        2 / 3, 1.0,
        (1 + 0) / 2,                          # context {austin, lyrics} over S0, S2
        1 / 2,                                # first sentence S2 has austin
        0.0,                                  # no disambiguation description
        max(cos2(q_vec, s0), cos2(q_vec, s2)),
        cos2(q_vec, s2),
        0.0,
        1, 1, 0, 0,
    ]
    return austin, blake


def grid_minimum(X, y, C=1.0, eps=0.1, lo=-2.0, hi=2.0, n=801):
    g = np.linspace(lo, hi, n)
    W1, W2 = np.meshgrid(g, g, indexing="ij")
    W = np.stack([W1.ravel(), W2.ravel()], axis=1)
    resid = np.abs(y[None, :] - W @ X.T) - eps
    loss = np.maximum(resid, 0.0) ** 2
    obj = 0.5 * np.sum(W * W, axis=1) + C * loss.sum(axis=1)
    return obj.min()


def fd_gradient(w, X, y, C=1.0, eps=0.1, h=1e-6):
    grad = np.zeros_like(w)
    for j in range(len(w)):
        e = np.zeros_like(w)
        e[j] = h
        grad[j] = (svr_objective(w + e, X, y, C, eps) - svr_objective(w - e, X, y, C, eps)) / (2 * h)
    return grad


def check_feature_ranges(f):
    """Assert the documented per-feature ranges on one vector."""
    assert f[0] in (0, 1) and f[1] in (0, 1) and f[2] in (0, 1)
    assert f[3] >= 1
    assert np.all((f[6:11] >= 0) & (f[6:11] <= 1))
    assert np.all((f[11:14] >= -1) & (f[11:14] <= 1))
    for i in (4, 14, 15, 16, 17):
        assert f[i] >= 0 and f[i] == int(f[i])
    assert f[5] > 0
    assert np.all(np.isfinite(f))


def random_featurized(seed, n_queries):
    """Yield (cs, query, stats, res, emb, store) over a random corpus."""
    rng = random.Random(seed)
    lines, vocab = random_corpus_lines(400, vocab_size=30, n_entities=15, seed=seed)
    corpus = parse_corpus_lines(lines)
    index = build_index(corpus)
    stats = compute_link_stats(corpus)
    res = build_entity_resources(corpus)
    nprng = np.random.default_rng(seed)
    emb = EmbeddingTable(3, {w: nprng.normal(size=3) for w in vocab if rng.random() < 0.8})
    for _ in range(n_queries):
        q = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 5)))
        cs = generate_candidates(search(index, q, rng.randint(1, 60)), q)
        yield cs, q, stats, res, emb, index.store


def hand_counts(corpus):
    """(freq, link, pair_freq) recounted from raw tokens.

    Occurrences are counted with str.count over a double-space-joined token
    string, which is greedy and non-overlapping like the definition.
    """
    link, pair_freq = Counter(), Counter()
    for sent in corpus.sentences():
        for ann in sent.annotations:
            a = " ".join(sent.tokens[ann.token_span[0]:ann.token_span[1]])
            link[a] += 1
            pair_freq[(a, ann.entity)] += 1
    freq = Counter()
    for sent in corpus.sentences():
        text = " " + "  ".join(sent.tokens) + " "
        for a in link:
            n = text.count(" " + "  ".join(a.split(" ")) + " ")
            if n:
                freq[a] += n
    return dict(freq), dict(link), dict(pair_freq)
