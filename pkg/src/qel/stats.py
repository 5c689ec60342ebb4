"""Corpus-wide anchor statistics: link-probability and prior-probability.

Anchors are keyed by their normalized token string (``"blake shelton"``).
"""
from collections import Counter
from dataclasses import dataclass, field

from .text import tokenize


def anchor_key(text_or_tokens):
    if isinstance(text_or_tokens, str):
        text_or_tokens = tokenize(text_or_tokens)
    return " ".join(text_or_tokens)


@dataclass(frozen=True)
class LinkStats:
    freq: dict = field(default_factory=dict)
    link: dict = field(default_factory=dict)
    pair_freq: dict = field(default_factory=dict)


def _count_sentence(tokens, by_length, freq):
    """Greedy left-to-right non-overlapping occurrence count per anchor."""
    last_end = {}
    n = len(tokens)
    for start in range(n):
        for length, anchors in by_length:
            if start + length > n:
                continue
            key = " ".join(tokens[start:start + length])
            if key in anchors and start >= last_end.get(key, 0):
                freq[key] += 1
                last_end[key] = start + length


def compute_link_stats(corpus):
    link = Counter()
    pair_freq = Counter()
    for sent in corpus.sentences():
        for ann in sent.annotations:
            key = anchor_key(sent.anchor_tokens(ann))
            link[key] += 1
            pair_freq[(key, ann.entity)] += 1
    by_len = {}
    for key in link:
        by_len.setdefault(len(key.split(" ")), set()).add(key)
    by_length = sorted(by_len.items())
    freq = Counter()
    for sent in corpus.sentences():
        _count_sentence(list(sent.tokens), by_length, freq)
    return LinkStats(dict(freq), dict(link), dict(pair_freq))


def lp(stats, a):
    """link(a) / freq(a); 0 for unseen text."""
    key = anchor_key(a)
    f = stats.freq.get(key, 0)
    return stats.link.get(key, 0) / f if f else 0.0


def prior(stats, a, e):
    """freq(a, e) / link(a); 0 when `a` was never linked."""
    key = anchor_key(a)
    n = stats.link.get(key, 0)
    return stats.pair_freq.get((key, e), 0) / n if n else 0.0


def save_link_stats(stats, anchors_path, pairs_path):
    with open(anchors_path, "w", encoding="utf-8", newline="\n") as fh:
        for a in sorted(stats.freq):
            fh.write(f"{a}\t{stats.freq[a]}\t{stats.link.get(a, 0)}\n")
    with open(pairs_path, "w", encoding="utf-8", newline="\n") as fh:
        for a, e in sorted(stats.pair_freq):
            fh.write(f"{a}\t{e}\t{stats.pair_freq[(a, e)]}\n")


def load_link_stats(anchors_path, pairs_path):
    freq, link, pair_freq = {}, {}, {}
    with open(anchors_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ValueError(f"{anchors_path}:{line_no}: expected 3 fields")
            freq[parts[0]] = int(parts[1])
            if int(parts[2]):
                link[parts[0]] = int(parts[2])
    with open(pairs_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ValueError(f"{pairs_path}:{line_no}: expected 3 fields")
            pair_freq[(parts[0], parts[1])] = int(parts[2])
    return LinkStats(freq, link, pair_freq)
