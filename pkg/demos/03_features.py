"""Compute the 18-feature vector for each candidate of one query, using a tiny
hand-written embedding table.

Run: python3 demos/03_features.py
"""
import numpy as np

from qel import (EmbeddingTable, build_entity_resources, build_index, compute_link_stats,
                 extract_features, generate_candidates, parse_corpus_lines, search)
from qel.features import FEATURE_NAMES

LINES = [
    "Austin (song)\tregular\t[[Austin (song)|Austin]] is a song by [[Blake Shelton]].",
    "Austin (song)\tregular\tAustin lyrics were written by Kent.",
    "Blake Shelton\tregular\t[[Blake Shelton]] sang [[Austin (song)|Austin]] live.",
    "Austin, Texas\tregular\t[[Austin, Texas|Austin]] is a city in [[Texas]].",
    "Austin (disambiguation)\tdisambiguation\t[[Austin (song)]] a song by Blake Shelton",
]
QUERY = "blake shelton austin lyrics"

emb = EmbeddingTable(2, {"blake": np.array([1.0, 0.0]), "shelton": np.array([1.0, 0.0]),
                         "austin": np.array([0.0, 1.0]), "lyrics": np.array([1.0, 1.0]),
                         "song": np.array([0.0, 2.0])})

corpus = parse_corpus_lines(LINES)
index = build_index(corpus)
stats = compute_link_stats(corpus)
resources = build_entity_resources(corpus)
cs = generate_candidates(search(index, QUERY, K=10), QUERY)

vectors = [extract_features(c, cs, QUERY, stats, resources, emb, index.store)
           for c in cs.candidates]
header = "".join(f"{c.entity:>16s}" for c in cs.candidates)
print(f"{'feature':34s}{header}")
for i, name in enumerate(FEATURE_NAMES):
    print(f"{i + 1:2d} {name:31s}" + "".join(f"{v[i]:16.4f}" for v in vectors))
