"""Train the regression ranker on a synthetic corpus with planted queries,
tune K and the threshold, evaluate on held-out queries, and compare candidate
counts against the anchor-dictionary baseline.

Run: python3 demos/04_train_and_evaluate.py
"""
import numpy as np

from qel import (AnchorDictionary, Linker, average_f1, entity_search_candidates,
                 parse_corpus_lines)
from qel.features import FEATURE_NAMES
from qel.pipeline import build_artifacts
from qel.synth import planted_corpus

fx = planted_corpus(n_queries=50, n_sentences=2000, seed=0)
corpus = parse_corpus_lines(fx.lines)
index, stats, resources = build_artifacts(corpus)
train, test = fx.queries[:30], fx.queries[30:]
print(f"corpus: {corpus.sentence_count} sentences, {index.doc_count} indexed")
print(f"example query: {train[0].query!r} -> {sorted(train[0].gold)}\n")

linker = Linker(index, stats, resources, fx.embeddings)
linker.train(train)
top = np.argsort(-np.abs(linker.model.weights))[:5]
print("largest weights: " + ", ".join(
    f"{FEATURE_NAMES[i]}={linker.model.weights[i]:+.3f}" for i in top))

report = average_f1(test, linker.link_many([q.query for q in test]))
print(f"held-out, K=700 threshold=0.56\n{report.summary()}")

best, grid = linker.tune(train, K_grid=[5, 50, 700], thresholds=[0.3, 0.56, 0.8])
print(f"tuned on training queries: K={best[0]} threshold={best[1]} (train F1 {best[2]:.4f})")
linker.with_threshold(best[1]).K = best[0]
report = average_f1(test, linker.link_many([q.query for q in test]))
print(f"held-out with tuned settings\n{report.summary()}\n")

# per-candidate detail; chosen entities end in '*'
entities, lines = linker.explain(test[0].query)
print(f"{test[0].query!r} -> {sorted(entities)}")
print("\n".join(lines))

dictionary = AnchorDictionary.from_corpus(corpus, stats)
es = np.mean([len(entity_search_candidates(q.query, dictionary).candidates) for q in fx.queries])
ss = np.mean([len(linker.candidates(q.query).candidates) for q in fx.queries])
print(f"\nmean candidates per query: sentence search {ss:.2f}, dictionary baseline {es:.2f}")
