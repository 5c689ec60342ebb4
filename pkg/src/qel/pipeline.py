"""End-to-end linking: search -> candidates -> features -> regression -> threshold."""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .candgen import generate_candidates
from .corpus import load_corpus
from .evaluate import average_f1
from .features import (build_entity_resources, featurize, load_resources,
                       save_resources)
from .index import build_index, load_index, save_index, search
from .ranker import label_candidates, predict, select, train_svr
from .stats import compute_link_stats, load_link_stats, save_link_stats

STATS_FILES = ("anchors.tsv", "pairs.tsv")


def _map(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


@dataclass
class Linker:
    index: object
    stats: object
    resources: object
    embeddings: object
    model: object = None
    K: int = 700

    def candidates(self, query, K=None, results=None):
        """Featurized candidate set for `query`.

        `results` may carry a precomputed (longer) search result; only its
        first K entries are used.
        """
        K = self.K if K is None else K
        if results is None:
            results = search(self.index, query, K)
        cs = generate_candidates(results[:K], query)
        return featurize(cs, query, self.stats, self.resources,
                         self.embeddings, self.index.store)

    def scores(self, cs):
        if not cs.candidates:
            return np.zeros(0)
        return predict(self.model, np.vstack([c.features for c in cs.candidates]))

    def link(self, query, threshold=None):
        return select(self.candidates(query), self.model, threshold)

    def explain(self, query, threshold=None):
        cs = self.candidates(query)
        chosen = select(cs, self.model, threshold)
        return chosen, cs.explain_lines(self.scores(cs), chosen)

    def link_many(self, queries, threshold=None, workers=1, explain=False):
        fn = (lambda q: self.explain(q, threshold)) if explain else \
             (lambda q: self.link(q, threshold))
        return _map(fn, queries, workers)

    def training_examples(self, dataset, workers=1):
        def one(item):
            i, gq = item
            return label_candidates(self.candidates(gq.query), gq.gold, query_id=i)
        pooled = []
        for chunk in _map(one, list(enumerate(dataset)), workers):
            pooled.extend(chunk)
        return pooled

    def train(self, dataset, C=1.0, eps=0.1, threshold=0.56, workers=1):
        examples = self.training_examples(dataset, workers)
        if not examples:
            raise ValueError("training data produced no candidates")
        self.model = train_svr(examples, C=C, eps=eps, threshold=threshold)
        return self.model

    def tune(self, dataset, K_grid, thresholds, workers=1):
        """Average F1 for every (K, threshold) pair.

        Returns ``(best, grid)`` where grid rows are ``(K, threshold, f1)``
        and best maximizes F1, ties going to smaller K then smaller
        threshold.
        """
        K_grid = sorted(set(K_grid))
        thresholds = sorted(set(thresholds))
        if not K_grid or not thresholds:
            raise ValueError("empty tuning grid")
        k_max = K_grid[-1]

        def scored(gq):
            results = search(self.index, gq.query, k_max)
            per_k = []
            for K in K_grid:
                cs = self.candidates(gq.query, K, results)
                per_k.append((cs, self.scores(cs)))
            return per_k

        cached = _map(scored, dataset, workers)
        grid = []
        for ki, K in enumerate(K_grid):
            for t in thresholds:
                outputs = [frozenset(c.entity for c, s in zip(cs.candidates, sc) if s > t)
                           for cs, sc in (row[ki] for row in cached)]
                grid.append((K, t, average_f1(dataset, outputs).average_f1))
        best = max(grid, key=lambda r: (r[2], -r[0], -r[1]))
        return best, grid

    def with_threshold(self, threshold):
        self.model = replace(self.model, threshold=threshold)
        return self


def build_artifacts(corpus):
    return build_index(corpus), compute_link_stats(corpus), build_entity_resources(corpus)


def build(corpus_path, index_path, stats_dir, resources_path, workers=1):
    """Build and write index, stats and entity resources from a corpus file."""
    corpus = load_corpus(corpus_path, workers=workers)
    index, stats, res = build_artifacts(corpus)
    save_index(index, index_path)
    os.makedirs(stats_dir, exist_ok=True)
    save_link_stats(stats, *(os.path.join(stats_dir, f) for f in STATS_FILES))
    save_resources(res, resources_path)
    return index, stats, res


def load_artifacts(index_path, stats_dir, resources_path):
    for path in (index_path, stats_dir, resources_path):
        if not os.path.exists(path):
            raise FileNotFoundError(f"missing artifact: {path}")
    stats = load_link_stats(*(os.path.join(stats_dir, f) for f in STATS_FILES))
    return load_index(index_path), stats, load_resources(resources_path)
