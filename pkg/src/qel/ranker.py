"""Regression ranking of candidates.

Training minimizes the L2-regularized L2-loss SVR objective

    0.5 * w.w + C * sum_i max(0, |y_i - w.x_i| - eps)**2

(no bias term) by coordinate descent on its dual

    0.5 * b.(Q + I/(2C)).b - y.b + eps * |b|_1,   w = sum_i b_i x_i

with Q the Gram matrix. Each dual variable has a closed-form update.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .text import normalize_title, tokenize

HEADER = "QELSVR v1"


@dataclass(frozen=True)
class TrainingExample:
    features: np.ndarray
    target: float
    query_id: object = None
    candidate: object = None


@dataclass(frozen=True)
class RegressionModel:
    weights: np.ndarray
    C: float = 1.0
    eps: float = 0.1
    threshold: float = 0.56
    n_iter: int = field(default=0, compare=False)


def title_token_set(entity):
    return set(tokenize(entity))


def jaccard(a, b):
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def label_candidates(cs, gold, query_id=None):
    """Training examples for a featurized candidate set.

    A candidate equal to a gold entity gets target 1.0; any other gets its
    best title-token Jaccard overlap with a gold entity.
    """
    gold = {normalize_title(g) for g in gold}
    gold_tokens = [title_token_set(g) for g in sorted(gold)]
    out = []
    for c in cs.candidates:
        if c.entity in gold:
            target = 1.0
        else:
            mine = title_token_set(c.entity)
            target = max((jaccard(mine, g) for g in gold_tokens), default=0.0)
        out.append(TrainingExample(c.features, target, query_id, c))
    return out


def svr_objective(w, X, y, C, eps):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    loss = np.maximum(0.0, np.abs(y - X @ w) - eps)
    return 0.5 * float(w @ w) + C * float(loss @ loss)


def fit_svr(X, y, C=1.0, eps=0.1, tol=1e-10, max_epochs=10000):
    """Dual coordinate descent; returns ``(w, epochs)``.

    Stops when the largest projected-gradient violation over an epoch
    falls below `tol` or after `max_epochs` sweeps.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape
    lam = 1.0 / (2.0 * C)
    beta = np.zeros(n)
    w = np.zeros(d)
    diag = np.einsum("ij,ij->i", X, X) + lam
    rows = [X[i] for i in range(n)]
    epoch = 0
    for epoch in range(1, max_epochs + 1):
        worst = 0.0
        for i in range(n):
            xi = rows[i]
            b = beta[i]
            g = float(w @ xi) - y[i] + lam * b
            if b > 0:
                viol = abs(g + eps)
            elif b < 0:
                viol = abs(g - eps)
            else:
                viol = max(0.0, abs(g) - eps)
            worst = max(worst, viol)
            h = diag[i]
            if g + eps < h * b:
                step = -(g + eps) / h
            elif g - eps > h * b:
                step = -(g - eps) / h
            else:
                step = -b
            if step != 0.0:
                beta[i] = b + step
                w += step * xi
        if worst < tol:
            break
    return w, epoch


def train_svr(examples, C=1.0, eps=0.1, threshold=0.56):
    if not examples:
        raise ValueError("no training examples")
    X = np.vstack([ex.features for ex in examples])
    if not np.all(np.isfinite(X)):
        raise ValueError("non-finite feature values")
    y = np.array([ex.target for ex in examples], dtype=np.float64)
    w, epochs = fit_svr(X, y, C=C, eps=eps)
    return RegressionModel(w, C, eps, threshold, epochs)


def predict(model, features):
    x = np.asarray(features, dtype=np.float64)
    if x.shape[-1] != model.weights.shape[0]:
        raise ValueError(f"expected {model.weights.shape[0]} features, got {x.shape[-1]}")
    return x @ model.weights


def select(cs, model, threshold=None):
    """Entities of candidates scoring strictly above the threshold."""
    t = model.threshold if threshold is None else threshold
    return frozenset(c.entity for c in cs.candidates
                     if float(predict(model, c.features)) > t)


def dumps_model(model):
    lines = [HEADER] + [format(float(v), ".17g") for v in
                        (model.C, model.eps, model.threshold, *model.weights)]
    return "\n".join(lines) + "\n"


def loads_model(data):
    lines = data.split("\n")
    if lines[0] != HEADER:
        raise ValueError(f"missing {HEADER!r} header")
    values = [float(v) for v in lines[1:] if v.strip()]
    if len(values) < 4:
        raise ValueError("truncated model file")
    C, eps, threshold = values[:3]
    weights = np.array(values[3:], dtype=np.float64)
    if not np.all(np.isfinite(weights)) or not math.isfinite(threshold):
        raise ValueError("non-finite model parameters")
    return RegressionModel(weights, C, eps, threshold)


def save_model(model, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_model(model))


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
