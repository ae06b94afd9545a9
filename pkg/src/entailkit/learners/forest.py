"""Random forest of CART trees: Gini impurity, bootstrap sampling,
sqrt(D) feature candidates per split, grown to purity."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..corpus import EntailmentLabel
from .base import CODE_TO_LABEL, N_CLASSES, Dataset, LearnerError, check_query, majority_code

_MIN_GAIN = 1e-12


@dataclass
class Tree:
    """Flat array representation; leaves have feature -1."""

    feature: np.ndarray    # (nodes,) int, -1 for leaf
    threshold: np.ndarray  # (nodes,) float
    left: np.ndarray       # (nodes,) int child index
    right: np.ndarray      # (nodes,) int child index
    label: np.ndarray      # (nodes,) int code at leaves, -1 inside

    def predict_codes(self, queries: np.ndarray) -> np.ndarray:
        node = np.zeros(queries.shape[0], dtype=np.int64)
        active = self.feature[node] >= 0
        while np.any(active):
            idx = np.flatnonzero(active)
            cur = node[idx]
            goes_left = (
                queries[idx, self.feature[cur]] <= self.threshold[cur]
            )
            node[idx] = np.where(goes_left, self.left[cur], self.right[cur])
            active = self.feature[node] >= 0
        return self.label[node]

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "label": self.label.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "Tree":
        return cls(
            feature=np.asarray(payload["feature"], dtype=np.int64),
            threshold=np.asarray(payload["threshold"], dtype=np.float64),
            left=np.asarray(payload["left"], dtype=np.int64),
            right=np.asarray(payload["right"], dtype=np.int64),
            label=np.asarray(payload["label"], dtype=np.int64),
        )


def _best_split(sub: np.ndarray, node_codes: np.ndarray):
    """Best (feature column, threshold) over a candidate feature block.

    ``sub`` is the (n, m) matrix of the node's rows restricted to the
    sampled features. All candidates are scored in one vectorized pass;
    ties take the earliest candidate, then the lowest threshold. Returns
    (weighted_child_impurity, column, threshold) or None when every
    column is constant.
    """
    n, m = sub.shape
    order = np.argsort(sub, axis=0, kind="stable")
    svals = np.take_along_axis(sub, order, axis=0)
    scodes = node_codes[order]
    # cumulative class counts below each split position: (C, n-1, m)
    cum = (scodes[None, :, :] == np.arange(N_CLASSES)[:, None, None]).cumsum(axis=1)
    left_counts = cum[:, :-1, :].astype(np.float64)
    totals = cum[:, -1, :].astype(np.float64)
    left_n = np.arange(1, n, dtype=np.float64)[:, None]
    right_n = n - left_n
    gini_left = 1.0 - np.sum((left_counts / left_n) ** 2, axis=0)
    gini_right = 1.0 - np.sum(
        ((totals[:, None, :] - left_counts) / right_n) ** 2, axis=0
    )
    weighted = (left_n * gini_left + right_n * gini_right) / n
    weighted[svals[:-1] == svals[1:]] = np.inf  # not a value boundary
    best_pos = np.argmin(weighted, axis=0)
    best_vals = weighted[best_pos, np.arange(m)]
    col = int(np.argmin(best_vals))
    if not np.isfinite(best_vals[col]):
        return None
    pos = int(best_pos[col])
    threshold = 0.5 * (svals[pos, col] + svals[pos + 1, col])
    return float(best_vals[col]), col, float(threshold)


def _grow_tree(
    x: np.ndarray, codes: np.ndarray, rng: np.random.Generator, max_features: int
) -> Tree:
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    label: list[int] = []

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        label.append(-1)
        return len(feature) - 1

    root = new_node()
    stack = [(root, np.arange(x.shape[0]))]
    d = x.shape[1]
    while stack:
        node, idx = stack.pop()
        node_codes = codes[idx]
        counts = np.bincount(node_codes, minlength=N_CLASSES)
        parent_gini = 1.0 - float(np.sum((counts / idx.size) ** 2))
        if parent_gini == 0.0 or idx.size < 2:
            label[node] = majority_code(node_codes)
            continue
        candidates = rng.choice(d, size=min(max_features, d), replace=False)
        split = _best_split(x[np.ix_(idx, candidates)], node_codes)
        if split is None or parent_gini - split[0] <= _MIN_GAIN:
            label[node] = majority_code(node_codes)
            continue
        _, col, thr = split
        f = int(candidates[col])
        goes_left = x[idx, f] <= thr
        feature[node] = f
        threshold[node] = thr
        left[node] = new_node()
        right[node] = new_node()
        stack.append((right[node], idx[~goes_left]))
        stack.append((left[node], idx[goes_left]))

    return Tree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        label=np.asarray(label, dtype=np.int64),
    )


def worker_count() -> int:
    """Thread cap from ENTAILKIT_THREADS; defaults to 1 (sequential)."""
    raw = os.environ.get("ENTAILKIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class RandomForestClassifier:
    kind = "random_forest"

    trees: list[Tree] = field(default_factory=list)
    d: int = 0

    @classmethod
    def fit(
        cls,
        train: Dataset,
        n_trees: int = 100,
        seed: int = 0,
        bootstrap: bool = True,
        max_features: int | None = None,
    ) -> "RandomForestClassifier":
        if n_trees < 1:
            raise LearnerError(f"n_trees must be >= 1, got {n_trees}")
        codes = train.codes()
        x = train.features
        m = max_features or max(1, int(np.sqrt(train.d)))
        seeds = np.random.SeedSequence(seed).spawn(n_trees)

        def build(tree_seed) -> Tree:
            rng = np.random.default_rng(tree_seed)
            if bootstrap:
                sample = rng.integers(0, train.n, size=train.n)
            else:
                sample = np.arange(train.n)
            return _grow_tree(x[sample], codes[sample], rng, m)

        workers = worker_count()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                trees = list(pool.map(build, seeds))
        else:
            trees = [build(s) for s in seeds]
        return cls(trees=trees, d=train.d)

    def predict(self, x) -> EntailmentLabel:
        vec = check_query(x, self.d)
        return self.predict_batch(vec[None, :])[0]

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        queries = np.asarray(queries, dtype=np.float64)
        if queries.ndim != 2 or queries.shape[1] != self.d:
            raise LearnerError(f"queries must be (n, {self.d}), got {queries.shape}")
        votes = np.zeros((queries.shape[0], N_CLASSES), dtype=np.int64)
        for tree in self.trees:
            codes = tree.predict_codes(queries)
            votes[np.arange(queries.shape[0]), codes] += 1
        # argmax takes the first maximum: canonical-order tie rule
        return [CODE_TO_LABEL[int(c)] for c in np.argmax(votes, axis=1)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "RandomForestClassifier":
        return cls(
            trees=[Tree.from_dict(t) for t in payload["trees"]],
            d=payload["d"],
        )
