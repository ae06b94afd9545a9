"""K-nearest-neighbors classifier with deterministic tie handling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus import EntailmentLabel
from .base import (
    CODE_TO_LABEL,
    N_CLASSES,
    Dataset,
    LearnerError,
    Scaler,
    check_query,
)

_BLOCK = 256  # queries per distance block, keeps the N x B matrix small


@dataclass
class KnnClassifier:
    kind = "knn"

    k: int
    train_x: np.ndarray
    train_codes: np.ndarray
    scaler: Scaler | None

    @classmethod
    def fit(cls, train: Dataset, k: int = 5, scale: bool = True) -> "KnnClassifier":
        if k < 1:
            raise LearnerError(f"k must be >= 1, got {k}")
        scaler = Scaler.fit(train.features) if scale else None
        x = scaler.transform(train.features) if scaler else train.features.copy()
        return cls(k=k, train_x=x, train_codes=train.codes(), scaler=scaler)

    def _prepared(self, queries: np.ndarray) -> np.ndarray:
        return self.scaler.transform(queries) if self.scaler else queries

    def predict(self, x) -> EntailmentLabel:
        vec = check_query(x, self.train_x.shape[1])
        return self.predict_batch(vec[None, :])[0]

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        queries = np.asarray(queries, dtype=np.float64)
        if queries.ndim != 2 or queries.shape[1] != self.train_x.shape[1]:
            raise LearnerError(
                f"queries must be (n, {self.train_x.shape[1]}), got {queries.shape}"
            )
        prepared = self._prepared(queries)
        out: list[EntailmentLabel] = []
        k = min(self.k, self.train_x.shape[0])
        train_sq = np.sum(self.train_x**2, axis=1)
        for start in range(0, prepared.shape[0], _BLOCK):
            block = prepared[start:start + _BLOCK]
            sq = train_sq[None, :] - 2.0 * block @ self.train_x.T + np.sum(
                block**2, axis=1
            )[:, None]
            np.maximum(sq, 0.0, out=sq)
            for row in sq:
                # stable sort: equal distances keep training order
                nearest = np.argsort(row, kind="stable")[:k]
                out.append(CODE_TO_LABEL[self._vote(nearest, row)])
        return out

    def _vote(self, nearest: np.ndarray, distances: np.ndarray) -> int:
        votes = np.bincount(self.train_codes[nearest], minlength=N_CLASSES)
        top = votes.max()
        tied = np.flatnonzero(votes == top)
        if len(tied) == 1:
            return int(tied[0])
        # tie: the single nearest neighbor among the tied classes decides
        tied_set = set(tied.tolist())
        for idx in nearest:  # already ordered by distance
            code = int(self.train_codes[idx])
            if code in tied_set:
                return code
        raise AssertionError("unreachable: tied class without a neighbor")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "train_x": self.train_x.tolist(),
            "train_codes": self.train_codes.tolist(),
            "scaler": self.scaler.to_dict() if self.scaler else None,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "KnnClassifier":
        return cls(
            k=payload["k"],
            train_x=np.asarray(payload["train_x"], dtype=np.float64),
            train_codes=np.asarray(payload["train_codes"], dtype=np.int64),
            scaler=Scaler.from_dict(payload["scaler"]) if payload["scaler"] else None,
        )
