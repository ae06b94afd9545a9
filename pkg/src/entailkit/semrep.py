"""Sentence vector construction.

Two strategies share one interface:

* ``represent_thresholded`` accumulates word vectors under a per-word
  empirical gate. For each in-vocabulary word after the first, the word's
  own elements define a threshold ``alpha = mean + population std``; an
  element is added to the running sentence vector only where the absolute
  difference between the accumulated value and the word's value is at
  least ``alpha``. The first in-vocabulary word is added unconditionally.
* ``represent_plain`` is the classical element-wise arithmetic mean.

Both skip out-of-vocabulary tokens and return the zero vector when no
token is found. The thresholded strategy is order-dependent by design;
the plain strategy is not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .embedstore import EmbeddingStore


class Strategy(enum.Enum):
    THRESHOLDED = "thr"
    PLAIN_SUM = "plain"


@dataclass(frozen=True)
class ThresholdStats:
    """Gate statistics of one word vector: alpha = mean + population std."""

    mean: float
    std: float

    @property
    def alpha(self) -> float:
        return self.mean + self.std

    @classmethod
    def of(cls, vec: np.ndarray) -> "ThresholdStats":
        return cls(mean=float(np.mean(vec)), std=float(np.std(vec)))


@dataclass(frozen=True)
class SentenceVector:
    values: np.ndarray
    in_vocab_count: int
    strategy: Strategy

    def __post_init__(self):
        self.values.setflags(write=False)


def represent_thresholded(tokens: list[str], store: EmbeddingStore) -> SentenceVector:
    """Accumulate in-vocab word vectors under the per-word empirical gate.

    The gate may admit every element (alpha can be negative) or none; a
    repeated token is processed at each occurrence.
    """
    acc = np.zeros(store.dimension, dtype=np.float64)
    count = 0
    for token in tokens:
        vec = store.lookup(token)
        if vec is None:
            continue
        if count == 0:
            acc += vec
        else:
            alpha = ThresholdStats.of(vec).alpha
            gate = np.abs(acc - vec) >= alpha
            acc[gate] += vec[gate]
        count += 1
    return SentenceVector(values=acc, in_vocab_count=count, strategy=Strategy.THRESHOLDED)


def represent_plain(tokens: list[str], store: EmbeddingStore) -> SentenceVector:
    """Element-wise arithmetic mean of the in-vocab word vectors."""
    acc = np.zeros(store.dimension, dtype=np.float64)
    count = 0
    for token in tokens:
        vec = store.lookup(token)
        if vec is None:
            continue
        acc += vec
        count += 1
    if count > 0:
        acc /= count
    return SentenceVector(values=acc, in_vocab_count=count, strategy=Strategy.PLAIN_SUM)


def represent(tokens: list[str], store: EmbeddingStore, strategy: Strategy) -> SentenceVector:
    if strategy is Strategy.THRESHOLDED:
        return represent_thresholded(tokens, store)
    return represent_plain(tokens, store)


def sum_vectors(tokens: list[str], store: EmbeddingStore) -> tuple[np.ndarray, int]:
    """Plain sum of in-vocab word vectors (used by the STS feature)."""
    acc = np.zeros(store.dimension, dtype=np.float64)
    count = 0
    for token in tokens:
        vec = store.lookup(token)
        if vec is not None:
            acc += vec
            count += 1
    return acc, count
