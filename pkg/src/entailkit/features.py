"""Per-pair features: EMDV, its absolute average, Jaccard, BoW cosine, STS.

All features are finite by construction: cosine against a zero vector is
defined as 0, and empty token lists fall back to the stated conventions
instead of NaN.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import LabeledPair
from .embedstore import EmbeddingStore
from .semrep import (
    SentenceVector,
    Strategy,
    represent_plain,
    represent_thresholded,
    sum_vectors,
)
from .textprep import PrepConfig, preprocess


class FeatureSet(enum.Enum):
    """The four experiment configurations."""

    EMDV_THR = "emdv-thr"
    EMDV_PLAIN = "emdv-plain"
    HAND_THR = "hand-thr"
    HAND_PLAIN = "hand-plain"

    @property
    def thresholded(self) -> bool:
        return self in (FeatureSet.EMDV_THR, FeatureSet.HAND_THR)

    @property
    def handcrafted(self) -> bool:
        return self in (FeatureSet.HAND_THR, FeatureSet.HAND_PLAIN)


HAND_SCHEMA = ("avg_emdv", "bow", "jac", "sts")


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    schema: tuple[str, ...]

    def __post_init__(self):
        if len(self.values) != len(self.schema):
            raise ValueError(
                f"{len(self.values)} values vs {len(self.schema)} schema names"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite feature value")
        self.values.setflags(write=False)


@dataclass
class StoreBundle:
    """Everything feature assembly needs besides the pair itself.

    ``sts_store`` defaults to the word store, so the pipeline runs with a
    single embedding model; a separately exported contextual-model store
    can be plugged in for the STS feature.
    """

    word_store: EmbeddingStore
    sts_store: EmbeddingStore | None = None
    prep: PrepConfig = field(default_factory=PrepConfig)

    def resolved_sts(self) -> EmbeddingStore:
        return self.sts_store if self.sts_store is not None else self.word_store


def _check_dims(v_t: np.ndarray, v_h: np.ndarray) -> None:
    if v_t.shape != v_h.shape:
        raise ValueError(f"dimension mismatch: {v_t.shape} vs {v_h.shape}")


def emdv(v_t: SentenceVector | np.ndarray, v_h: SentenceVector | np.ndarray) -> np.ndarray:
    """Signed element-wise difference between text and hypothesis vectors."""
    a = v_t.values if isinstance(v_t, SentenceVector) else np.asarray(v_t, dtype=np.float64)
    b = v_h.values if isinstance(v_h, SentenceVector) else np.asarray(v_h, dtype=np.float64)
    _check_dims(a, b)
    return a - b


def avg_emdv(v_t: SentenceVector | np.ndarray, v_h: SentenceVector | np.ndarray) -> float:
    """Mean absolute element difference; non-negative by construction."""
    diff = emdv(v_t, v_h)
    if diff.size == 0:
        raise ValueError("zero-dimensional vectors")
    return float(np.mean(np.abs(diff)))


def jaccard(t_tokens: list[str], h_tokens: list[str]) -> float:
    """Overlap of unique tokens; 0 when both sides are empty."""
    t_set, h_set = set(t_tokens), set(h_tokens)
    union = t_set | h_set
    if not union:
        return 0.0
    return len(t_set & h_set) / len(union)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity with the zero-vector convention: either zero -> 0."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def bow_cosine(t_tokens: list[str], h_tokens: list[str]) -> float:
    """Cosine of per-pair term-frequency vectors.

    The vocabulary is the union of the pair's tokens, ordered
    lexicographically so serialized dumps are reproducible.
    """
    t_counts = Counter(t_tokens)
    h_counts = Counter(h_tokens)
    vocab = sorted(set(t_counts) | set(h_counts))
    if not vocab:
        return 0.0
    t_vec = np.array([t_counts[w] for w in vocab], dtype=np.float64)
    h_vec = np.array([h_counts[w] for w in vocab], dtype=np.float64)
    return cosine(t_vec, h_vec)


def sts(t_tokens: list[str], h_tokens: list[str], ctx_store: EmbeddingStore) -> float:
    """Cosine between summed word vectors from the given store."""
    t_vec, _ = sum_vectors(t_tokens, ctx_store)
    h_vec, _ = sum_vectors(h_tokens, ctx_store)
    return cosine(t_vec, h_vec)


def emdv_schema(dimension: int) -> tuple[str, ...]:
    return tuple(f"emdv_{i}" for i in range(dimension))


def assemble(pair: LabeledPair, feature_set: FeatureSet, stores: StoreBundle) -> FeatureVector:
    """Compute the configured features for one text-hypothesis pair."""
    t_tokens = preprocess(pair.text, stores.prep)
    h_tokens = preprocess(pair.hypothesis, stores.prep)
    return assemble_tokens(t_tokens, h_tokens, feature_set, stores)


def assemble_tokens(
    t_tokens: list[str],
    h_tokens: list[str],
    feature_set: FeatureSet,
    stores: StoreBundle,
) -> FeatureVector:
    """Same as assemble, for already-preprocessed token lists."""
    represent = represent_thresholded if feature_set.thresholded else represent_plain
    v_t = represent(t_tokens, stores.word_store)
    v_h = represent(h_tokens, stores.word_store)
    if feature_set.handcrafted:
        values = np.array(
            [
                avg_emdv(v_t, v_h),
                bow_cosine(t_tokens, h_tokens),
                jaccard(t_tokens, h_tokens),
                sts(t_tokens, h_tokens, stores.resolved_sts()),
            ],
            dtype=np.float64,
        )
        return FeatureVector(values=values, schema=HAND_SCHEMA)
    return FeatureVector(
        values=emdv(v_t, v_h),
        schema=emdv_schema(stores.word_store.dimension),
    )
