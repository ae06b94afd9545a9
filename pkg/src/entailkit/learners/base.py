"""Shared learner infrastructure: datasets, label codes, standardization."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..corpus import LABEL_ORDER, EntailmentLabel

logger = logging.getLogger(__name__)

# Integer codes follow the canonical label order; ties everywhere resolve
# to the lowest code.
LABEL_TO_CODE = {label: i for i, label in enumerate(LABEL_ORDER)}
CODE_TO_LABEL = {i: label for i, label in enumerate(LABEL_ORDER)}
N_CLASSES = len(LABEL_ORDER)


class LearnerError(Exception):
    """Raised for invalid datasets, hyperparameters, or query vectors."""


@dataclass
class Dataset:
    features: np.ndarray
    labels: tuple[EntailmentLabel, ...]
    schema: tuple[str, ...]

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 2:
            raise LearnerError("features must be a 2-d matrix")
        n, d = self.features.shape
        if n == 0 or d == 0:
            raise LearnerError(f"degenerate dataset shape {self.features.shape}")
        if len(self.labels) != n:
            raise LearnerError(f"{n} rows but {len(self.labels)} labels")
        if self.schema and len(self.schema) != d:
            raise LearnerError(f"{d} columns but {len(self.schema)} schema names")
        if not np.all(np.isfinite(self.features)):
            raise LearnerError("non-finite feature value in dataset")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def codes(self) -> np.ndarray:
        return np.array([LABEL_TO_CODE[label] for label in self.labels], dtype=np.int64)

    def classes(self) -> list[int]:
        """Distinct label codes present, in canonical order."""
        present = set(self.codes().tolist())
        return [c for c in range(N_CLASSES) if c in present]


@dataclass
class Scaler:
    """Per-feature train-set standardization; constant features map to 0."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, features: np.ndarray) -> "Scaler":
        mean = features.mean(axis=0)
        std = features.std(axis=0)
        std = np.where(std > 0.0, std, 1.0)
        return cls(mean=mean, std=std)

    def transform(self, features: np.ndarray) -> np.ndarray:
        return (np.asarray(features, dtype=np.float64) - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, payload: dict) -> "Scaler":
        return cls(
            mean=np.asarray(payload["mean"], dtype=np.float64),
            std=np.asarray(payload["std"], dtype=np.float64),
        )


def check_query(x, d: int) -> np.ndarray:
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] != d:
        raise LearnerError(f"query must be a vector of length {d}, got shape {vec.shape}")
    return vec


def majority_code(codes: np.ndarray) -> int:
    """Most frequent code; ties resolve to the lowest (canonical) code."""
    counts = np.bincount(codes, minlength=N_CLASSES)
    return int(np.argmax(counts))
