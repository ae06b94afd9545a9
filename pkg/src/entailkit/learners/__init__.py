"""From-scratch classifiers and their majority-vote ensemble.

The learner order [SVM, KNN, RF, NB] is fixed: it is both the report row
order and the ensemble's tie-break precedence. Standardization is applied
inside the distance- and kernel-based learners (KNN, SVM) and skipped for
the scale-equivariant ones (RF, NB).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..corpus import EntailmentLabel
from .base import Dataset, LearnerError, Scaler, check_query
from .config import Hyperparams, load_hyperparams
from .ensemble import EnsembleModel, ensemble_predict
from .forest import RandomForestClassifier
from .knn import KnnClassifier
from .naive_bayes import GaussianNbClassifier
from .svm import SvmRbfClassifier

logger = logging.getLogger(__name__)

LEARNER_ORDER = ("svm_rbf", "knn", "random_forest", "gaussian_nb")

__all__ = [
    "Dataset",
    "EnsembleModel",
    "GaussianNbClassifier",
    "Hyperparams",
    "KnnClassifier",
    "LEARNER_ORDER",
    "LearnerError",
    "RandomForestClassifier",
    "Scaler",
    "SvmRbfClassifier",
    "ConstantClassifier",
    "ensemble_predict",
    "fit",
    "fit_all",
    "load_hyperparams",
]


@dataclass
class ConstantClassifier:
    """Stand-in fitted on a single-class dataset; always predicts it."""

    kind: str
    label: EntailmentLabel
    d: int

    def predict(self, x) -> EntailmentLabel:
        check_query(x, self.d)
        return self.label

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        return [self.label for _ in range(len(queries))]

    def to_dict(self) -> dict:
        return {
            "kind": "constant",
            "base_kind": self.kind,
            "label": self.label.value,
            "d": self.d,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ConstantClassifier":
        return cls(
            kind=payload["base_kind"],
            label=EntailmentLabel.parse(payload["label"]),
            d=payload["d"],
        )


def fit(kind: str, train: Dataset, params: Hyperparams | None = None, seed: int = 0):
    """Train one learner by kind name; see LEARNER_ORDER for the names."""
    params = (params or Hyperparams()).validate()
    if len(train.classes()) == 1:
        logger.warning(
            "training data contains a single class %s; %s degenerates to a "
            "constant predictor",
            train.labels[0].value,
            kind,
        )
        return ConstantClassifier(kind=kind, label=train.labels[0], d=train.d)
    if kind == "knn":
        return KnnClassifier.fit(train, k=params.knn_k)
    if kind == "gaussian_nb":
        return GaussianNbClassifier.fit(train)
    if kind == "random_forest":
        return RandomForestClassifier.fit(
            train, n_trees=params.rf_trees, seed=seed, bootstrap=params.rf_bootstrap
        )
    if kind == "svm_rbf":
        return SvmRbfClassifier.fit(
            train,
            c=params.svm_c,
            gamma=params.svm_gamma,
            tol=params.svm_tol,
            seed=seed,
        )
    raise LearnerError(f"unknown learner kind {kind!r}")


def fit_all(train: Dataset, params: Hyperparams | None = None, seed: int = 0) -> dict:
    """Train all four learners; RF uses seed+1 and SVM seed+2 by convention."""
    derived = {"svm_rbf": seed + 2, "random_forest": seed + 1}
    return {
        kind: fit(kind, train, params, seed=derived.get(kind, seed))
        for kind in LEARNER_ORDER
    }
