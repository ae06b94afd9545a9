"""Gaussian naive Bayes with a relative variance floor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus import EntailmentLabel
from .base import CODE_TO_LABEL, Dataset, Scaler, check_query

# Per-class variances get this fraction of the largest overall feature
# variance added, so zero-variance features stay usable.
VAR_SMOOTHING = 1e-9


@dataclass
class GaussianNbClassifier:
    kind = "gaussian_nb"

    classes: np.ndarray        # codes, canonical order
    log_priors: np.ndarray     # (C,)
    means: np.ndarray          # (C, D)
    variances: np.ndarray      # (C, D), floored
    scaler: Scaler | None = None

    @classmethod
    def fit(cls, train: Dataset) -> "GaussianNbClassifier":
        codes = train.codes()
        classes = np.array(train.classes(), dtype=np.int64)
        n = train.n
        means = np.empty((len(classes), train.d))
        variances = np.empty((len(classes), train.d))
        priors = np.empty(len(classes))
        eps = VAR_SMOOTHING * float(np.max(train.features.var(axis=0)))
        if eps == 0.0:
            eps = 1e-18  # fully constant data; keep densities finite
        for row, code in enumerate(classes):
            members = train.features[codes == code]
            priors[row] = members.shape[0] / n
            means[row] = members.mean(axis=0)
            variances[row] = members.var(axis=0) + eps
        return cls(
            classes=classes,
            log_priors=np.log(priors),
            means=means,
            variances=variances,
        )

    def log_posteriors(self, x) -> np.ndarray:
        """Unnormalized log posterior per fitted class (canonical order)."""
        vec = check_query(x, self.means.shape[1])
        diff = vec[None, :] - self.means
        loglik = -0.5 * np.sum(
            np.log(2.0 * np.pi * self.variances) + diff**2 / self.variances,
            axis=1,
        )
        return self.log_priors + loglik

    def predict(self, x) -> EntailmentLabel:
        scores = self.log_posteriors(x)
        # argmax returns the first maximum: canonical-order tie rule
        return CODE_TO_LABEL[int(self.classes[int(np.argmax(scores))])]

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        return [self.predict(q) for q in np.asarray(queries, dtype=np.float64)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "classes": self.classes.tolist(),
            "log_priors": self.log_priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "GaussianNbClassifier":
        return cls(
            classes=np.asarray(payload["classes"], dtype=np.int64),
            log_priors=np.asarray(payload["log_priors"], dtype=np.float64),
            means=np.asarray(payload["means"], dtype=np.float64),
            variances=np.asarray(payload["variances"], dtype=np.float64),
        )
