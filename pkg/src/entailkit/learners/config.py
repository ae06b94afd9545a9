"""Learner hyperparameters and their key-value config file.

File format: one ``key = value`` per line, ``#`` starts a comment.
Recognized keys:

    knn.k        positive int            (default 5)
    rf.trees     positive int            (default 100)
    rf.bootstrap true|false              (default true)
    svm.c        positive float          (default 1.0)
    svm.gamma    positive float or scale (default scale)
    svm.tol      positive float          (default 1e-3)

Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import LearnerError


@dataclass
class Hyperparams:
    knn_k: int = 5
    rf_trees: int = 100
    rf_bootstrap: bool = True
    svm_c: float = 1.0
    svm_gamma: float | str = "scale"
    svm_tol: float = 1e-3

    def validate(self) -> "Hyperparams":
        if self.knn_k < 1:
            raise LearnerError(f"knn.k must be >= 1, got {self.knn_k}")
        if self.rf_trees < 1:
            raise LearnerError(f"rf.trees must be >= 1, got {self.rf_trees}")
        if self.svm_c <= 0:
            raise LearnerError(f"svm.c must be positive, got {self.svm_c}")
        if self.svm_gamma != "scale" and float(self.svm_gamma) <= 0:
            raise LearnerError(f"svm.gamma must be positive or 'scale', got {self.svm_gamma}")
        if self.svm_tol <= 0:
            raise LearnerError(f"svm.tol must be positive, got {self.svm_tol}")
        return self


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def load_hyperparams(path: str) -> Hyperparams:
    params = Hyperparams()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (part.strip() for part in line.partition("="))
            if not sep or not value:
                raise LearnerError(f"{path}:{line_no}: expected 'key = value'")
            try:
                if key == "knn.k":
                    params.knn_k = int(value)
                elif key == "rf.trees":
                    params.rf_trees = int(value)
                elif key == "rf.bootstrap":
                    params.rf_bootstrap = _parse_bool(value)
                elif key == "svm.c":
                    params.svm_c = float(value)
                elif key == "svm.gamma":
                    params.svm_gamma = value if value == "scale" else float(value)
                elif key == "svm.tol":
                    params.svm_tol = float(value)
                else:
                    raise LearnerError(f"{path}:{line_no}: unknown key {key!r}")
            except ValueError as exc:
                raise LearnerError(f"{path}:{line_no}: {exc}") from None
    return params.validate()
