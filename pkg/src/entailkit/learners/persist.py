"""Model serialization: magic header "ENTK1", version byte, JSON payload."""

from __future__ import annotations

import json

from . import ConstantClassifier
from .base import LearnerError
from .forest import RandomForestClassifier
from .knn import KnnClassifier
from .naive_bayes import GaussianNbClassifier
from .svm import SvmRbfClassifier

MAGIC = b"ENTK1"
VERSION = 1

_KINDS = {
    "knn": KnnClassifier,
    "gaussian_nb": GaussianNbClassifier,
    "random_forest": RandomForestClassifier,
    "svm_rbf": SvmRbfClassifier,
    "constant": ConstantClassifier,
}


def save_model(model, path: str) -> None:
    payload = model.to_dict()
    if payload.get("kind") not in _KINDS:
        raise LearnerError(f"cannot serialize model kind {payload.get('kind')!r}")
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(bytes([VERSION]))
        handle.write(json.dumps(payload, sort_keys=True).encode("utf-8"))


def load_model(path: str):
    with open(path, "rb") as handle:
        magic = handle.read(len(MAGIC))
        if magic != MAGIC:
            raise LearnerError(f"{path}: not a model file (bad magic {magic!r})")
        version = handle.read(1)
        if not version or version[0] != VERSION:
            raise LearnerError(f"{path}: unsupported model version {version!r}")
        payload = json.loads(handle.read().decode("utf-8"))
    kind = payload.get("kind")
    if kind not in _KINDS:
        raise LearnerError(f"{path}: unknown model kind {kind!r}")
    return _KINDS[kind].from_dict(payload)
