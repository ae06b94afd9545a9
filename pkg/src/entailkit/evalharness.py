"""End-to-end experiment runner: load, preprocess, split, featurize,
train the four learners plus the ensemble, and report accuracies with
confusion matrices."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import learners
from .corpus import LABEL_ORDER, EntailmentLabel, LabeledPair, load_corpus, split_corpus
from .embedstore import EmbeddingStore
from .features import FeatureSet, StoreBundle, assemble_tokens, emdv_schema, HAND_SCHEMA
from .learners import Dataset, Hyperparams, LEARNER_ORDER
from .learners.ensemble import resolve_votes
from .textprep import preprocess

ENSEMBLE_NAME = "ensemble"


class HarnessError(Exception):
    """Pipeline failure; carries the name of the failing stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class ConfusionMatrix:
    """3x3 counts; rows are true labels, columns predictions, order N/E/C."""

    counts: np.ndarray = field(
        default_factory=lambda: np.zeros((3, 3), dtype=np.int64)
    )

    def add(self, true: EntailmentLabel, predicted: EntailmentLabel) -> None:
        self.counts[LABEL_ORDER.index(true), LABEL_ORDER.index(predicted)] += 1

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def predicted_fraction(self, label: EntailmentLabel) -> float:
        """Share of all predictions that are the given label."""
        return float(self.counts[:, LABEL_ORDER.index(label)].sum() / self.total)

    @classmethod
    def from_predictions(
        cls,
        truths: list[EntailmentLabel],
        predictions: list[EntailmentLabel],
    ) -> "ConfusionMatrix":
        matrix = cls()
        for true, pred in zip(truths, predictions, strict=True):
            matrix.add(true, pred)
        return matrix


def accuracy(confusion: ConfusionMatrix) -> float:
    """Diagonal mass over the total; total must be positive."""
    total = confusion.total
    if total <= 0:
        raise ValueError("empty confusion matrix")
    return float(np.trace(confusion.counts) / total)


@dataclass
class StoreInfo:
    name: str
    dimension: int
    vocab_size: int
    token_coverage: float


@dataclass
class ExperimentReport:
    config: FeatureSet
    seed: int
    train_ratio: float
    train_size: int
    test_size: int
    accuracies: dict[str, float]
    confusions: dict[str, ConfusionMatrix]
    word_store: StoreInfo
    sts_store: StoreInfo | None  # None when the word store doubles as STS
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        """Deterministic structured form; excludes wall-clock timing."""
        payload = {
            "config": self.config.value,
            "seed": self.seed,
            "train_ratio": self.train_ratio,
            "train_size": self.train_size,
            "test_size": self.test_size,
            "label_order": [label.value for label in LABEL_ORDER],
            "learners": {
                name: {
                    "accuracy": self.accuracies[name],
                    "confusion": self.confusions[name].counts.tolist(),
                }
                for name in (*LEARNER_ORDER, ENSEMBLE_NAME)
            },
            "word_store": _store_info_dict(self.word_store),
            "sts_store": _store_info_dict(self.sts_store) if self.sts_store else None,
        }
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"config: {self.config.value}   seed: {self.seed}   "
            f"train/test: {self.train_size}/{self.test_size}",
            _store_info_line("embeddings", self.word_store),
        ]
        if self.sts_store is not None:
            lines.append(_store_info_line("sts embeddings", self.sts_store))
        else:
            lines.append("sts embeddings: same as word store")
        lines.append("")
        lines.append(f"{'algorithm':<15}{'accuracy':>9}")
        for name in (*LEARNER_ORDER, ENSEMBLE_NAME):
            lines.append(f"{name:<15}{self.accuracies[name]:>9.4f}")
        lines.append("")
        lines.append("confusion matrices (rows true, cols predicted, order N/E/C):")
        for name in (*LEARNER_ORDER, ENSEMBLE_NAME):
            lines.append(f"{name}:")
            for row in self.confusions[name].counts:
                lines.append("  " + " ".join(f"{int(v):>6}" for v in row))
        lines.append("")
        lines.append(f"elapsed: {self.elapsed_seconds:.1f} s")
        return "\n".join(lines) + "\n"


def _store_info_dict(info: StoreInfo) -> dict:
    return {
        "name": info.name,
        "dimension": info.dimension,
        "vocab_size": info.vocab_size,
        "token_coverage": info.token_coverage,
    }


def _store_info_line(title: str, info: StoreInfo) -> str:
    return (
        f"{title}: {info.name} (dim {info.dimension}, vocab {info.vocab_size}), "
        f"token coverage {info.token_coverage:.1%}"
    )


def _stage(name: str):
    class _Guard:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and not isinstance(exc, HarnessError):
                raise HarnessError(name, exc) from exc
            return False

    return _Guard()


def _token_coverage(store: EmbeddingStore, token_lists: list[list[str]]) -> float:
    hits = 0
    total = 0
    for tokens in token_lists:
        total += len(tokens)
        hits += sum(1 for t in tokens if t in store)
    return hits / total if total else 1.0


def _store_info(store: EmbeddingStore, token_lists: list[list[str]]) -> StoreInfo:
    return StoreInfo(
        name=store.name,
        dimension=store.dimension,
        vocab_size=len(store),
        token_coverage=_token_coverage(store, token_lists),
    )


def extract_dataset(
    pairs: list[LabeledPair],
    token_cache: dict[str, tuple[list[str], list[str]]],
    feature_set: FeatureSet,
    stores: StoreBundle,
) -> Dataset:
    rows = []
    for pair in pairs:
        t_tokens, h_tokens = token_cache[pair.id]
        rows.append(assemble_tokens(t_tokens, h_tokens, feature_set, stores).values)
    schema = (
        HAND_SCHEMA
        if feature_set.handcrafted
        else emdv_schema(stores.word_store.dimension)
    )
    return Dataset(
        features=np.vstack(rows),
        labels=tuple(pair.label for pair in pairs),
        schema=schema,
    )


def run_experiment(
    corpus_path: str,
    feature_set: FeatureSet,
    stores: StoreBundle,
    seed: int = 42,
    train_ratio: float = 0.75,
    params: Hyperparams | None = None,
) -> ExperimentReport:
    """Run one full configuration. All randomness derives from the seed:
    the split uses it directly, the forest uses seed+1, the SVM seed+2."""
    started = time.perf_counter()
    with _stage("load"):
        pairs = load_corpus(corpus_path)
    return run_experiment_pairs(
        pairs, feature_set, stores, seed, train_ratio, params, started
    )


def run_experiment_pairs(
    pairs: list[LabeledPair],
    feature_set: FeatureSet,
    stores: StoreBundle,
    seed: int = 42,
    train_ratio: float = 0.75,
    params: Hyperparams | None = None,
    _started: float | None = None,
) -> ExperimentReport:
    """run_experiment for an already-loaded corpus."""
    started = time.perf_counter() if _started is None else _started

    with _stage("preprocess"):
        token_cache = {
            pair.id: (
                preprocess(pair.text, stores.prep),
                preprocess(pair.hypothesis, stores.prep),
            )
            for pair in pairs
        }

    with _stage("split"):
        split = split_corpus(pairs, ratio=train_ratio, seed=seed)

    with _stage("features"):
        train_set = extract_dataset(list(split.train), token_cache, feature_set, stores)
        test_set = extract_dataset(list(split.test), token_cache, feature_set, stores)

    with _stage("train"):
        models = learners.fit_all(train_set, params, seed=seed)

    with _stage("evaluate"):
        truths = list(test_set.labels)
        predictions = {
            name: models[name].predict_batch(test_set.features)
            for name in LEARNER_ORDER
        }
        predictions[ENSEMBLE_NAME] = [
            resolve_votes([predictions[name][i] for name in LEARNER_ORDER])
            for i in range(len(truths))
        ]
        confusions = {
            name: ConfusionMatrix.from_predictions(truths, preds)
            for name, preds in predictions.items()
        }
        accuracies = {name: accuracy(matrix) for name, matrix in confusions.items()}

    with _stage("report"):
        all_tokens = [t for pair_tokens in token_cache.values() for t in pair_tokens]
        word_info = _store_info(stores.word_store, all_tokens)
        sts_info = (
            _store_info(stores.sts_store, all_tokens)
            if stores.sts_store is not None
            else None
        )

    return ExperimentReport(
        config=feature_set,
        seed=seed,
        train_ratio=train_ratio,
        train_size=len(split.train),
        test_size=len(split.test),
        accuracies=accuracies,
        confusions=confusions,
        word_store=word_info,
        sts_store=sts_info,
        elapsed_seconds=time.perf_counter() - started,
    )

