"""Textual entailment recognition toolkit.

Pipeline: preprocess sentence pairs, build sentence vectors (thresholded
accumulation or plain averaging over word embeddings), extract distance
and similarity features, train four classical classifiers, and combine
them by majority vote.
"""

from .corpus import (
    ColumnMap,
    EntailmentLabel,
    LABEL_ORDER,
    LabeledPair,
    SplitCorpus,
    load_corpus,
    split_corpus,
)
from .embedstore import EmbeddingStore, load_embeddings
from .features import FeatureSet, FeatureVector, StoreBundle, assemble
from .semrep import SentenceVector, Strategy, represent_plain, represent_thresholded
from .textprep import PrepConfig, lemmatize, preprocess

__all__ = [
    "ColumnMap",
    "EmbeddingStore",
    "EntailmentLabel",
    "FeatureSet",
    "FeatureVector",
    "LABEL_ORDER",
    "LabeledPair",
    "PrepConfig",
    "SentenceVector",
    "SplitCorpus",
    "StoreBundle",
    "Strategy",
    "assemble",
    "lemmatize",
    "load_corpus",
    "load_embeddings",
    "preprocess",
    "represent_plain",
    "represent_thresholded",
    "split_corpus",
]
