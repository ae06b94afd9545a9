"""Command-line entry point with prepare / repr / features / experiment
subcommands. Each pipeline stage is independently inspectable."""

from __future__ import annotations

import argparse
import os
import sys
from importlib import metadata

import numpy as np

from .corpus import ColumnMap, CorpusError, label_counts, load_corpus
from .embedstore import EmbeddingError, load_embeddings, load_vocab_filter
from .evalharness import HarnessError, run_experiment_pairs
from .features import FeatureSet, StoreBundle, assemble_tokens
from .learners import Hyperparams, LearnerError, load_hyperparams
from .semrep import Strategy, represent
from .textprep import PrepConfig, load_lemmas, load_stopwords, preprocess


def _version() -> str:
    try:
        return metadata.version("entailkit")
    except metadata.PackageNotFoundError:
        return "0.0.0-dev"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def _add_corpus_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="corpus TSV path")
    parser.add_argument("--col-id", default="pair_ID", help="id column name")
    parser.add_argument("--col-text", default="sentence_A", help="text column name")
    parser.add_argument("--col-hyp", default="sentence_B", help="hypothesis column name")
    parser.add_argument(
        "--col-label", default="entailment_judgment", help="label column name"
    )


def _add_prep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stopwords", help="stopword file, one word per line")
    parser.add_argument("--lemmas", help="lemma file, surface<TAB>lemma per line")


def _add_embedding_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--embeddings", required=required, help="embedding file")
    parser.add_argument(
        "--embeddings-format",
        choices=("bin", "txt", "auto"),
        default="auto",
        help="embedding file format (auto: .bin suffix means binary)",
    )
    parser.add_argument(
        "--vocab-filter",
        help="word list restricting which embeddings are kept "
        "(default for corpus commands: the corpus vocabulary)",
    )
    parser.add_argument("--sts-embeddings", help="separate store for the STS feature")
    parser.add_argument(
        "--sts-embeddings-format",
        choices=("bin", "txt", "auto"),
        default="auto",
        help="format of --sts-embeddings",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entailkit",
        description="Textual entailment experiments on SICK-style corpora.",
    )
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    prepare = sub.add_parser("prepare", help="corpus statistics and vocabulary dump")
    _add_corpus_flags(prepare)
    _add_prep_flags(prepare)
    prepare.add_argument("--vocab-out", help="write the preprocessed vocabulary here")
    prepare.set_defaults(handler=cmd_prepare)

    repr_cmd = sub.add_parser("repr", help="debug one sentence representation")
    repr_cmd.add_argument("--sentence", required=True)
    repr_cmd.add_argument("--strategy", choices=("thr", "plain"), default="thr")
    _add_prep_flags(repr_cmd)
    _add_embedding_flags(repr_cmd)
    repr_cmd.set_defaults(handler=cmd_repr)

    features_cmd = sub.add_parser("features", help="dump per-pair features as CSV")
    _add_corpus_flags(features_cmd)
    _add_prep_flags(features_cmd)
    _add_embedding_flags(features_cmd)
    features_cmd.add_argument(
        "--set",
        dest="feature_set",
        choices=[fs.value for fs in FeatureSet],
        default=FeatureSet.HAND_THR.value,
    )
    features_cmd.add_argument("--out", required=True, help="output CSV path")
    features_cmd.set_defaults(handler=cmd_features)

    experiment = sub.add_parser("experiment", help="run experiment configurations")
    _add_corpus_flags(experiment)
    _add_prep_flags(experiment)
    _add_embedding_flags(experiment)
    experiment.add_argument(
        "--config",
        choices=[*(fs.value for fs in FeatureSet), "all"],
        default=FeatureSet.HAND_THR.value,
    )
    experiment.add_argument("--seed", type=int, default=42)
    experiment.add_argument("--train-ratio", type=float, default=0.75)
    experiment.add_argument("--learner-config", help="hyperparameter file")
    experiment.add_argument("--out", required=True, help="output directory")
    experiment.set_defaults(handler=cmd_experiment)

    return parser


def _prep_config(args) -> PrepConfig:
    cfg = PrepConfig()
    if args.stopwords:
        cfg.stopwords = load_stopwords(args.stopwords)
    if args.lemmas:
        cfg.lemmas = load_lemmas(args.lemmas)
    return cfg


def _column_map(args) -> ColumnMap:
    return ColumnMap(
        id=args.col_id, text=args.col_text, hypothesis=args.col_hyp, label=args.col_label
    )


def _resolve_format(path: str, declared: str) -> str:
    if declared != "auto":
        return declared
    return "bin" if path.endswith(".bin") else "txt"


def _load_tokenized_corpus(args, prep: PrepConfig):
    pairs = load_corpus(args.data, _column_map(args))
    tokens = {
        pair.id: (preprocess(pair.text, prep), preprocess(pair.hypothesis, prep))
        for pair in pairs
    }
    return pairs, tokens


def _corpus_vocab(tokens: dict) -> set[str]:
    vocab: set[str] = set()
    for t_tokens, h_tokens in tokens.values():
        vocab.update(t_tokens)
        vocab.update(h_tokens)
    return vocab


def _load_stores(args, prep: PrepConfig, corpus_vocab: set[str] | None) -> StoreBundle:
    if args.vocab_filter:
        vocab_filter = load_vocab_filter(args.vocab_filter)
    else:
        vocab_filter = corpus_vocab  # None for corpus-free commands
    word_store = load_embeddings(
        args.embeddings,
        _resolve_format(args.embeddings, args.embeddings_format),
        vocab_filter,
    )
    sts_store = None
    if args.sts_embeddings:
        sts_store = load_embeddings(
            args.sts_embeddings,
            _resolve_format(args.sts_embeddings, args.sts_embeddings_format),
            vocab_filter,
        )
    return StoreBundle(word_store=word_store, sts_store=sts_store, prep=prep)


def cmd_prepare(args) -> int:
    prep = _prep_config(args)
    pairs, tokens = _load_tokenized_corpus(args, prep)
    counts = label_counts(pairs)
    vocab = sorted(_corpus_vocab(tokens))
    print(f"pairs: {len(pairs)}")
    for label, count in counts.items():
        print(f"  {label.value}: {count}")
    print(f"vocabulary: {len(vocab)} distinct tokens")
    if args.vocab_out:
        atomic_write_text(args.vocab_out, "".join(w + "\n" for w in vocab))
        print(f"wrote {args.vocab_out}")
    return 0


def cmd_repr(args) -> int:
    prep = _prep_config(args)
    stores = _load_stores(args, prep, corpus_vocab=None)
    tokens = preprocess(args.sentence, prep)
    strategy = Strategy.THRESHOLDED if args.strategy == "thr" else Strategy.PLAIN_SUM
    sentence_vec = represent(tokens, stores.word_store, strategy)
    head = ", ".join(f"{v:.6g}" for v in sentence_vec.values[:8])
    print(f"tokens: {tokens}")
    print(f"in_vocab_count: {sentence_vec.in_vocab_count}")
    print(f"values[:8]: [{head}]")
    return 0


def cmd_features(args) -> int:
    prep = _prep_config(args)
    pairs, tokens = _load_tokenized_corpus(args, prep)
    stores = _load_stores(args, prep, _corpus_vocab(tokens))
    feature_set = FeatureSet(args.feature_set)
    lines = []
    header: tuple[str, ...] | None = None
    for pair in pairs:
        t_tokens, h_tokens = tokens[pair.id]
        fv = assemble_tokens(t_tokens, h_tokens, feature_set, stores)
        if header is None:
            header = fv.schema
            lines.append(",".join([*header, "label"]))
        lines.append(
            ",".join([*(f"{v:.9g}" for v in fv.values), pair.label.value])
        )
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    print(f"wrote {len(pairs)} rows to {args.out}")
    return 0


def cmd_experiment(args) -> int:
    if not 0.0 < args.train_ratio < 1.0:
        raise CorpusError(f"train ratio must be in (0, 1), got {args.train_ratio}")
    if args.seed < 0:
        raise CorpusError(f"seed must be non-negative, got {args.seed}")
    prep = _prep_config(args)
    params = load_hyperparams(args.learner_config) if args.learner_config else Hyperparams()
    pairs, tokens = _load_tokenized_corpus(args, prep)
    stores = _load_stores(args, prep, _corpus_vocab(tokens))
    configs = (
        list(FeatureSet) if args.config == "all" else [FeatureSet(args.config)]
    )
    os.makedirs(args.out, exist_ok=True)
    for feature_set in configs:
        report = run_experiment_pairs(
            pairs,
            feature_set,
            stores,
            seed=args.seed,
            train_ratio=args.train_ratio,
            params=params,
        )
        config_dir = os.path.join(args.out, feature_set.value)
        os.makedirs(config_dir, exist_ok=True)
        atomic_write_text(os.path.join(config_dir, "report.json"), report.to_json())
        atomic_write_text(os.path.join(config_dir, "report.txt"), report.to_text())
        ensemble_acc = report.accuracies["ensemble"]
        print(
            f"{feature_set.value}: ensemble accuracy {ensemble_acc:.4f} "
            f"({report.elapsed_seconds:.1f} s) -> {config_dir}"
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (CorpusError, EmbeddingError, LearnerError, HarnessError, OSError) as exc:
        print(f"entailkit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
