"""Loading, validation and train/test splitting of the SICK-RTE corpus."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

import numpy as np


class CorpusError(Exception):
    """Raised for unusable corpus files or invalid split parameters."""


class RowError(CorpusError):
    """Raised for a defective data row; carries the 1-based file line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EntailmentLabel(enum.Enum):
    NEUTRAL = "Neutral"
    ENTAILMENT = "Entailment"
    CONTRADICTION = "Contradiction"

    @classmethod
    def parse(cls, raw: str) -> "EntailmentLabel":
        try:
            return _LABEL_BY_NAME[raw.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown entailment label {raw!r}") from None


_LABEL_BY_NAME = {label.value.lower(): label for label in EntailmentLabel}

# Canonical label order used everywhere a deterministic ordering is needed
# (confusion matrices, tie-breaking, report rows).
LABEL_ORDER = (
    EntailmentLabel.NEUTRAL,
    EntailmentLabel.ENTAILMENT,
    EntailmentLabel.CONTRADICTION,
)


@dataclass(frozen=True)
class LabeledPair:
    """One text-hypothesis pair with its gold entailment relation."""

    id: str
    text: str
    hypothesis: str
    label: EntailmentLabel


@dataclass(frozen=True)
class ColumnMap:
    """Header names of the columns we read; extra columns are ignored."""

    id: str = "pair_ID"
    text: str = "sentence_A"
    hypothesis: str = "sentence_B"
    label: str = "entailment_judgment"


@dataclass(frozen=True)
class SplitCorpus:
    train: tuple[LabeledPair, ...]
    test: tuple[LabeledPair, ...]
    seed: int


def load_corpus(path: str, columns: ColumnMap | None = None) -> list[LabeledPair]:
    """Read a tab-separated corpus file with a header row.

    Returns one LabeledPair per data row in file order.  Raises CorpusError
    when a configured column is missing or the file has no data rows, and
    RowError (with the file line number) for rows with empty sentences,
    unparseable labels, or duplicate ids.
    """
    columns = columns or ColumnMap()
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, delimiter="\t")
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: empty file") from None
        index = {name.strip(): i for i, name in enumerate(header)}
        for col in (columns.id, columns.text, columns.hypothesis, columns.label):
            if col not in index:
                raise CorpusError(
                    f"{path}: missing column {col!r} (header has {sorted(index)})"
                )

        pairs: list[LabeledPair] = []
        seen_ids: set[str] = set()
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue  # trailing blank line
            if len(row) <= max(index[c] for c in
                               (columns.id, columns.text, columns.hypothesis, columns.label)):
                raise RowError(line_no, f"expected {len(header)} columns, got {len(row)}")
            pair_id = row[index[columns.id]].strip()
            text = row[index[columns.text]].strip()
            hyp = row[index[columns.hypothesis]].strip()
            raw_label = row[index[columns.label]]
            if not text or not hyp:
                raise RowError(line_no, "empty sentence after trimming")
            if pair_id in seen_ids:
                raise RowError(line_no, f"duplicate pair id {pair_id!r}")
            seen_ids.add(pair_id)
            try:
                label = EntailmentLabel.parse(raw_label)
            except ValueError as exc:
                raise RowError(line_no, str(exc)) from None
            pairs.append(LabeledPair(pair_id, text, hyp, label))

    if not pairs:
        raise CorpusError(f"{path}: no data rows")
    return pairs


def label_counts(pairs: list[LabeledPair]) -> dict[EntailmentLabel, int]:
    counts = {label: 0 for label in LABEL_ORDER}
    for pair in pairs:
        counts[pair.label] += 1
    return counts


def split_corpus(
    pairs: list[LabeledPair], ratio: float = 0.75, seed: int = 42
) -> SplitCorpus:
    """Uniformly shuffle with the given seed and take the prefix as train.

    The train size is round-half-up of ratio * N, so the partition size can
    differ by one from floor rounding on odd corpora.
    """
    if not 0.0 < ratio < 1.0:
        raise CorpusError(f"train ratio must be in (0, 1), got {ratio}")
    if len(pairs) < 2:
        raise CorpusError(f"need at least 2 pairs to split, got {len(pairs)}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(pairs))
    n_train = int(math.floor(ratio * len(pairs) + 0.5))
    shuffled = [pairs[i] for i in order]
    return SplitCorpus(
        train=tuple(shuffled[:n_train]),
        test=tuple(shuffled[n_train:]),
        seed=seed,
    )
