"""Export static per-word vectors from a pretrained encoder.

For each vocabulary word the word is split into subword tokens, the
encoder's input-embedding-layer rows for those subwords are averaged,
and the result is written as one text-w2v line. Using the embedding
layer (not contextual forward passes) keeps the export corpus-
independent and deterministic. Words whose subwords are all unknown are
skipped and counted.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np


class ExportError(Exception):
    """Raised when the model cannot be loaded or the export fails."""


@dataclass
class ExportManifest:
    model: str
    vocab_path: str
    output_path: str
    dimension: int
    words_exported: int
    words_skipped: int
    subword_aggregation: str = "mean"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def read_vocab(path: str) -> list[str]:
    """One lowercase word per line; blank lines ignored, order kept."""
    words: list[str] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            word = line.strip().lower()
            if word and word not in seen:
                seen.add(word)
                words.append(word)
    return words


def _load_encoder(model_id: str):
    try:
        from transformers import AutoModel, AutoTokenizer
    except ImportError as exc:  # pragma: no cover
        raise ExportError(f"transformers is not installed: {exc}") from exc
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise ExportError(
            f"cannot load model {model_id!r}: {exc}. Pass a local model "
            "directory or a hub id that is available offline."
        ) from exc
    return tokenizer, model


def export_vocab_vectors(
    vocab_path: str,
    model_id: str,
    output_path: str,
    manifest_path: str | None = None,
) -> ExportManifest:
    """Write a text-w2v file for the vocabulary; returns the manifest."""
    import torch

    words = read_vocab(vocab_path)
    tokenizer, model = _load_encoder(model_id)
    with torch.no_grad():
        table = model.get_input_embeddings().weight.detach().cpu().numpy()
    table = table.astype(np.float64)
    unk_id = tokenizer.unk_token_id

    rows: list[tuple[str, np.ndarray]] = []
    skipped = 0
    for word in words:
        ids = tokenizer.encode(word, add_special_tokens=False)
        known = [i for i in ids if i != unk_id]
        if not known:
            skipped += 1
            continue
        rows.append((word, table[known].mean(axis=0)))

    dimension = table.shape[1]
    with open(output_path, "w", encoding="utf-8") as handle:
        handle.write(f"{len(rows)} {dimension}\n")
        for word, vec in rows:
            handle.write(word + " " + " ".join(f"{v:.9g}" for v in vec) + "\n")

    manifest = ExportManifest(
        model=model_id,
        vocab_path=str(vocab_path),
        output_path=str(output_path),
        dimension=dimension,
        words_exported=len(rows),
        words_skipped=skipped,
    )
    if manifest_path:
        with open(manifest_path, "w", encoding="utf-8") as handle:
            handle.write(manifest.to_json())
    return manifest
