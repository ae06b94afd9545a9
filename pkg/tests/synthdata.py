"""Synthetic corpora and embedding stores for tests.

The toy vocabulary avoids stopwords and lemma-table surfaces so tokens
pass through preprocessing unchanged, which keeps fixtures predictable.
"""

from __future__ import annotations

import numpy as np

TOY_WORDS = [
    "tarn", "brev", "quol", "mizzen", "prand", "skell", "vorn", "glimt",
    "harsk", "jubel", "krint", "lomer", "nivex", "ostrel", "pellick", "quarv",
    "rellon", "senth", "tovrak", "ulmor", "vintel", "wexal", "yarbel", "zelkin",
    "ambrel", "bostrik", "cavlon", "dernim", "elvost", "fimbrel", "gorvan",
    "hestler", "ivrent", "jalkon", "kormel", "lastrev", "mavrin", "norvel",
]


def write_store(path, words=None, dim: int = 8, seed: int = 7) -> None:
    """Text-w2v store with seeded normal vectors for the toy vocabulary."""
    words = TOY_WORDS if words is None else words
    rng = np.random.default_rng(seed)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{len(words)} {dim}\n")
        for word in words:
            vec = rng.normal(size=dim)
            handle.write(word + " " + " ".join(f"{v:.9g}" for v in vec) + "\n")


def _sentence(words) -> str:
    return " ".join(words).capitalize() + "."


def write_corpus(path, n_per_class: int | tuple = 20, seed: int = 5) -> int:
    """TSV corpus with three structurally separated relation classes.

    ENTAILMENT pairs repeat the same sentence, NEUTRAL pairs share half
    their tokens, CONTRADICTION pairs use disjoint vocabulary halves.
    ``n_per_class`` is an int or an (entail, neutral, contradict) tuple.
    Returns the number of pairs written.
    """
    if isinstance(n_per_class, int):
        n_per_class = (n_per_class,) * 3
    rng = np.random.default_rng(seed)
    half = len(TOY_WORDS) // 2
    first, second = TOY_WORDS[:half], TOY_WORDS[half:]
    rows = []

    def sample(pool, k):
        return [pool[i] for i in rng.choice(len(pool), size=k, replace=False)]

    for i in range(max(n_per_class)):
        if i < n_per_class[0]:
            t_words = sample(TOY_WORDS, 4)
            rows.append((_sentence(t_words), _sentence(t_words), "ENTAILMENT"))

        if i < n_per_class[1]:
            shared = sample(first, 2)
            t_words = shared + sample(second, 2)
            h_words = shared + [w for w in sample(second, 3) if w not in t_words][:2]
            while len(h_words) < 4:
                extra = sample(second, 1)[0]
                if extra not in t_words and extra not in h_words:
                    h_words.append(extra)
            rows.append((_sentence(t_words), _sentence(h_words), "NEUTRAL"))

        if i < n_per_class[2]:
            rows.append(
                (_sentence(sample(first, 4)), _sentence(sample(second, 4)), "CONTRADICTION")
            )

    order = rng.permutation(len(rows))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("pair_ID\tsentence_A\tsentence_B\trelatedness_score\tentailment_judgment\n")
        for new_id, row_idx in enumerate(order, start=1):
            text, hyp, label = rows[row_idx]
            handle.write(f"{new_id}\t{text}\t{hyp}\t3.5\t{label}\n")
    return len(rows)
