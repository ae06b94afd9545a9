"""Sentence preprocessing: lowercase, punctuation stripping, stopword
removal with negation protection, and table-driven lemmatization.

The pipeline is deliberately resource-light: the stopword list and the
lemma table ship with the package as plain text files and can be replaced
from the command line. Negation words are never removed regardless of the
active stopword list, since they flip entailment relations.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

TokenList = list[str]

# Words that must survive stopword removal; "n't" is the detached clitic
# spelling and is mapped to "not" by the shipped lemma table.
NEGATION_WORDS = frozenset({"no", "not", "nor", "never", "n't", "cannot"})

_NT_CLITIC = re.compile(r"(?<=[a-z])n[''’]t\b")
_APOSTROPHES = re.compile(r"[''’]")


def _load_lines(name: str) -> list[str]:
    text = resources.files("entailkit.data").joinpath(name).read_text("utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return frozenset(_load_lines("stopwords.txt"))


@lru_cache(maxsize=1)
def default_lemmas() -> dict[str, str]:
    table: dict[str, str] = {}
    for line in _load_lines("lemmas.tsv"):
        surface, _, lemma = line.partition("\t")
        table[surface] = lemma
    return table


def load_stopwords(path: str) -> frozenset[str]:
    """Read a stopword file, one word per line."""
    with open(path, "r", encoding="utf-8") as handle:
        return frozenset(w.strip().lower() for w in handle if w.strip())


def load_lemmas(path: str) -> dict[str, str]:
    """Read a lemma file, one "surface<TAB>lemma" entry per line."""
    table: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            surface, sep, lemma = line.partition("\t")
            if not sep or not lemma.strip():
                raise ValueError(f"malformed lemma entry {line!r}")
            table[surface.strip().lower()] = lemma.strip().lower()
    return table


@dataclass
class PrepConfig:
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    lemmas: dict[str, str] = field(default_factory=default_lemmas)
    negations: frozenset[str] = NEGATION_WORDS


def _strippable(ch: str) -> bool:
    # Punctuation plus symbol codepoints; both break words.
    return unicodedata.category(ch)[0] in ("P", "S")


def lemmatize(token: str, lemmas: dict[str, str] | None = None) -> str:
    """Return the token's base form from the lemma table, or the token itself."""
    table = default_lemmas() if lemmas is None else lemmas
    return table.get(token, token)


def preprocess(sentence: str, config: PrepConfig | None = None) -> TokenList:
    """Turn a raw sentence into a list of lowercase content tokens.

    Stage order is fixed: lowercase, strip punctuation (each punctuation or
    symbol codepoint becomes a space, with "n't" detached as its own token
    first), whitespace tokenize, drop stopwords (negations always kept),
    lemmatize. Degenerate input yields an empty list.
    """
    cfg = config or PrepConfig()
    lowered = sentence.lower()
    lowered = _NT_CLITIC.sub(" n't", lowered)
    chars = []
    for ch in lowered:
        if ch in "'’" or not _strippable(ch):
            chars.append(ch)
        else:
            chars.append(" ")
    tokens: list[str] = []
    for raw in "".join(chars).split():
        if raw in ("n't", "n’t"):
            tokens.append("n't")
            continue
        # any remaining apostrophe is a clitic boundary: dog's -> dog s
        tokens.extend(p for p in _APOSTROPHES.split(raw) if p)
    kept = [
        tok for tok in tokens
        if tok in cfg.negations or tok not in cfg.stopwords
    ]
    return [lemmatize(tok, cfg.lemmas) for tok in kept]
