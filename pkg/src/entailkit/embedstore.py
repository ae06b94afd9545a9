"""Word-embedding file parsing and lookup.

Two on-disk formats are supported:

* ``binary-w2v``: an ASCII header line ``"<vocab_size> <dim>\\n"`` followed
  by one entry per word: the word's bytes terminated by a single space,
  then ``dim`` little-endian IEEE-754 float32 values, optionally followed
  by a newline byte.
* ``text-w2v``: an optional ``"<vocab_size> <dim>"`` header line, then one
  ``"word v1 v2 ... vK"`` line per entry.

Vectors are widened to float64 at load time so that accumulating hundreds
of elements stays numerically stable. Keys are case-folded to lowercase;
on collision the vector seen last wins (logged).
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)


class EmbeddingError(Exception):
    """Raised for malformed or truncated embedding files."""


@dataclass
class EmbeddingStore:
    dimension: int
    vocab: dict[str, np.ndarray] = field(default_factory=dict)
    name: str = ""

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.vocab

    def lookup(self, word: str) -> np.ndarray | None:
        """Exact-match lookup on the case-folded key; None when absent."""
        return self.vocab.get(word.lower())

    def coverage(self, tokens: list[str]) -> float:
        """Fraction of tokens present in the store (1.0 for no tokens)."""
        if not tokens:
            return 1.0
        return sum(1 for t in tokens if t in self) / len(tokens)


def lookup(store: EmbeddingStore, word: str) -> np.ndarray | None:
    return store.lookup(word)


def _insert(vocab: dict[str, np.ndarray], word: str, vec: np.ndarray,
            where: str) -> None:
    key = word.lower()
    if key in vocab:
        logger.warning("duplicate word %r in %s: last one wins", key, where)
    vec.setflags(write=False)
    vocab[key] = vec


def load_embeddings(
    path: str,
    fmt: str = "txt",
    vocab_filter: set[str] | None = None,
) -> EmbeddingStore:
    """Parse an embedding file into an immutable store.

    ``fmt`` is ``"bin"`` (binary-w2v) or ``"txt"`` (text-w2v). When
    ``vocab_filter`` is given, only words in it (compared lowercase) are
    kept; all entries are still validated.
    """
    if fmt == "bin":
        return _load_binary(path, vocab_filter)
    if fmt == "txt":
        return _load_text(path, vocab_filter)
    raise ValueError(f"unknown embedding format {fmt!r} (expected 'bin' or 'txt')")


class _ByteStream:
    """Buffered reader for the binary format: whole files arrive in large
    chunks but words and vectors are consumed piecemeal."""

    def __init__(self, handle, chunk_size: int = 1 << 20):
        self._handle = handle
        self._chunk_size = chunk_size
        self._buf = b""
        self._off = 0

    def position(self) -> int:
        return self._handle.tell() - (len(self._buf) - self._off)

    def read_word(self) -> bytes | None:
        """Bytes up to a single space; None on clean end of file."""
        parts = []
        while True:
            cut = self._buf.find(b" ", self._off)
            if cut >= 0:
                parts.append(self._buf[self._off:cut])
                self._off = cut + 1
                break
            parts.append(self._buf[self._off:])
            self._buf = self._handle.read(self._chunk_size)
            self._off = 0
            if not self._buf:
                leftover = b"".join(parts)
                if leftover.strip(b"\n"):
                    return leftover  # partial word at EOF; caller errors out
                return None
        # a newline may be left over from the previous entry
        return b"".join(parts).lstrip(b"\n")

    def read_exact(self, n: int) -> bytes:
        parts = []
        have = 0
        while have < n:
            avail = len(self._buf) - self._off
            if avail == 0:
                self._buf = self._handle.read(self._chunk_size)
                self._off = 0
                if not self._buf:
                    break
                continue
            take = min(avail, n - have)
            parts.append(self._buf[self._off:self._off + take])
            self._off += take
            have += take
        return b"".join(parts)


def _load_binary(path: str, vocab_filter: set[str] | None) -> EmbeddingStore:
    vocab: dict[str, np.ndarray] = {}
    with open(path, "rb") as handle:
        header = handle.readline()
        try:
            vocab_size, dim = (int(tok) for tok in header.split())
        except ValueError:
            raise EmbeddingError(
                f"{path}: malformed binary header {header[:40]!r}"
            ) from None
        if dim <= 0 or vocab_size < 0:
            raise EmbeddingError(f"{path}: invalid header dimensions {header!r}")
        vec_bytes = 4 * dim
        stream = _ByteStream(handle)
        for i in range(vocab_size):
            word_bytes = stream.read_word()
            if word_bytes is None:
                raise EmbeddingError(
                    f"{path}: truncated at byte {stream.position()} "
                    f"while reading word {i}"
                )
            payload = stream.read_exact(vec_bytes)
            if len(payload) != vec_bytes:
                raise EmbeddingError(
                    f"{path}: truncated vector for word {i} at byte "
                    f"{stream.position() - len(payload)}"
                )
            word = word_bytes.decode("utf-8", errors="replace")
            if vocab_filter is None or word.lower() in vocab_filter:
                vec = np.asarray(
                    struct.unpack(f"<{dim}f", payload), dtype=np.float64
                )
                _insert(vocab, word, vec, path)
    return EmbeddingStore(dimension=dim, vocab=vocab, name=path)


def _parse_text_header(first_line: str) -> tuple[int, int] | None:
    parts = first_line.split()
    if len(parts) == 2:
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            return None
    return None


def _load_text(path: str, vocab_filter: set[str] | None) -> EmbeddingStore:
    vocab: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as handle:
        numbered = enumerate(handle, start=1)
        try:
            _, first = next(numbered)
        except StopIteration:
            raise EmbeddingError(f"{path}: empty file") from None
        header = _parse_text_header(first)
        if header is not None:
            dim = header[1]
            if dim <= 0:
                raise EmbeddingError(f"{path}: invalid header dimension {dim}")
            rows = numbered
        else:
            rows = _chain_row((1, first), numbered)

        for line_no, line in rows:
            if not line.strip():
                continue
            parts = line.split()
            word, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise EmbeddingError(f"{path}: line {line_no}: no vector values")
            if len(values) != dim:
                raise EmbeddingError(
                    f"{path}: line {line_no}: expected {dim} values, "
                    f"got {len(values)}"
                )
            if vocab_filter is not None and word.lower() not in vocab_filter:
                continue
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError:
                raise EmbeddingError(
                    f"{path}: line {line_no}: non-numeric vector value"
                ) from None
            _insert(vocab, word, vec, path)
    if dim is None:
        raise EmbeddingError(f"{path}: no embedding rows")
    return EmbeddingStore(dimension=dim, vocab=vocab, name=path)


def _chain_row(head, rest):
    yield head
    yield from rest


def write_embeddings_text(store: EmbeddingStore, path: str) -> None:
    """Serialize a store to text-w2v with a header, 9 significant digits."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{len(store.vocab)} {store.dimension}\n")
        for word in store.vocab:
            values = " ".join(f"{v:.9g}" for v in store.vocab[word])
            handle.write(f"{word} {values}\n")


def load_vocab_filter(path: str) -> set[str]:
    """Read a word list (one per line) used to restrict loading."""
    with open(path, "r", encoding="utf-8") as handle:
        return {w.strip().lower() for w in handle if w.strip()}
