import numpy as np
import pytest

from entailkit.embedstore import EmbeddingStore, load_embeddings

from synthdata import write_corpus, write_store


@pytest.fixture(scope="session")
def toy_store_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("stores") / "toy.txt"
    write_store(path)
    return str(path)


@pytest.fixture(scope="session")
def toy_store(toy_store_path) -> EmbeddingStore:
    return load_embeddings(toy_store_path, "txt")


@pytest.fixture(scope="session")
def synthetic_corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "synthetic.tsv"
    write_corpus(path, n_per_class=20, seed=5)
    return str(path)


def micro_store(vectors: dict[str, list[float]]) -> EmbeddingStore:
    dim = len(next(iter(vectors.values())))
    return EmbeddingStore(
        dimension=dim,
        vocab={w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()},
        name="micro",
    )


@pytest.fixture
def abc_store() -> EmbeddingStore:
    return micro_store({"a": [1.0, 0.0], "b": [0.0, 1.0], "c": [1.0, 1.0]})
