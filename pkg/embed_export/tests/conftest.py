import pytest

from encoderstub import build_tiny_bert


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("model") / "tiny-bert"
    return build_tiny_bert(
        path,
        words=["dog", "cat", "ball", "tree", "play", "run"],
        hidden_size=16,
        pieces=["##ing", "##s"],
    )
