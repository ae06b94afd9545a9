import json
import os

import pytest

from entailkit.cli import main

from synthdata import write_corpus, write_store


@pytest.fixture(scope="module")
def cli_env(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    corpus = tmp / "corpus.tsv"
    store = tmp / "vectors.txt"
    write_corpus(corpus, n_per_class=8, seed=5)
    write_store(store)
    return {"corpus": str(corpus), "store": str(store), "dir": tmp}


class TestPrepare:
    def test_stats_and_vocab(self, cli_env, tmp_path, capsys):
        vocab_out = tmp_path / "vocab.txt"
        code = main(
            ["prepare", "--data", cli_env["corpus"], "--vocab-out", str(vocab_out)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "pairs: 24" in out
        assert "Neutral: 8" in out
        words = vocab_out.read_text().split()
        assert words == sorted(words)
        assert all(w == w.lower() for w in words)

    def test_missing_file(self, capsys):
        assert main(["prepare", "--data", "/missing.tsv"]) == 1
        assert "error" in capsys.readouterr().err


class TestRepr:
    def test_thresholded(self, cli_env, capsys):
        code = main(
            [
                "repr",
                "--sentence",
                "Tarn brev quol.",
                "--strategy",
                "thr",
                "--embeddings",
                cli_env["store"],
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "in_vocab_count: 3" in out
        assert "values[:8]" in out

    def test_plain(self, cli_env, capsys):
        code = main(
            [
                "repr",
                "--sentence",
                "Tarn unknownword.",
                "--strategy",
                "plain",
                "--embeddings",
                cli_env["store"],
            ]
        )
        assert code == 0
        assert "in_vocab_count: 1" in capsys.readouterr().out


class TestFeaturesDump:
    def test_csv_schema_and_rows(self, cli_env, tmp_path):
        out = tmp_path / "features.csv"
        code = main(
            [
                "features",
                "--data",
                cli_env["corpus"],
                "--embeddings",
                cli_env["store"],
                "--set",
                "hand-thr",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "avg_emdv,bow,jac,sts,label"
        assert len(lines) == 25
        first = lines[1].split(",")
        assert first[-1] in ("Neutral", "Entailment", "Contradiction")
        assert all(float(v) is not None for v in first[:-1])

    def test_emdv_set_width(self, cli_env, tmp_path):
        out = tmp_path / "emdv.csv"
        main(
            [
                "features",
                "--data",
                cli_env["corpus"],
                "--embeddings",
                cli_env["store"],
                "--set",
                "emdv-plain",
                "--out",
                str(out),
            ]
        )
        header = out.read_text().split("\n")[0].split(",")
        assert header[0] == "emdv_0"
        assert len(header) == 8 + 1


class TestExperiment:
    def run(self, cli_env, out_dir, *extra):
        return main(
            [
                "experiment",
                "--data",
                cli_env["corpus"],
                "--embeddings",
                cli_env["store"],
                "--out",
                str(out_dir),
                "--seed",
                "42",
                *extra,
            ]
        )

    def test_single_config(self, cli_env, tmp_path, capsys):
        code = self.run(cli_env, tmp_path / "out", "--config", "hand-thr")
        assert code == 0
        report_path = tmp_path / "out" / "hand-thr" / "report.json"
        payload = json.loads(report_path.read_text())
        assert payload["config"] == "hand-thr"
        assert payload["seed"] == 42
        assert set(payload["learners"]) == {
            "svm_rbf", "knn", "random_forest", "gaussian_nb", "ensemble",
        }
        assert (tmp_path / "out" / "hand-thr" / "report.txt").exists()

    def test_all_configs(self, cli_env, tmp_path):
        code = self.run(cli_env, tmp_path / "all", "--config", "all")
        assert code == 0
        for config in ("emdv-thr", "emdv-plain", "hand-thr", "hand-plain"):
            assert (tmp_path / "all" / config / "report.json").exists()

    def test_bad_ratio_rejected(self, cli_env, tmp_path, capsys):
        code = self.run(
            cli_env, tmp_path / "bad", "--config", "hand-thr", "--train-ratio", "1.5"
        )
        assert code == 1
        assert "ratio" in capsys.readouterr().err

    def test_unknown_flag_exits_2(self, cli_env, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            self.run(cli_env, tmp_path / "x", "--frobnicate")
        assert excinfo.value.code == 2

    def test_learner_config(self, cli_env, tmp_path):
        conf = tmp_path / "params.conf"
        conf.write_text("rf.trees = 5\nknn.k = 3\n")
        code = self.run(
            cli_env,
            tmp_path / "cfg",
            "--config",
            "hand-thr",
            "--learner-config",
            str(conf),
        )
        assert code == 0

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0


class TestAtomicWrites:
    def test_no_temp_files_left(self, cli_env, tmp_path):
        out = tmp_path / "atomic"
        assert self.run_ok(cli_env, out)
        leftovers = [p for p in os.listdir(out / "hand-thr") if ".tmp." in p]
        assert leftovers == []

    def run_ok(self, cli_env, out):
        return (
            main(
                [
                    "experiment",
                    "--data",
                    cli_env["corpus"],
                    "--embeddings",
                    cli_env["store"],
                    "--config",
                    "hand-thr",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
