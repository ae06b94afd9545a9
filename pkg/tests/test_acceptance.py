"""Acceptance suite.

Each test is one acceptance criterion and prints one PASS line on
success (run with ``pytest -v`` or ``-s`` to see them). Oracle-based
criteria run unconditionally. Criteria that reproduce published numbers
need the real inputs, which are not redistributable with this package;
point these environment variables at local copies to enable them:

    ENTAILKIT_SICK   SICK corpus TSV (pair_ID / sentence_A / sentence_B /
                     entailment_judgment columns)
    ENTAILKIT_W2V    word2vec file trained on Google News (300-d)
    ENTAILKIT_W2V_FORMAT  "bin" (default) or "txt"
    ENTAILKIT_STS    optional 768-d exported store for the STS feature
                     (falls back to ENTAILKIT_W2V)

Without them those tests SKIP: they are reported as unverified here, not
as passing.
"""

import json
import math
import os
import time

import numpy as np
import pytest

from entailkit.corpus import EntailmentLabel, load_corpus
from entailkit.embedstore import EmbeddingStore, load_embeddings
from entailkit.evalharness import run_experiment_pairs
from entailkit.features import (
    FeatureSet,
    StoreBundle,
    avg_emdv,
    bow_cosine,
    cosine,
    emdv,
    jaccard,
    sts,
)
from entailkit.learners import Dataset, GaussianNbClassifier, KnnClassifier, SvmRbfClassifier
from entailkit.semrep import represent_thresholded
from entailkit.textprep import preprocess

from synthdata import write_corpus, write_store
from test_semrep import oracle_thresholded, store_of, toy_vocabulary

N, E, C = (
    EntailmentLabel.NEUTRAL,
    EntailmentLabel.ENTAILMENT,
    EntailmentLabel.CONTRADICTION,
)

SWEEP_SEEDS = (42, 43, 44)


def _passed(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


def _require_env(*names: str) -> list[str]:
    values = []
    for name in names:
        value = os.environ.get(name, "").strip()
        if not value:
            pytest.skip(
                f"criterion needs real data: set {name} (see module docstring); "
                "skipped, not verified"
            )
        values.append(value)
    return values


# --- always-on criteria ----------------------------------------------------


class TestBowOracle:
    def test_worked_example_cosine(self):
        t_vec = np.array([1, 0, 2, 0, 4, 0, 0, 0, 1, 1], dtype=np.float64)
        h_vec = np.array([0, 2, 0, 1, 4, 3, 0, 1, 2, 1], dtype=np.float64)
        expected = 19.0 / (math.sqrt(23.0) * 6.0)
        assert cosine(t_vec, h_vec) == pytest.approx(expected, abs=1e-6)
        # same numbers reached through the token-list interface
        t = ["a"] + ["c"] * 2 + ["e"] * 4 + ["i", "j"]
        h = ["b"] * 2 + ["d"] + ["e"] * 4 + ["f"] * 3 + ["h"] + ["i"] * 2 + ["j"]
        assert bow_cosine(t, h) == pytest.approx(expected, abs=1e-6)
        _passed("bow-oracle")


class TestAlgorithmOneOracle:
    def test_hand_traces_match_scalar_oracle(self):
        cases = [
            ({"w1": [1.0, 2.0, 3.0], "w2": [-4.0, 0.0, 1.0]}, [-3.0, 2.0, 4.0]),
            ({"w1": [1.0, 2.0, 3.0], "w2": [4.0, 0.0, 0.0]}, [1.0, 2.0, 3.0]),
        ]
        for vocab, expected in cases:
            result = represent_thresholded(["w1", "w2"], store_of(vocab))
            oracle, _ = oracle_thresholded(["w1", "w2"], vocab)
            assert np.max(np.abs(result.values - np.asarray(expected))) <= 1e-12
            assert np.max(np.abs(result.values - np.asarray(oracle))) <= 1e-12

    def test_exhaustive_toy_store_agreement(self):
        import itertools

        total = 0
        for dim in (1, 2, 3, 4):
            vocab = toy_vocabulary(dim)
            store = store_of(vocab)
            words = [*vocab.keys(), "oov"]
            for length in range(0, 4):
                for tokens in itertools.product(words, repeat=length):
                    got = represent_thresholded(list(tokens), store).values
                    expected, _ = oracle_thresholded(tokens, vocab)
                    assert np.max(np.abs(got - np.asarray(expected))) <= 1e-12
                    total += 1
        assert total == 4 * sum(6**n for n in range(4))
        _passed("algorithm1-oracle")


class TestFeatureProperties:
    N_CASES = 10_000

    def test_ten_thousand_randomized_cases(self):
        rng = np.random.default_rng(20240817)
        words = ["a", "b", "c", "d", "e", "f"]
        failures = 0
        for case in range(self.N_CASES):
            dim = int(rng.integers(1, 7))
            vocab = {
                w: rng.normal(size=dim) * float(rng.choice([0.1, 1.0, 10.0]))
                for w in words
                if rng.random() > 0.15
            }
            if rng.random() < 0.05:  # occasionally include a zero vector
                vocab["z"] = np.zeros(dim)
            store = EmbeddingStore(
                dimension=dim,
                vocab={w: np.asarray(v) for w, v in vocab.items()},
                name="prop",
            )
            pool = words + ["oov1", "z"]
            t = [pool[i] for i in rng.integers(0, len(pool), rng.integers(0, 7))]
            h = [pool[i] for i in rng.integers(0, len(pool), rng.integers(0, 7))]

            jac_th, jac_ht = jaccard(t, h), jaccard(h, t)
            bow_th, bow_ht = bow_cosine(t, h), bow_cosine(h, t)
            sts_th, sts_ht = sts(t, h, store), sts(h, t, store)
            ok = (
                jac_th == jac_ht
                and abs(bow_th - bow_ht) <= 1e-12
                and abs(sts_th - sts_ht) <= 1e-12
                and 0.0 <= jac_th <= 1.0
                and 0.0 <= bow_th <= 1.0 + 1e-12
                and -1.0 - 1e-12 <= sts_th <= 1.0 + 1e-12
            )

            u, v, w = rng.normal(size=(3, dim))
            ok = ok and np.allclose(emdv(u, v), -emdv(v, u), atol=1e-12)
            ok = ok and abs(avg_emdv(u, v) - avg_emdv(v, u)) <= 1e-12
            ok = ok and avg_emdv(u, v) >= 0.0
            ok = ok and avg_emdv(u, w) <= avg_emdv(u, v) + avg_emdv(v, w) + 1e-12

            if not t:
                ok = ok and bow_th == 0.0 and sts_th == 0.0
                if not h:
                    ok = ok and jac_th == 0.0
            if t and set(t) <= {"oov1"}:
                ok = ok and sts_th == 0.0
            failures += 0 if ok else 1
        assert failures == 0
        _passed("feature-properties-10k")


class TestClassifierOracles:
    def test_knn_matches_brute_force_on_500_queries(self):
        rng = np.random.default_rng(77)
        train_x = rng.normal(size=(200, 8))
        labels = [[N, E, C][int(i)] for i in rng.integers(0, 3, 200)]
        data = Dataset(
            features=train_x,
            labels=tuple(labels),
            schema=tuple(f"f{i}" for i in range(8)),
        )
        model = KnnClassifier.fit(data, k=5, scale=False)
        queries = rng.normal(size=(500, 8))

        def brute(q):
            dists = sorted(
                (math.dist(q, row), i) for i, row in enumerate(train_x.tolist())
            )
            nearest = [i for _, i in dists[:5]]
            votes: dict[EntailmentLabel, int] = {}
            for i in nearest:
                votes[labels[i]] = votes.get(labels[i], 0) + 1
            top = max(votes.values())
            tied = {lab for lab, count in votes.items() if count == top}
            for i in nearest:
                if labels[i] in tied:
                    return labels[i]

        expected = [brute(q) for q in queries.tolist()]
        assert model.predict_batch(queries) == expected
        _passed("knn-brute-force-500")

    def test_gaussian_nb_closed_form_posteriors(self):
        fixtures = [
            ([[0.0], [10.0]], [N, E]),
            ([[-3.0], [-1.0], [2.0], [4.0]], [N, N, C, C]),
        ]
        for rows, labels in fixtures:
            data = Dataset(
                features=np.asarray(rows),
                labels=tuple(labels),
                schema=("f0",),
            )
            model = GaussianNbClassifier.fit(data)
            x = np.asarray(rows, dtype=np.float64)
            eps = 1e-9 * float(x.var(axis=0).max())
            for query in (-5.0, 0.1, 1.0, 3.7, 12.0):
                expected = []
                for code in sorted({0 if l is N else (1 if l is E else 2) for l in labels}):
                    members = x[[i for i, l in enumerate(labels)
                                 if (0 if l is N else (1 if l is E else 2)) == code]]
                    mean = members.mean()
                    var = members.var() + eps
                    prior = len(members) / len(rows)
                    loglik = -0.5 * (
                        math.log(2 * math.pi * var) + (query - mean) ** 2 / var
                    )
                    expected.append(math.log(prior) + loglik)
                got = model.log_posteriors([query])
                assert got == pytest.approx(expected, abs=1e-9)
        _passed("gaussian-nb-closed-form")

    def test_smo_separable_fixture(self):
        rng = np.random.default_rng(17)
        a = rng.normal((-2.0, -2.0), 0.3, size=(10, 2))
        b = rng.normal((2.0, 2.0), 0.3, size=(10, 2))
        data = Dataset(
            features=np.vstack([a, b]),
            labels=tuple([N] * 10 + [E] * 10),
            schema=("f0", "f1"),
        )
        model = SvmRbfClassifier.fit(data, seed=0)
        assert model.train_accuracy(data) == 1.0
        assert float(model.kkt_violations().max()) <= 1e-3
        _passed("smo-separable-kkt")


class TestDeterminism:
    def test_config_all_twice_byte_identical(self, tmp_path):
        from entailkit.cli import main

        corpus = tmp_path / "corpus.tsv"
        store = tmp_path / "store.txt"
        write_corpus(corpus, n_per_class=20, seed=5)
        write_store(store)
        outputs = []
        for run in ("one", "two"):
            out = tmp_path / run
            code = main(
                [
                    "experiment",
                    "--data", str(corpus),
                    "--embeddings", str(store),
                    "--config", "all",
                    "--seed", "42",
                    "--out", str(out),
                ]
            )
            assert code == 0
            outputs.append(out)
        for config in ("emdv-thr", "emdv-plain", "hand-thr", "hand-plain"):
            first = (outputs[0] / config / "report.json").read_bytes()
            second = (outputs[1] / config / "report.json").read_bytes()
            assert first == second, f"report.json differs for {config}"
        _passed("determinism-config-all")


# --- criteria needing the published corpus and embeddings ------------------


def _real_store_bundle(sick_path: str):
    w2v_path = os.environ["ENTAILKIT_W2V"]
    w2v_format = os.environ.get("ENTAILKIT_W2V_FORMAT", "bin").strip() or "bin"
    pairs = load_corpus(sick_path)
    vocab: set[str] = set()
    for pair in pairs:
        vocab.update(preprocess(pair.text))
        vocab.update(preprocess(pair.hypothesis))
    word_store = load_embeddings(w2v_path, w2v_format, vocab_filter=vocab)
    sts_path = os.environ.get("ENTAILKIT_STS", "").strip()
    sts_store = (
        load_embeddings(sts_path, "txt", vocab_filter=vocab) if sts_path else None
    )
    return pairs, StoreBundle(word_store=word_store, sts_store=sts_store)


@pytest.fixture(scope="module")
def real_runs():
    """Run the four configurations over the seed sweep once, shared by the
    reproduction criteria."""
    sick_path, _ = _require_env("ENTAILKIT_SICK", "ENTAILKIT_W2V")
    started = time.perf_counter()
    pairs, stores = _real_store_bundle(sick_path)
    reports = {}
    for feature_set in FeatureSet:
        for seed in SWEEP_SEEDS:
            reports[(feature_set, seed)] = run_experiment_pairs(
                pairs, feature_set, stores, seed=seed
            )
    reports["elapsed"] = time.perf_counter() - started
    return reports


class TestCorpusIntegrity:
    def test_sick_counts_exact(self):
        (sick_path,) = _require_env("ENTAILKIT_SICK")
        started = time.perf_counter()
        pairs = load_corpus(sick_path)
        elapsed = time.perf_counter() - started
        assert len(pairs) == 9840
        counts = {label: 0 for label in (N, E, C)}
        for pair in pairs:
            counts[pair.label] += 1
        assert counts[N] == 5595
        assert counts[E] == 2821
        assert counts[C] == 1424
        assert elapsed < 5.0
        _passed("corpus-integrity")


def _mean_accuracy(reports, feature_set, learner) -> float:
    return float(
        np.mean([reports[(feature_set, s)].accuracies[learner] for s in SWEEP_SEEDS])
    )


class TestEmdvReproduction:
    def test_thresholded_beats_plain_per_learner(self, real_runs):
        for learner in ("svm_rbf", "knn", "random_forest", "gaussian_nb", "ensemble"):
            thr = _mean_accuracy(real_runs, FeatureSet.EMDV_THR, learner)
            plain = _mean_accuracy(real_runs, FeatureSet.EMDV_PLAIN, learner)
            assert thr - plain >= 0.03, (learner, thr, plain)
        knn_thr = _mean_accuracy(real_runs, FeatureSet.EMDV_THR, "knn")
        assert abs(knn_thr - 0.67) <= 0.05
        assert real_runs["elapsed"] < 900.0
        _passed("emdv-gap-reproduction")

    def test_plain_emdv_ensemble_rarely_predicts_contradiction(self, real_runs):
        fractions = [
            real_runs[(FeatureSet.EMDV_PLAIN, seed)]
            .confusions["ensemble"]
            .predicted_fraction(C)
            for seed in SWEEP_SEEDS
        ]
        assert float(np.mean(fractions)) <= 0.01
        _passed("contradiction-collapse")


class TestHandcraftedReproduction:
    def test_ensemble_bands(self, real_runs):
        thr = _mean_accuracy(real_runs, FeatureSet.HAND_THR, "ensemble")
        plain = _mean_accuracy(real_runs, FeatureSet.HAND_PLAIN, "ensemble")
        assert thr >= 0.75
        assert thr >= plain
        assert abs(thr - 0.81) <= 0.04
        _passed("handcrafted-band-reproduction")
