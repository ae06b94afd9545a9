"""RBF-kernel support vector machine trained with sequential minimal
optimization, extended to three classes one-vs-rest.

The working-set selection follows the classic two-loop scheme: alternate
full sweeps with sweeps over non-bound multipliers, pick the partner by
maximum error difference, and fall back to scans from a seeded random
start. The kernel matrix is computed once and shared by the three
one-vs-rest machines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..corpus import EntailmentLabel
from .base import CODE_TO_LABEL, Dataset, LearnerError, Scaler, check_query

_STEP_EPS = 1e-10  # relative progress guard for a single alpha step


def rbf_kernel(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    sq = (
        np.sum(a**2, axis=1)[:, None]
        - 2.0 * a @ b.T
        + np.sum(b**2, axis=1)[None, :]
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


@dataclass
class BinarySvm:
    """One trained binary machine: alphas, bias, and its +1 class code."""

    positive_code: int
    alphas: np.ndarray
    targets: np.ndarray  # +-1 per training point
    bias: float

    def decision(self, kernel_cols: np.ndarray) -> np.ndarray:
        """Decision values given kernel columns K[train, query]."""
        coeff = self.alphas * self.targets
        return coeff @ kernel_cols + self.bias


def _smo_train(
    kernel: np.ndarray,
    targets: np.ndarray,
    c: float,
    tol: float,
    max_passes: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    n = targets.shape[0]
    alphas = np.zeros(n)
    bias = 0.0
    errors = -targets.astype(np.float64)  # f(x) - y with f == 0 initially

    def take_step(i1: int, i2: int) -> bool:
        nonlocal bias, errors
        if i1 == i2:
            return False
        a1, a2 = alphas[i1], alphas[i2]
        y1, y2 = targets[i1], targets[i2]
        e1, e2 = errors[i1], errors[i2]
        s = y1 * y2
        if s > 0:
            low, high = max(0.0, a1 + a2 - c), min(c, a1 + a2)
        else:
            low, high = max(0.0, a2 - a1), min(c, c + a2 - a1)
        if low >= high:
            return False
        k11, k12, k22 = kernel[i1, i1], kernel[i1, i2], kernel[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta <= 0.0:
            # RBF curvature vanishes only for duplicate points; no useful
            # pair step exists there
            return False
        a2_new = a2 + y2 * (e1 - e2) / eta
        a2_new = min(high, max(low, a2_new))
        if abs(a2_new - a2) < _STEP_EPS * (a2_new + a2 + _STEP_EPS):
            return False
        a1_new = a1 + s * (a2 - a2_new)

        # bias update keeping f(x) = y exact for the optimized pair
        b1 = bias - e1 - y1 * (a1_new - a1) * k11 - y2 * (a2_new - a2) * k12
        b2 = bias - e2 - y1 * (a1_new - a1) * k12 - y2 * (a2_new - a2) * k22
        if 0.0 < a1_new < c:
            new_bias = b1
        elif 0.0 < a2_new < c:
            new_bias = b2
        else:
            new_bias = 0.5 * (b1 + b2)

        errors += (
            y1 * (a1_new - a1) * kernel[i1]
            + y2 * (a2_new - a2) * kernel[i2]
            + (new_bias - bias)
        )
        alphas[i1], alphas[i2] = a1_new, a2_new
        bias = new_bias
        return True

    def examine(i2: int) -> bool:
        y2, a2, e2 = targets[i2], alphas[i2], errors[i2]
        r2 = e2 * y2
        if not ((r2 < -tol and a2 < c) or (r2 > tol and a2 > 0.0)):
            return False
        non_bound = np.flatnonzero((alphas > 0.0) & (alphas < c))
        if non_bound.size > 1:
            i1 = int(non_bound[np.argmax(np.abs(errors[non_bound] - e2))])
            if take_step(i1, i2):
                return True
        if non_bound.size > 0:
            start = int(rng.integers(non_bound.size))
            for off in range(non_bound.size):
                if take_step(int(non_bound[(start + off) % non_bound.size]), i2):
                    return True
        start = int(rng.integers(n))
        for off in range(n):
            if take_step((start + off) % n, i2):
                return True
        return False

    passes = 0
    examine_all = True
    while passes < max_passes:
        passes += 1
        changed = 0
        if examine_all:
            indices = range(n)
        else:
            indices = np.flatnonzero((alphas > 0.0) & (alphas < c))
        for i in indices:
            changed += examine(int(i))
        if examine_all:
            if changed == 0:
                break
            examine_all = False
        elif changed == 0:
            examine_all = True
    return alphas, bias


@dataclass
class SvmRbfClassifier:
    kind = "svm_rbf"

    gamma: float = 1.0
    c: float = 1.0
    tol: float = 1e-3
    machines: list[BinarySvm] = field(default_factory=list)
    train_x: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    scaler: Scaler | None = None

    @classmethod
    def fit(
        cls,
        train: Dataset,
        c: float = 1.0,
        gamma: float | str = "scale",
        tol: float = 1e-3,
        seed: int = 0,
        scale: bool = True,
        max_passes: int | None = None,
    ) -> "SvmRbfClassifier":
        if c <= 0.0:
            raise LearnerError(f"C must be positive, got {c}")
        if tol <= 0.0:
            raise LearnerError(f"tolerance must be positive, got {tol}")
        scaler = Scaler.fit(train.features) if scale else None
        x = scaler.transform(train.features) if scaler else train.features.copy()
        if gamma == "scale":
            spread = float(x.var())
            gamma_val = 1.0 / (train.d * spread) if spread > 0.0 else 1.0 / train.d
        else:
            gamma_val = float(gamma)
            if gamma_val <= 0.0:
                raise LearnerError(f"gamma must be positive, got {gamma}")
        codes = train.codes()
        kernel = rbf_kernel(x, x, gamma_val)
        cap = max_passes if max_passes is not None else 10 * train.n
        machines: list[BinarySvm] = []
        seeds = np.random.SeedSequence(seed).spawn(len(train.classes()))
        for machine_seed, code in zip(seeds, train.classes()):
            targets = np.where(codes == code, 1.0, -1.0)
            rng = np.random.default_rng(machine_seed)
            alphas, bias = _smo_train(kernel, targets, c, tol, cap, rng)
            machines.append(
                BinarySvm(
                    positive_code=code, alphas=alphas, targets=targets, bias=bias
                )
            )
        return cls(
            gamma=gamma_val,
            c=c,
            tol=tol,
            machines=machines,
            train_x=x,
            scaler=scaler,
        )

    def _kernel_cols(self, queries: np.ndarray) -> np.ndarray:
        prepared = self.scaler.transform(queries) if self.scaler else queries
        return rbf_kernel(self.train_x, prepared, self.gamma)

    def decision_values(self, queries) -> np.ndarray:
        """(n_queries, n_machines) decision matrix, machine order = class order."""
        queries = np.asarray(queries, dtype=np.float64)
        if queries.ndim != 2 or queries.shape[1] != self.train_x.shape[1]:
            raise LearnerError(
                f"queries must be (n, {self.train_x.shape[1]}), got {queries.shape}"
            )
        cols = self._kernel_cols(queries)
        return np.stack([m.decision(cols) for m in self.machines], axis=1)

    def predict(self, x) -> EntailmentLabel:
        vec = check_query(x, self.train_x.shape[1])
        return self.predict_batch(vec[None, :])[0]

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        scores = self.decision_values(queries)
        picks = np.argmax(scores, axis=1)  # first max: canonical tie rule
        return [CODE_TO_LABEL[self.machines[int(p)].positive_code] for p in picks]

    def kkt_violations(self) -> np.ndarray:
        """Per-machine, per-sample KKT violation magnitudes on train data."""
        out = []
        for machine in self.machines:
            coeff = machine.alphas * machine.targets
            f = coeff @ rbf_kernel(self.train_x, self.train_x, self.gamma)
            f = f + machine.bias
            margin = machine.targets * f
            viol = np.where(
                machine.alphas <= 1e-12,
                np.maximum(0.0, 1.0 - margin),
                np.where(
                    machine.alphas >= self.c - 1e-12,
                    np.maximum(0.0, margin - 1.0),
                    np.abs(margin - 1.0),
                ),
            )
            out.append(viol)
        return np.stack(out, axis=0)

    def train_accuracy(self, train: Dataset) -> float:
        predictions = self.predict_batch(train.features)
        return float(
            np.mean([p == label for p, label in zip(predictions, train.labels)])
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "gamma": self.gamma,
            "c": self.c,
            "tol": self.tol,
            "train_x": self.train_x.tolist(),
            "scaler": self.scaler.to_dict() if self.scaler else None,
            "machines": [
                {
                    "positive_code": m.positive_code,
                    "alphas": m.alphas.tolist(),
                    "targets": m.targets.tolist(),
                    "bias": m.bias,
                }
                for m in self.machines
            ],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "SvmRbfClassifier":
        return cls(
            gamma=payload["gamma"],
            c=payload["c"],
            tol=payload["tol"],
            train_x=np.asarray(payload["train_x"], dtype=np.float64),
            scaler=Scaler.from_dict(payload["scaler"]) if payload["scaler"] else None,
            machines=[
                BinarySvm(
                    positive_code=m["positive_code"],
                    alphas=np.asarray(m["alphas"], dtype=np.float64),
                    targets=np.asarray(m["targets"], dtype=np.float64),
                    bias=m["bias"],
                )
                for m in payload["machines"]
            ],
        )
