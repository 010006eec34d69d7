"""Soft-margin RBF SVM trained by pairwise coordinate ascent (SMO).

Solves the class-weighted dual

    max_a  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
    s.t.   0 <= a_i <= C_i,   sum_i a_i y_i = 0

with per-sample boxes C_i = C * class_weight(y_i) and the RBF kernel
K(u, v) = exp(-gamma ||u - v||^2). Pair selection follows Platt's
heuristics with deterministic tie-breaking (no randomness), so training
is reproducible from the inputs alone. Each analytic two-variable update
maximizes the restricted subproblem, so the dual objective is
non-decreasing sweep over sweep.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError
from ..features import FeatureMatrix
from .base import (
    ClassWeighting,
    Model,
    UNIFORM,
    check_two_classes,
    rbf_kernel,
    training_accuracy,
)

# Below this many rows the full kernel matrix is precomputed and the error
# cache refreshed every sweep; above it kernel rows are computed on demand.
_PRECOMPUTE_LIMIT = 2048

_EPS = 1e-12


class _Smo:
    def __init__(self, X, y_signed, box, gamma, tol):
        self.X = X
        self.y = y_signed
        self.box = box
        self.gamma = gamma
        self.tol = tol
        self.n = X.shape[0]
        self.alphas = np.zeros(self.n)
        self.b = 0.0
        # E_i = f(x_i) - y_i; alpha = 0 and b = 0 give f = 0
        self.errors = -y_signed.astype(np.float64)
        self.K = rbf_kernel(X, X, gamma) if self.n <= _PRECOMPUTE_LIMIT else None

    def kernel_row(self, i: int) -> np.ndarray:
        if self.K is not None:
            return self.K[i]
        return rbf_kernel(self.X[i : i + 1], self.X, self.gamma)[0]

    def kernel_entry(self, i: int, j: int) -> float:
        if self.K is not None:
            return float(self.K[i, j])
        diff = self.X[i] - self.X[j]
        return float(np.exp(-self.gamma * (diff @ diff)))

    def dual_objective(self) -> float:
        # sum(a) - 1/2 a'Qa, recovered from the error cache:
        # f_i - b = E_i + y_i - b equals (Qa)_i / y_i ... restated,
        # a'Qa = sum_i a_i y_i (f_i - b).
        ay = self.alphas * self.y
        return float(self.alphas.sum() - 0.5 * (ay @ (self.errors + self.y - self.b)))

    def refresh_errors(self) -> None:
        if self.K is None:
            return
        self.errors = (self.alphas * self.y) @ self.K + self.b - self.y

    def take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1, a2 = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        e1, e2 = self.errors[i1], self.errors[i2]
        c1, c2 = self.box[i1], self.box[i2]
        s = y1 * y2
        if s < 0:
            low = max(0.0, a2 - a1)
            high = min(c2, c1 + a2 - a1)
        else:
            low = max(0.0, a1 + a2 - c1)
            high = min(c2, a1 + a2)
        if low >= high - _EPS:
            return False

        k11 = self.kernel_entry(i1, i1)
        k12 = self.kernel_entry(i1, i2)
        k22 = self.kernel_entry(i2, i2)
        eta = k11 + k22 - 2.0 * k12
        if eta > _EPS:
            a2_new = a2 + y2 * (e1 - e2) / eta
            a2_new = min(max(a2_new, low), high)
        else:
            # Flat direction: evaluate the dual gain at both clip ends.
            gain_low = self._line_gain(i1, i2, low, k11, k12, k22)
            gain_high = self._line_gain(i1, i2, high, k11, k12, k22)
            if max(gain_low, gain_high) <= _EPS:
                return False
            a2_new = low if gain_low >= gain_high else high
        if abs(a2_new - a2) < _EPS * (a2_new + a2 + _EPS):
            return False
        a1_new = a1 + s * (a2 - a2_new)

        d1 = y1 * (a1_new - a1)
        d2 = y2 * (a2_new - a2)
        b1 = self.b - e1 - d1 * k11 - d2 * k12
        b2 = self.b - e2 - d1 * k12 - d2 * k22
        if _EPS < a1_new < c1 - _EPS:
            b_new = b1
        elif _EPS < a2_new < c2 - _EPS:
            b_new = b2
        else:
            b_new = 0.5 * (b1 + b2)

        self.errors += d1 * self.kernel_row(i1) + d2 * self.kernel_row(i2)
        self.errors += b_new - self.b
        self.alphas[i1] = a1_new
        self.alphas[i2] = a2_new
        self.b = b_new
        return True

    def _line_gain(self, i1, i2, a2_c, k11, k12, k22) -> float:
        """Dual-objective change if a2 moves to ``a2_c`` along the
        equality-constraint line (a1 adjusts to keep sum a_i y_i fixed)."""
        a1, a2 = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        s = y1 * y2
        a1_c = a1 + s * (a2 - a2_c)
        # kernel expansion of the *other* points at x1 and x2
        v1 = self.errors[i1] + y1 - self.b - a1 * y1 * k11 - a2 * y2 * k12
        v2 = self.errors[i2] + y2 - self.b - a1 * y1 * k12 - a2 * y2 * k22
        return (
            (a1_c - a1)
            + (a2_c - a2)
            - 0.5 * (a1_c * a1_c - a1 * a1) * k11
            - 0.5 * (a2_c * a2_c - a2 * a2) * k22
            - s * (a1_c * a2_c - a1 * a2) * k12
            - y1 * (a1_c - a1) * v1
            - y2 * (a2_c - a2) * v2
        )

    def violates_kkt(self, i: int) -> bool:
        r = self.errors[i] * self.y[i]
        return (r < -self.tol and self.alphas[i] < self.box[i]) or (
            r > self.tol and self.alphas[i] > 0
        )

    def examine(self, i2: int) -> bool:
        if not self.violates_kkt(i2):
            return False
        non_bound = np.flatnonzero(
            (self.alphas > _EPS) & (self.alphas < self.box - _EPS)
        )
        if non_bound.size > 1:
            gaps = np.abs(self.errors[non_bound] - self.errors[i2])
            i1 = int(non_bound[int(np.argmax(gaps))])
            if self.take_step(i1, i2):
                return True
        start = (i2 + 1) % self.n
        for offset in range(non_bound.size):
            i1 = int(non_bound[(offset + start) % non_bound.size])
            if self.take_step(i1, i2):
                return True
        for offset in range(self.n):
            i1 = (start + offset) % self.n
            if self.take_step(i1, i2):
                return True
        return False

    def kkt_violations(self) -> int:
        return sum(self.violates_kkt(i) for i in range(self.n))


def train_svm_rbf(
    matrix: FeatureMatrix,
    weighting: ClassWeighting = UNIFORM,
    C: float = 1.0,
    gamma: float | None = None,
    tol: float = 1e-3,
    max_iter: int = 1000,
) -> Model:
    """Fit an RBF SVM until no sample violates the KKT conditions by more
    than ``tol``. ``gamma`` defaults to 1/width; ``max_iter`` bounds outer
    sweeps.
    """
    if C <= 0:
        raise ValueError("C must be > 0")
    if gamma is None:
        gamma = 1.0 / matrix.width
    if gamma <= 0:
        raise ValueError("gamma must be > 0")
    check_two_classes(matrix.labels)

    y_signed = np.where(matrix.labels == 1, 1.0, -1.0)
    box = C * weighting.sample_weights(matrix.labels)
    smo = _Smo(matrix.rows, y_signed, box, gamma, tol)

    trajectory = [smo.dual_objective()]
    examine_all = True
    num_changed = 0
    sweeps = 0
    while num_changed > 0 or examine_all:
        if sweeps >= max_iter:
            raise ConvergenceError(
                f"SMO did not converge in {max_iter} sweeps "
                f"({smo.kkt_violations()} KKT violations > tol {tol})"
            )
        num_changed = 0
        if examine_all:
            targets = range(smo.n)
        else:
            targets = np.flatnonzero(
                (smo.alphas > _EPS) & (smo.alphas < smo.box - _EPS)
            )
        for i in targets:
            num_changed += smo.examine(int(i))
        smo.refresh_errors()
        trajectory.append(smo.dual_objective())
        sweeps += 1
        if examine_all:
            examine_all = False
        elif num_changed == 0:
            examine_all = True

    support = np.flatnonzero(smo.alphas > _EPS)
    model = Model(
        family="svm_rbf",
        feature_mode=matrix.mode,
        width=matrix.width,
        params={
            "support_vectors": matrix.rows[support].copy(),
            "dual_coef": (smo.alphas * y_signed)[support].copy(),
            "bias": smo.b,
            "gamma": gamma,
        },
        hyperparams={
            "C": C,
            "gamma": gamma,
            "tol": tol,
            "max_iter": max_iter,
            "weighting": weighting.describe(),
        },
        train_meta={
            "seed": None,
            "iterations": sweeps,
            "final_objective": trajectory[-1],
            "objective_trajectory": trajectory,
            "n_support": int(support.size),
            "kkt_violations": smo.kkt_violations(),
        },
    )
    model.train_meta["train_accuracy"] = training_accuracy(
        model, matrix.rows, matrix.labels
    )
    return model
