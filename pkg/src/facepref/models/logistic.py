"""Weighted L2-regularized logistic regression via damped Newton descent.

The objective is the class-weighted negative log-likelihood plus an L2
penalty on the weights (the intercept is not penalized):

    J(w, b) = sum_i c_i * [y_i*softplus(-z_i) + (1-y_i)*softplus(z_i)]
              + (l2/2) * ||w||^2,      z_i = w.x_i + b

J is convex (strictly for l2 > 0), so the optimum is solver-independent;
a damped Newton iteration with backtracking line search converges to a
gradient norm below ``tol`` in a handful of steps and is fully
deterministic.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..errors import ConvergenceError
from ..features import FeatureMatrix
from .base import ClassWeighting, Model, UNIFORM, check_two_classes, training_accuracy


def logistic_objective(
    theta: np.ndarray,
    X: np.ndarray,
    y: np.ndarray,
    sample_weights: np.ndarray,
    l2: float,
) -> tuple[float, np.ndarray]:
    """Objective value and gradient at theta = [w_1..w_d, b]."""
    w = theta[:-1]
    b = theta[-1]
    z = X @ w + b
    # softplus via logaddexp keeps the loss finite for large |z|
    losses = y * np.logaddexp(0.0, -z) + (1.0 - y) * np.logaddexp(0.0, z)
    value = float(sample_weights @ losses + 0.5 * l2 * (w @ w))
    residual = sample_weights * (expit(z) - y)
    grad = np.empty_like(theta)
    grad[:-1] = X.T @ residual + l2 * w
    grad[-1] = residual.sum()
    return value, grad


def _hessian(theta, X, y, sample_weights, l2) -> np.ndarray:
    w = theta[:-1]
    z = X @ w + theta[-1]
    p = expit(z)
    # Floor the curvature weights: saturated probabilities otherwise leave
    # denormal entries (painfully slow BLAS) and a numerically singular
    # Hessian. The floor only damps the step; the optimum is unchanged.
    s = np.maximum(sample_weights * p * (1.0 - p), 1e-10)
    d = X.shape[1]
    H = np.empty((d + 1, d + 1))
    H[:d, :d] = X.T @ (X * s[:, None])
    H[:d, :d] += l2 * np.eye(d)
    H[:d, d] = X.T @ s
    H[d, :d] = H[:d, d]
    H[d, d] = s.sum()
    return H


def _newton_direction(H: np.ndarray, grad: np.ndarray) -> np.ndarray:
    jitter = 0.0
    scale = max(1.0, float(np.trace(H)) / H.shape[0])
    for _ in range(8):
        try:
            if jitter:
                return np.linalg.solve(H + jitter * np.eye(H.shape[0]), grad)
            return np.linalg.solve(H, grad)
        except np.linalg.LinAlgError:
            jitter = scale * 1e-10 if jitter == 0.0 else jitter * 100.0
    return np.linalg.lstsq(H, grad, rcond=None)[0]


def train_logistic(
    matrix: FeatureMatrix,
    weighting: ClassWeighting = UNIFORM,
    l2: float = 1.0,
    tol: float = 1e-6,
    max_iter: int = 100,
) -> Model:
    """Fit logistic regression to gradient norm <= tol.

    Raises :class:`SingleClassError` if only one class is present and
    :class:`ConvergenceError` (carrying the final gradient norm) if the
    tolerance is not reached within ``max_iter`` Newton steps.
    """
    if l2 < 0:
        raise ValueError("l2 strength must be >= 0")
    X = matrix.rows
    y = matrix.labels.astype(np.float64)
    check_two_classes(matrix.labels)
    c = weighting.sample_weights(matrix.labels)

    theta = np.zeros(X.shape[1] + 1)
    value, grad = logistic_objective(theta, X, y, c, l2)
    trajectory = [value]
    iterations = 0
    converged = float(np.linalg.norm(grad)) <= tol
    while not converged and iterations < max_iter:
        direction = _newton_direction(_hessian(theta, X, y, c, l2), grad)
        slope = float(grad @ direction)
        accepted = None
        full = None
        step = 1.0
        for _ in range(60):
            candidate = theta - step * direction
            new_value, new_grad = logistic_objective(candidate, X, y, c, l2)
            if full is None:
                full = (candidate, new_value, new_grad)
            if new_value <= value - 1e-4 * step * slope:
                accepted = (candidate, new_value, new_grad)
                break
            step *= 0.5
        if accepted is None:
            # Near the optimum the Armijo decrease drops below float
            # resolution; the undamped Newton step is then the right move.
            if full[1] <= value + 1e-9 * max(1.0, abs(value)):
                accepted = full
            else:
                break
        theta, value, grad = accepted
        trajectory.append(value)
        iterations += 1
        converged = float(np.linalg.norm(grad)) <= tol

    grad_norm = float(np.linalg.norm(grad))
    if not converged:
        raise ConvergenceError(
            f"logistic training did not converge in {max_iter} iterations "
            f"(gradient norm {grad_norm:.3e} > tol {tol:.3e})",
            gradient_norm=grad_norm,
        )

    model = Model(
        family="logistic",
        feature_mode=matrix.mode,
        width=matrix.width,
        params={"weights": theta[:-1].copy(), "bias": float(theta[-1])},
        hyperparams={
            "l2": l2,
            "tol": tol,
            "max_iter": max_iter,
            "weighting": weighting.describe(),
        },
        train_meta={
            "seed": None,
            "iterations": iterations,
            "final_objective": value,
            "final_gradient_norm": grad_norm,
            "objective_trajectory": trajectory,
        },
    )
    model.train_meta["train_accuracy"] = training_accuracy(model, X, matrix.labels)
    return model
